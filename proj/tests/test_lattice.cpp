#include <numeric>
#include <random>

#include "doctest.h"
#include "grs/error.hpp"
#include "grs/lattice.hpp"
#include "grs/search.hpp"
#include "lattice_oracles.hpp"

using namespace grs;
using namespace grs::lattice;

namespace {

using Edges3 = std::vector<std::pair<std::size_t, std::size_t>>;

std::vector<LeqPair> reflexive_closure(std::size_t n, std::vector<LeqPair> strict) {
  for (Element x = 0; x < n; ++x) strict.emplace_back(x, x);
  return strict;
}

// 0 < x, y < 3 with x = 1, y = 2.
FiniteLattice diamond() {
  return FiniteLattice::from_pairs(4, reflexive_closure(4, {{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}}));
}

FiniteLattice chain(std::size_t n) {
  std::vector<LeqPair> leq;
  for (Element x = 0; x < n; ++x)
    for (Element y = x; y < n; ++y) leq.emplace_back(x, y);
  return FiniteLattice::from_pairs(n, leq);
}

FiniteLattice from_shape(const oracle::Length3Shape& s) {
  return FiniteLattice::from_poset(length3_poset(s.atoms, s.coatoms, s.edges));
}

// Pairwise fence check written against the definition: x_0 < x_1, every
// even-indexed inner entry below both neighbours, nothing else comparable.
bool naive_is_fence(const Poset& p, const std::vector<Element>& s) {
  if (s.size() < 2 || s.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i == j) continue;
      if (s[i] == s[j]) return false;
      const bool adjacent = j == i + 1 || i == j + 1;
      const bool lower = i % 2 == 0;
      if (adjacent && lower && !p.less(s[i], s[j])) return false;
      if (!adjacent && p.comparable(s[i], s[j])) return false;
    }
  return true;
}

std::vector<Element> all_elements(const FiniteLattice& lat) {
  std::vector<Element> v(lat.size());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

TEST_CASE("validate_lattice examples") {
  const std::vector<LeqPair> two{{0, 0}, {0, 1}, {1, 1}};
  CHECK(validate_lattice(Poset(2, two)).all_passed());
  CHECK(validate_lattice(diamond().poset()).all_passed());

  const Edges3 square{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  const auto report = validate_lattice(length3_poset(2, 2, square));
  CHECK_FALSE(report.all_passed());
  REQUIRE(report.find("transitive"));
  CHECK(report.find("transitive")->passed);
  REQUIRE(report.find("meets"));
  CHECK_FALSE(report.find("meets")->passed);
  CHECK(report.find("meets")->witness == std::vector<std::uint64_t>{3, 4});
  REQUIRE(report.find("joins"));
  CHECK_FALSE(report.find("joins")->passed);
  CHECK_THROWS_AS(FiniteLattice::from_poset(length3_poset(2, 2, square)), InvalidInput);
}

TEST_CASE("validate_lattice names the first broken axiom") {
  const std::vector<LeqPair> not_reflexive{{0, 1}, {1, 1}};
  CHECK(validate_lattice(Poset(2, not_reflexive)).checks.front().name == "reflexive");
  CHECK_FALSE(validate_lattice(Poset(2, not_reflexive)).checks.front().passed);

  const std::vector<LeqPair> cycle{{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  CHECK_FALSE(validate_lattice(Poset(2, cycle)).find("antisymmetric")->passed);

  const std::vector<LeqPair> gap{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}};
  const auto r = validate_lattice(Poset(3, gap));
  CHECK_FALSE(r.find("transitive")->passed);
  CHECK(r.find("transitive")->witness == std::vector<std::uint64_t>{0, 1, 2});
  CHECK(r.find("bounds")->note == "not checked");

  const std::vector<LeqPair> antichain{{0, 0}, {1, 1}};
  CHECK_FALSE(validate_lattice(Poset(2, antichain)).find("bounds")->passed);
  CHECK_THROWS_AS(Poset(2, std::vector<LeqPair>{{0, 2}}), InvalidInput);
}

TEST_CASE("validate_lattice agrees with bound-set enumeration on random relations") {
  std::mt19937_64 rng(3);
  int lattices = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    // Random DAG on a fixed topological order with bounds forced half the
    // time, then transitively closed unless the trial is meant to break it.
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t x = 0; x < n; ++x) r[x][x] = true;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) r[x][y] = rng() % 3 == 0;
    if (trial % 2 == 0) {
      for (std::size_t y = 0; y < n; ++y) r[0][y] = r[y][n - 1] = true;
    }
    if (trial % 5 != 0) {
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y) r[x][y] = r[x][y] || (r[x][k] && r[k][y]);
    }
    std::vector<LeqPair> leq;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (r[x][y]) leq.emplace_back(x, y);
      }
    const Poset p(n, leq);
    const bool expect = oracle::is_lattice(p);
    CHECK(validate_lattice(p).all_passed() == expect);
    if (expect) {
      ++lattices;
      const auto lat = FiniteLattice::from_poset(p);
      for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y) {
          CHECK(lat.leq(lat.meet(x, y), x));
          CHECK(lat.leq(lat.meet(x, y), y));
          CHECK(lat.leq(x, lat.join(x, y)));
          CHECK(lat.leq(y, lat.join(x, y)));
        }
    }
  }
  CHECK(lattices > 50);
}

TEST_CASE("check_length3 examples") {
  CHECK(check_length3(diamond()));
  CHECK(check_length3(chain(4)));
  CHECK_FALSE(check_length3(chain(5)));
  CHECK(check_length3(fence_lattice(5)));
}

TEST_CASE("check_no_double_cover examples") {
  CHECK_FALSE(check_no_double_cover(diamond()));
  for (std::size_t n = 1; n <= 15; n += 2) CHECK_FALSE(check_no_double_cover(fence_lattice(n)));
  const Edges3 square{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  const auto w = check_no_double_cover(length3_poset(2, 2, square));
  REQUIRE(w);
  CHECK(*w == std::array<Element, 4>{1, 2, 3, 4});
  const std::vector<LeqPair> antichain{{0, 0}, {1, 1}};
  CHECK_THROWS_AS(check_no_double_cover(Poset(2, antichain)), InvalidInput);
}

TEST_CASE("no double cover in random length-3 lattices") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto shape = oracle::random_length3(rng, 30);
    const auto p = length3_poset(shape.atoms, shape.coatoms, shape.edges);
    REQUIRE(oracle::is_lattice(p));
    const auto lat = FiniteLattice::from_poset(p);
    CHECK(check_length3(lat));
    CHECK_FALSE(check_no_double_cover(lat));
  }
}

TEST_CASE("closure and rank examples") {
  const auto d = diamond();
  const std::vector<Element> xy{1, 2};
  const auto r = closure_and_rank(d, xy);
  REQUIRE(r.levels().size() == 2);
  CHECK(r.levels()[0] == std::vector<Element>{1, 2});
  CHECK(r.levels()[1] == std::vector<Element>{0, 1, 2, 3});
  CHECK(r.rank(0) == 1);
  CHECK(r.rank(3) == 1);
  CHECK(r.rank(1) == 0);
  CHECK(r.rank_bound(1) == Element{3});
  CHECK(r.rank_bound(0) == Element{2});
  CHECK_FALSE(r.rank_bound(2));

  const std::vector<Element> x{1};
  try {
    closure_and_rank(d, x);
    FAIL("expected a coverage error");
  } catch (const CoverageError& e) {
    CHECK(e.unreached() == std::vector<std::size_t>{0, 2, 3});
  }

  const auto all = all_elements(d);
  const auto r0 = closure_and_rank(d, all);
  CHECK(r0.max_rank() == 0);
  for (Element e = 0; e < 4; ++e) CHECK(r0.rank(e) == 0);

  CHECK_THROWS_AS(closure_and_rank(d, std::vector<Element>{}), InvalidInput);
  CHECK_THROWS_AS(closure_and_rank(d, std::vector<Element>{9}), InvalidInput);
}

TEST_CASE("closure levels grow and every rank bound holds") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto lat = from_shape(oracle::random_length3(rng, 24));
    auto order = all_elements(lat);
    std::shuffle(order.begin(), order.end(), rng);
    const auto gens = minimal_generators(lat, order);
    const auto r = closure_and_rank(lat, gens);
    CHECK(r.levels().front() == gens);
    CHECK(r.max_rank() <= lat.size());
    for (std::size_t k = 0; k + 1 < r.levels().size(); ++k) {
      const auto& a = r.levels()[k];
      const auto& b = r.levels()[k + 1];
      CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
      CHECK(a.size() < b.size());
    }
    for (Element e = 0; e < lat.size(); ++e) {
      REQUIRE(r.rank_bound(r.rank(e)));
      CHECK(e <= *r.rank_bound(r.rank(e)));
    }
    // Dropping any generator breaks generation.
    for (std::size_t i = 0; i < gens.size(); ++i) {
      auto fewer = gens;
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
      if (fewer.empty()) continue;
      CHECK_THROWS_AS(closure_and_rank(lat, fewer), CoverageError);
    }
  }
}

TEST_CASE("tree examples") {
  const auto d = diamond();
  const std::vector<Element> xy{1, 2};
  const auto t = build_tree(d, closure_and_rank(d, xy), 1);
  REQUIRE(t.nodes().size() == 2);
  CHECK(t.branch(0) == std::vector<Element>{1});
  CHECK(t.branch(1) == std::vector<Element>{2});
  CHECK(t.deepest_length() == 1);

  const auto f = fence_lattice(7);
  std::vector<Element> fence_elems;
  for (Element e = 1; e <= 8; ++e) fence_elems.push_back(e);
  const auto ft = build_tree(f, closure_and_rank(f, fence_elems), 3);
  CHECK(ft.nodes().size() == 8);
  for (const auto& nd : ft.nodes()) CHECK(nd.depth == 0);
  CHECK(structural_maximum(ft) == 0);
}

TEST_CASE("generated fence lattices put x_i at rank i") {
  for (std::size_t n = 3; n <= 21; n += 2) {
    const auto g = generated_fence_lattice(n);
    CHECK(g.lattice.size() == 2 * n + 3);
    CHECK(validate_lattice(g.lattice.poset()).all_passed());
    CHECK(check_length3(g.lattice));
    CHECK_FALSE(check_no_double_cover(g.lattice));
    CHECK(naive_is_fence(g.lattice.poset(), g.fence));
    const auto r = closure_and_rank(g.lattice, g.generators);
    for (std::size_t i = 0; i <= n; ++i) CHECK(r.rank(g.fence[i]) == i);
    const auto t = build_tree(g.lattice, r, r.max_rank());
    CHECK(t.deepest_length() == n + 1);
    CHECK(t.branch(t.maximal_branches().front()) == g.fence);
    CHECK(structural_maximum(t) == n);
  }
}

TEST_CASE("tree properties on random lattices") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    const auto lat = from_shape(oracle::random_length3(rng, 20));
    auto order = all_elements(lat);
    std::shuffle(order.begin(), order.end(), rng);
    const auto gens = minimal_generators(lat, order);
    const auto r = closure_and_rank(lat, gens);
    const auto t = build_tree(lat, r, r.max_rank());
    CHECK(check_tree_properties(lat, r, t).all_passed());
    for (std::size_t i = 0; i < t.nodes().size(); ++i) {
      const auto br = t.branch(i);
      CHECK(br.size() == t.nodes()[i].depth + 1);
      for (std::size_t k = 0; k < br.size(); ++k) CHECK(r.rank(br[k]) == k);
      CHECK(check_traceable(comparability_graph(lat, br)));
    }
    // Every non-bound element shows up at the depth of its rank.
    for (Element e = 0; e < lat.size(); ++e) {
      if (lat.is_bound(e)) continue;
      const bool found = std::any_of(t.nodes().begin(), t.nodes().end(), [&](const auto& nd) {
        return nd.element == e && nd.depth == r.rank(e);
      });
      CHECK(found);
    }
  }
}

TEST_CASE("tree property checker rejects a forged tree") {
  // A tree built for one generating set checked against the ranks of another.
  const auto g = generated_fence_lattice(5);
  const auto r = closure_and_rank(g.lattice, g.generators);
  const auto t = build_tree(g.lattice, r, r.max_rank());
  const auto all = all_elements(g.lattice);
  const auto flat = closure_and_rank(g.lattice, all);
  const auto report = check_tree_properties(g.lattice, flat, t);
  CHECK_FALSE(report.find("membership")->passed);
}

TEST_CASE("comparability graph examples") {
  const auto f = fence_lattice(3);
  const std::vector<Element> atoms{1, 3};
  CHECK(comparability_graph(f, atoms).edge_count() == 0);
  const auto c = chain(4);
  const std::vector<Element> ab{1, 2};
  CHECK(comparability_graph(c, ab).edge_count() == 1);
  CHECK_THROWS_AS(comparability_graph(c, std::vector<Element>{0, 1}), InvalidInput);
  CHECK_THROWS_AS(comparability_graph(c, std::vector<Element>{1, 1}), InvalidInput);
}

TEST_CASE("fence validator") {
  const auto f = fence_lattice(5);
  const std::vector<Element> seq{1, 2, 3, 4, 5, 6};
  CHECK_FALSE(fence_violation(f.poset(), seq));
  CHECK(fence_violation(f.poset(), seq, true));
  const std::vector<Element> dual{2, 3, 4, 5, 6};
  CHECK(fence_violation(f.poset(), dual));  // odd count
  const std::vector<Element> down{2, 3, 4, 5};
  CHECK(fence_violation(f.poset(), down));
  CHECK_FALSE(fence_violation(f.poset(), down, true));
  const std::vector<Element> gap{1, 2, 5, 6};
  CHECK(fence_violation(f.poset(), gap));
  const std::vector<Element> repeat{1, 2, 1, 2};
  CHECK(fence_violation(f.poset(), repeat));
}

TEST_CASE("fence validator agrees with the pairwise definition") {
  std::mt19937_64 rng(41);
  const auto f = fence_lattice(9);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t len = 2 * (1 + rng() % 4);
    std::vector<Element> s(len);
    for (auto& e : s) e = 1 + rng() % 10;
    CHECK(fence_violation(f.poset(), s).has_value() != naive_is_fence(f.poset(), s));
  }
}

TEST_CASE("find_fences examples") {
  const auto d = diamond();
  const std::vector<Element> xy{1, 2};
  CHECK_FALSE(find_fences(d, xy, 1));
  CHECK_FALSE(find_fences(d, xy, 3));
  CHECK_THROWS_AS(find_fences(d, xy, 2), InvalidInput);
  CHECK_THROWS_AS(find_fences(chain(5), std::vector<Element>{1, 2, 3}, 1), InvalidInput);

  // Bare fence lattice generated by its own elements: every node is a root.
  const auto f = fence_lattice(5);
  const std::vector<Element> fe{1, 2, 3, 4, 5, 6};
  CHECK_FALSE(find_fences(f, fe, 1));

  CHECK_THROWS_AS(generated_fence_lattice(1), InvalidInput);
  for (std::size_t n = 3; n <= 15; n += 2) {
    const auto g = generated_fence_lattice(n);
    for (std::size_t target = 1; target <= n; target += 2) {
      const auto fence = find_fences(g.lattice, g.generators, target);
      REQUIRE(fence);
      CHECK(fence->length() == target);
      CHECK(naive_is_fence(g.lattice.poset(), fence->seq));
      if (target == n) CHECK(fence->seq == g.fence);
    }
    CHECK_FALSE(find_fences(g.lattice, g.generators, n + 2));
  }
}

TEST_CASE("find_fences reads a fence off a branch that starts at a coatom") {
  // Dual generated fence: x_0 is a coatom, so the chordless path comes out
  // coatom-first and has to be turned around.
  const std::size_t n = 5;
  const auto g = generated_fence_lattice(n);
  // Swap atoms and coatoms by reversing the order.
  std::vector<LeqPair> flipped;
  for (auto [x, y] : g.lattice.poset().pairs()) flipped.emplace_back(y, x);
  const auto dual = FiniteLattice::from_pairs(g.lattice.size(), flipped);
  CHECK(fence_violation(dual.poset(), g.fence, true) == std::nullopt);
  const auto fence = find_fences(dual, g.generators, n);
  REQUIRE(fence);
  CHECK(fence->reversed);
  CHECK(naive_is_fence(dual.poset(), fence->seq));
  std::vector<Element> back(g.fence.rbegin(), g.fence.rend());
  CHECK(fence->seq == back);
}

TEST_CASE("find_fences is sound on random lattices") {
  std::mt19937_64 rng(47);
  int found = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto lat = from_shape(oracle::random_length3(rng, 24));
    auto order = all_elements(lat);
    std::shuffle(order.begin(), order.end(), rng);
    const auto gens = minimal_generators(lat, order);
    const auto r = closure_and_rank(lat, gens);
    const auto t = build_tree(lat, r, r.max_rank());
    for (std::size_t target = 1; target <= 7; target += 2) {
      const auto fence = find_fences(lat, gens, target);
      if (target + 1 > t.deepest_length()) CHECK_FALSE(fence);
      if (!fence) continue;
      ++found;
      CHECK(fence->length() == target);
      CHECK(naive_is_fence(lat.poset(), fence->seq));
      // The fence comes from the recorded branch.
      for (Element e : fence->seq) {
        CHECK(std::find(fence->branch.begin(), fence->branch.end(), e) != fence->branch.end());
      }
    }
  }
  CHECK(found > 0);
}

TEST_CASE("minimal generators") {
  const auto d = diamond();
  const auto all = all_elements(d);
  CHECK(minimal_generators(d, all) == std::vector<Element>{1, 2});
  const auto g = generated_fence_lattice(3);
  const auto gens = minimal_generators(g.lattice, all_elements(g.lattice));
  CHECK_NOTHROW(closure_and_rank(g.lattice, gens));
}
