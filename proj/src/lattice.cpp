#include "grs/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "grs/error.hpp"
#include "grs/finite_grs.hpp"

namespace grs::lattice {

Poset::Poset(std::size_t n, std::span<const LeqPair> leq) : rows_(n, Bitset(n)) {
  for (auto [x, y] : leq) {
    if (x >= n || y >= n) {
      throw InvalidInput("order pair (" + std::to_string(x) + ", " + std::to_string(y) +
                         ") leaves 0.." + std::to_string(n == 0 ? 0 : n - 1));
    }
    rows_[x].set(y);
  }
}

std::vector<LeqPair> Poset::pairs() const {
  std::vector<LeqPair> out;
  for (Element x = 0; x < size(); ++x) {
    for (auto y = rows_[x].find_first(); y != Bitset::npos; y = rows_[x].find_next(y)) {
      out.emplace_back(x, y);
    }
  }
  return out;
}

std::optional<Element> Poset::least() const {
  for (Element x = 0; x < size(); ++x) {
    if (rows_[x].all()) return x;
  }
  return std::nullopt;
}

std::optional<Element> Poset::greatest() const {
  for (Element x = 0; x < size(); ++x) {
    bool top = true;
    for (Element y = 0; top && y < size(); ++y) top = leq(y, x);
    if (top) return x;
  }
  return std::nullopt;
}

bool Poset::is_atom(Element x) const {
  const auto lo = least();
  const auto hi = greatest();
  if (!lo || x == *lo || (hi && x == *hi)) return false;
  for (Element y = 0; y < size(); ++y) {
    if (less(*lo, y) && less(y, x)) return false;
  }
  return true;
}

bool Poset::is_coatom(Element x) const {
  const auto lo = least();
  const auto hi = greatest();
  if (!hi || x == *hi || (lo && x == *lo)) return false;
  for (Element y = 0; y < size(); ++y) {
    if (less(x, y) && less(y, *hi)) return false;
  }
  return true;
}

namespace {

// Greatest element of `set` below everything in `set`, if any.
std::optional<Element> greatest_in(const Poset& p, const Bitset& set) {
  for (auto g = set.find_first(); g != Bitset::npos; g = set.find_next(g)) {
    bool ok = true;
    for (auto h = set.find_first(); ok && h != Bitset::npos; h = set.find_next(h)) {
      ok = p.leq(h, g);
    }
    if (ok) return g;
  }
  return std::nullopt;
}

std::optional<Element> least_in(const Poset& p, const Bitset& set) {
  for (auto g = set.find_first(); g != Bitset::npos; g = set.find_next(g)) {
    bool ok = true;
    for (auto h = set.find_first(); ok && h != Bitset::npos; h = set.find_next(h)) {
      ok = p.leq(g, h);
    }
    if (ok) return g;
  }
  return std::nullopt;
}

Bitset down_set(const Poset& p, Element x) {
  Bitset b(p.size());
  for (Element y = 0; y < p.size(); ++y) {
    if (p.leq(y, x)) b.set(y);
  }
  return b;
}

Bitset up_set(const Poset& p, Element x) {
  Bitset b(p.size());
  for (Element y = 0; y < p.size(); ++y) {
    if (p.leq(x, y)) b.set(y);
  }
  return b;
}

struct Tables {
  std::vector<Element> meet;
  std::vector<Element> join;
};

// Fills out with the meet and join checks; returns the tables when both pass.
std::optional<Tables> check_bounds_and_tables(const Poset& p, CheckList& out) {
  const std::size_t n = p.size();
  std::vector<Bitset> down(n), up(n);
  for (Element x = 0; x < n; ++x) {
    down[x] = down_set(p, x);
    up[x] = up_set(p, x);
  }
  Tables t{std::vector<Element>(n * n), std::vector<Element>(n * n)};
  bool ok = true;
  for (Element x = 0; ok && x < n; ++x) {
    for (Element y = x; ok && y < n; ++y) {
      const auto m = greatest_in(p, down[x] & down[y]);
      if (!m) {
        out.fail("meets", {x, y}, "no greatest lower bound");
        ok = false;
        break;
      }
      t.meet[x * n + y] = t.meet[y * n + x] = *m;
    }
  }
  if (ok) out.pass("meets");
  else out.fail("joins", {}, "not checked");
  if (!ok) return std::nullopt;
  for (Element x = 0; ok && x < n; ++x) {
    for (Element y = x; ok && y < n; ++y) {
      const auto j = least_in(p, up[x] & up[y]);
      if (!j) {
        out.fail("joins", {x, y}, "no least upper bound");
        ok = false;
        break;
      }
      t.join[x * n + y] = t.join[y * n + x] = *j;
    }
  }
  if (!ok) return std::nullopt;
  out.pass("joins");
  return t;
}

std::optional<Tables> run_validation(const Poset& p, CheckList& out) {
  const std::size_t n = p.size();
  const char* later[] = {"antisymmetric", "transitive", "bounds", "meets", "joins"};
  auto skip_from = [&](std::size_t i) {
    for (; i < std::size(later); ++i) out.fail(later[i], {}, "not checked");
  };

  if (n == 0) {
    out.fail("reflexive", {}, "empty carrier");
    skip_from(0);
    return std::nullopt;
  }
  for (Element x = 0; x < n; ++x) {
    if (!p.leq(x, x)) {
      out.fail("reflexive", {x});
      skip_from(0);
      return std::nullopt;
    }
  }
  out.pass("reflexive");
  for (Element x = 0; x < n; ++x)
    for (Element y = x + 1; y < n; ++y) {
      if (p.leq(x, y) && p.leq(y, x)) {
        out.fail("antisymmetric", {x, y});
        skip_from(1);
        return std::nullopt;
      }
    }
  out.pass("antisymmetric");
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      if (x == y || !p.leq(x, y)) continue;
      for (Element z = 0; z < n; ++z) {
        if (p.leq(y, z) && !p.leq(x, z)) {
          out.fail("transitive", {x, y, z});
          skip_from(2);
          return std::nullopt;
        }
      }
    }
  out.pass("transitive");
  const auto lo = p.least();
  const auto hi = p.greatest();
  if (!lo || !hi) {
    out.fail("bounds", {}, !lo ? "no least element" : "no greatest element");
    skip_from(3);
    return std::nullopt;
  }
  out.pass("bounds");
  return check_bounds_and_tables(p, out);
}

}  // namespace

CheckList validate_lattice(const Poset& p) {
  CheckList out;
  run_validation(p, out);
  return out;
}

FiniteLattice FiniteLattice::from_poset(Poset p) {
  CheckList report;
  auto tables = run_validation(p, report);
  if (!tables) {
    for (const auto& c : report.checks) {
      if (!c.passed) {
        std::string msg = "not a lattice: " + c.name + " fails";
        if (!c.witness.empty()) {
          msg += " at (";
          for (std::size_t i = 0; i < c.witness.size(); ++i) {
            msg += (i ? ", " : "") + std::to_string(c.witness[i]);
          }
          msg += ")";
        }
        throw InvalidInput(msg);
      }
    }
  }
  FiniteLattice lat;
  lat.bottom_ = *p.least();
  lat.top_ = *p.greatest();
  lat.poset_ = std::move(p);
  lat.meet_ = std::move(tables->meet);
  lat.join_ = std::move(tables->join);
  return lat;
}

std::vector<LeqPair> FiniteLattice::covers() const {
  std::vector<LeqPair> out;
  for (Element x = 0; x < size(); ++x)
    for (Element y = 0; y < size(); ++y) {
      if (!less(x, y)) continue;
      bool cover = true;
      for (Element z = 0; cover && z < size(); ++z) cover = !(less(x, z) && less(z, y));
      if (cover) out.emplace_back(x, y);
    }
  return out;
}

bool check_length3(const FiniteLattice& lat) {
  for (Element x = 0; x < lat.size(); ++x) {
    if (lat.is_bound(x)) continue;
    if (!lat.is_atom(x) && !lat.is_coatom(x)) return false;
  }
  return true;
}

std::optional<std::array<Element, 4>> check_no_double_cover(const Poset& p) {
  if (!p.least() || !p.greatest()) {
    throw InvalidInput("double-cover scan needs a least and a greatest element");
  }
  std::vector<Element> atoms, coatoms;
  for (Element x = 0; x < p.size(); ++x) {
    if (p.is_atom(x)) atoms.push_back(x);
    if (p.is_coatom(x)) coatoms.push_back(x);
  }
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      std::optional<Element> first;
      for (Element u : coatoms) {
        if (!p.less(atoms[i], u) || !p.less(atoms[j], u)) continue;
        if (!first) {
          first = u;
        } else {
          return std::array<Element, 4>{atoms[i], atoms[j], *first, u};
        }
      }
    }
  return std::nullopt;
}

std::optional<Element> RankTable::rank_bound(std::size_t n) const {
  std::optional<Element> best;
  for (Element x = 0; x < rank_.size(); ++x) {
    if (rank_[x] == n) best = x;
  }
  return best;
}

RankTable closure_and_rank(const FiniteLattice& lat, std::span<const Element> generators) {
  if (generators.empty()) throw InvalidInput("generator list is empty");
  std::vector<Element> f(generators.begin(), generators.end());
  for (Element g : f) {
    if (g >= lat.size()) throw InvalidInput("generator " + std::to_string(g) + " out of range");
  }
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());

  RankTable t;
  t.generators_ = f;
  t.levels_.push_back(f);
  while (true) {
    const auto& cur = t.levels_.back();
    Bitset next(lat.size());
    for (Element x : cur)
      for (Element y : cur) {
        next.set(lat.meet(x, y));
        next.set(lat.join(x, y));
      }
    std::vector<Element> level;
    for (auto x = next.find_first(); x != Bitset::npos; x = next.find_next(x)) level.push_back(x);
    if (level == cur) break;
    t.levels_.push_back(std::move(level));
  }
  if (t.levels_.back().size() != lat.size()) {
    Bitset reached(lat.size());
    for (Element x : t.levels_.back()) reached.set(x);
    std::vector<std::size_t> missing;
    for (Element x = 0; x < lat.size(); ++x) {
      if (!reached.test(x)) missing.push_back(x);
    }
    throw CoverageError("generators do not generate the lattice", missing);
  }
  t.rank_.assign(lat.size(), 0);
  for (std::size_t k = t.levels_.size(); k-- > 0;) {
    for (Element x : t.levels_[k]) t.rank_[x] = k;
  }
  return t;
}

std::vector<Element> GenTree::branch(std::size_t i) const {
  std::vector<Element> out;
  while (true) {
    out.push_back(nodes_.at(i).element);
    if (nodes_[i].depth == 0) break;
    i = nodes_[i].parent;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> GenTree::maximal_branches() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!has_child_[i]) out.push_back(i);
  }
  // Nodes are stored level by level in lexicographic order, so a stable sort
  // by depth keeps each level lexicographic.
  std::stable_sort(out.begin(), out.end(),
                   [&](std::size_t a, std::size_t b) { return nodes_[a].depth > nodes_[b].depth; });
  return out;
}

std::size_t GenTree::deepest_length() const {
  std::size_t best = 0;
  for (const auto& n : nodes_) best = std::max(best, n.depth + 1);
  return best;
}

GenTree build_tree(const FiniteLattice& lat, const RankTable& ranks, std::size_t depth) {
  GenTree t;
  t.level_start_.push_back(0);
  for (Element g : ranks.generators()) {
    if (!lat.is_bound(g)) t.nodes_.push_back({g, GenTree::kNoParent, 0, g, false});
  }
  std::vector<Element> low;  // elements of rank < d+1, grown level by level
  for (std::size_t d = 0; d < depth; ++d) {
    const std::size_t begin = t.level_start_.back();
    const std::size_t end = t.nodes_.size();
    if (begin == end) break;
    low.clear();
    for (Element a = 0; a < lat.size(); ++a) {
      if (ranks.rank(a) <= d) low.push_back(a);
    }
    t.level_start_.push_back(end);
    for (std::size_t i = begin; i < end; ++i) {
      const Element x = t.nodes_[i].element;
      // Smallest witness per child, joins preferred on ties.
      std::vector<std::pair<Element, std::pair<Element, bool>>> kids;
      for (Element a : low) {
        for (bool use_join : {true, false}) {
          const Element y = use_join ? lat.join(x, a) : lat.meet(x, a);
          if (lat.is_bound(y) || ranks.rank(y) != d + 1) continue;
          kids.push_back({y, {a, use_join}});
        }
      }
      std::sort(kids.begin(), kids.end(), [](const auto& p, const auto& q) {
        if (p.first != q.first) return p.first < q.first;
        if (p.second.first != q.second.first) return p.second.first < q.second.first;
        return p.second.second > q.second.second;
      });
      Element last = static_cast<Element>(-1);
      for (const auto& [y, why] : kids) {
        if (y == last) continue;
        last = y;
        t.nodes_.push_back({y, i, d + 1, why.first, why.second});
        if (t.nodes_.size() > kMaxTreeNodes) {
          throw ResourceLimit("generation tree exceeds " + std::to_string(kMaxTreeNodes) +
                              " nodes");
        }
      }
    }
    if (t.nodes_.size() == end) t.level_start_.pop_back();
  }
  t.has_child_.assign(t.nodes_.size(), false);
  for (const auto& n : t.nodes_) {
    if (n.depth > 0) t.has_child_[n.parent] = true;
  }
  t.depth_ = std::min(depth, ranks.max_rank());

  const auto props = check_tree_properties(lat, ranks, t);
  for (const auto& c : props.checks) {
    if (!c.passed) throw StructuralError("tree property " + c.name + " fails: " + c.note);
  }
  return t;
}

CheckList check_tree_properties(const FiniteLattice& lat, const RankTable& ranks,
                                const GenTree& tree) {
  CheckList out;
  const auto& nodes = tree.nodes();

  const bool length3 = check_length3(lat);
  bool ok = true;
  for (std::size_t i = 0; ok && i < nodes.size(); ++i) {
    const auto& nd = nodes[i];
    if (lat.is_bound(nd.element) || ranks.rank(nd.element) != nd.depth) {
      out.fail("membership", {i, nd.element}, "entry is a bound or has the wrong rank");
      ok = false;
    } else if (nd.depth > 0) {
      const Element prev = nodes[nd.parent].element;
      const Element via = nd.via;
      const Element got = nd.via_join ? lat.join(prev, via) : lat.meet(prev, via);
      if (ranks.rank(via) >= nd.depth || got != nd.element) {
        out.fail("membership", {i, prev, via, nd.element}, "entry is not derived from its parent");
        ok = false;
      }
    }
  }
  if (ok) out.pass("membership");

  ok = true;
  for (std::size_t i = 0; ok && i < nodes.size(); ++i) {
    const auto br = tree.branch(i);
    for (std::size_t a = 0; ok && a < br.size(); ++a) {
      for (std::size_t b = a + 1; ok && b < br.size(); ++b) {
        if (br[a] == br[b]) {
          out.fail("P1", {i, br[a]}, "branch repeats an element");
          ok = false;
        }
      }
      if (ok && a + 1 < br.size()) {
        const Element x = br[a], y = br[a + 1];
        if (!lat.comparable(x, y)) {
          out.fail("P1", {i, x, y}, "consecutive entries are incomparable");
          ok = false;
        } else if (length3 && !((lat.is_atom(x) && lat.is_coatom(y) && lat.less(x, y)) ||
                     (lat.is_coatom(x) && lat.is_atom(y) && lat.less(y, x)))) {
          out.fail("P1", {i, x, y}, "consecutive entries do not alternate atom and coatom");
          ok = false;
        }
      }
    }
  }
  if (ok) out.pass("P1");

  ok = true;
  std::vector<bool> seen(lat.size() * (tree.depth() + 1), false);
  for (const auto& nd : nodes) seen[nd.element * (tree.depth() + 1) + nd.depth] = true;
  for (Element x = 0; ok && x < lat.size(); ++x) {
    if (lat.is_bound(x) || ranks.rank(x) > tree.depth()) continue;
    if (!seen[x * (tree.depth() + 1) + ranks.rank(x)]) {
      out.fail("P2", {x, ranks.rank(x)}, "element never extends a tree node");
      ok = false;
    }
  }
  if (ok) out.pass("P2");

  ok = true;
  for (std::size_t i = 0; ok && i < nodes.size(); ++i) {
    const auto bound = ranks.rank_bound(nodes[i].depth);
    if (!bound || nodes[i].element > *bound) {
      out.fail("P4", {i, nodes[i].element, nodes[i].depth}, "entry exceeds the rank bound");
      ok = false;
    }
  }
  if (ok) out.pass("P4");
  return out;
}

std::size_t structural_maximum(const GenTree& tree) {
  const std::size_t len = tree.deepest_length();
  if (len < 2) return 0;
  std::size_t n = len - 1;
  if (n % 2 == 0) --n;
  return n;
}

Graph comparability_graph(const FiniteLattice& lat, std::span<const Element> elems) {
  std::vector<Vertex> vs;
  for (Element x : elems) {
    if (x >= lat.size()) throw InvalidInput("element " + std::to_string(x) + " out of range");
    if (lat.is_bound(x)) throw InvalidInput("bounds are not allowed in a comparability graph");
    vs.push_back(static_cast<Vertex>(x));
  }
  std::vector<Edge> es;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      if (lat.comparable(elems[i], elems[j])) {
        es.push_back({static_cast<Vertex>(elems[i]), static_cast<Vertex>(elems[j])});
      }
    }
  return Graph(std::move(vs), es);  // rejects repeats
}

std::optional<std::string> fence_violation(const Poset& p, std::span<const Element> seq,
                                           bool dual) {
  const std::size_t len = seq.size();
  if (len < 2 || len % 2 != 0) return "a fence has an even number (at least 2) of elements";
  for (Element x : seq) {
    if (x >= p.size()) return "element " + std::to_string(x) + " out of range";
  }
  auto below = [&](Element a, Element b) { return dual ? p.less(b, a) : p.less(a, b); };
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = i + 1; j < len; ++j) {
      if (seq[i] == seq[j]) return "element " + std::to_string(seq[i]) + " repeats";
      const bool want = j == i + 1;
      const Element lo = i % 2 == 0 ? seq[i] : seq[j];
      const Element hi = i % 2 == 0 ? seq[j] : seq[i];
      if (want && !below(lo, hi)) {
        return "positions " + std::to_string(i) + " and " + std::to_string(j) +
               " are not ordered as a fence";
      }
      if (!want && p.comparable(seq[i], seq[j])) {
        return "positions " + std::to_string(i) + " and " + std::to_string(j) +
               " are comparable";
      }
    }
  return std::nullopt;
}

std::optional<Fence> find_fences(const FiniteLattice& lat, std::span<const Element> generators,
                                 std::size_t target) {
  if (target % 2 == 0) throw InvalidInput("fence length must be odd");
  if (!check_length3(lat)) throw InvalidInput("lattice is not of length 3");
  const auto ranks = closure_and_rank(lat, generators);
  const auto tree = build_tree(lat, ranks, ranks.max_rank());
  for (std::size_t leaf : tree.maximal_branches()) {
    if (tree.nodes()[leaf].depth + 1 < target + 1) break;
    const auto br = tree.branch(leaf);
    const Graph g = comparability_graph(lat, br);
    const auto w = finite::dichotomy(g, target + 1);
    if (std::holds_alternative<Embedding>(w)) {
      throw InternalContradiction("comparability graph of a length-3 lattice contains K22");
    }
    const auto* path = std::get_if<PathSeq>(&w);
    if (!path) continue;
    Fence f;
    f.branch = br;
    for (Vertex v : path->verts) f.seq.push_back(v);
    if (!lat.is_atom(f.seq.front())) {
      std::reverse(f.seq.begin(), f.seq.end());
      f.reversed = true;
    }
    if (auto why = fence_violation(lat.poset(), f.seq)) {
      throw InternalContradiction("chordless path is not a fence: " + *why);
    }
    return f;
  }
  return std::nullopt;
}

Poset length3_poset(std::size_t atoms, std::size_t coatoms,
                    std::span<const std::pair<std::size_t, std::size_t>> edges) {
  const std::size_t n = atoms + coatoms + 2;
  const Element top = n - 1;
  std::vector<LeqPair> leq;
  for (Element x = 0; x < n; ++x) {
    leq.emplace_back(x, x);
    if (x != 0) leq.emplace_back(0, x);
    if (x != top && x != 0) leq.emplace_back(x, top);
  }
  for (auto [a, c] : edges) {
    if (a >= atoms || c >= coatoms) throw InvalidInput("atom/coatom edge out of range");
    leq.emplace_back(1 + a, 1 + atoms + c);
  }
  std::sort(leq.begin(), leq.end());
  leq.erase(std::unique(leq.begin(), leq.end()), leq.end());
  return Poset(n, leq);
}

namespace {

// Bounds plus the given strict relations between middle elements, which must
// only relate atoms to coatoms.
FiniteLattice bounded(std::size_t n, const std::vector<LeqPair>& middle) {
  const Element top = n - 1;
  std::vector<LeqPair> leq;
  for (Element x = 0; x < n; ++x) {
    leq.emplace_back(x, x);
    if (x != 0) leq.emplace_back(0, x);
    if (x != top && x != 0) leq.emplace_back(x, top);
  }
  leq.insert(leq.end(), middle.begin(), middle.end());
  return FiniteLattice::from_pairs(n, leq);
}

}  // namespace

FiniteLattice fence_lattice(std::size_t n) {
  if (n % 2 == 0) throw InvalidInput("fence length must be odd");
  std::vector<LeqPair> middle;
  for (std::size_t i = 0; i < n; ++i) {
    const Element a = 1 + i, b = 2 + i;
    middle.push_back(i % 2 == 0 ? LeqPair{a, b} : LeqPair{b, a});
  }
  return bounded(n + 3, middle);
}

GeneratedFence generated_fence_lattice(std::size_t n) {
  if (n % 2 == 0 || n < 3) throw InvalidInput("fence length must be odd and at least 3");
  std::vector<LeqPair> middle;
  for (std::size_t i = 0; i < n; ++i) {
    const Element a = 1 + i, b = 2 + i;
    middle.push_back(i % 2 == 0 ? LeqPair{a, b} : LeqPair{b, a});
  }
  GeneratedFence out;
  out.generators.push_back(1);
  for (std::size_t i = 1; i <= n; ++i) {
    const Element x = 1 + i;
    const Element h = n + 1 + i;
    // x_i is a coatom for odd i.
    middle.push_back(i % 2 == 1 ? LeqPair{h, x} : LeqPair{x, h});
    out.generators.push_back(h);
  }
  out.lattice = bounded(2 * n + 3, middle);
  for (std::size_t i = 0; i <= n; ++i) out.fence.push_back(1 + i);
  return out;
}

std::vector<Element> minimal_generators(const FiniteLattice& lat, std::span<const Element> order) {
  std::vector<bool> keep(lat.size(), true);
  auto generates = [&]() {
    std::vector<Element> g;
    for (Element x = 0; x < lat.size(); ++x) {
      if (keep[x]) g.push_back(x);
    }
    if (g.empty()) return false;
    try {
      closure_and_rank(lat, g);
      return true;
    } catch (const CoverageError&) {
      return false;
    }
  };
  for (Element x : order) {
    if (x >= lat.size()) throw InvalidInput("element " + std::to_string(x) + " out of range");
    keep[x] = false;
    if (!generates()) keep[x] = true;
  }
  std::vector<Element> out;
  for (Element x = 0; x < lat.size(); ++x) {
    if (keep[x]) out.push_back(x);
  }
  return out;
}

}  // namespace grs::lattice
