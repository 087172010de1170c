#include "grs/finite_grs.hpp"

#include <algorithm>
#include <limits>
#include <thread>

#include "grs/error.hpp"
#include "grs/search.hpp"

namespace grs::finite {

namespace {

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kMaxColoringVertices = 96;

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t colex_rank(std::array<std::size_t, 4> s) {
  return binomial(s[0], 1) + binomial(s[1], 2) + binomial(s[2], 3) + binomial(s[3], 4);
}

}  // namespace

IncreasingPathTable IncreasingPathTable::build(const Graph& g) {
  if (g.size() < 2) throw InvalidInput("increasing paths need at least two vertices");
  if (!check_traceable(g)) throw InvalidInput("graph is not traceable in its stored order");

  IncreasingPathTable t;
  t.host_ = g;
  t.adj_ = DenseAdjacency(g);
  const std::size_t n = g.size();
  t.paths_.assign(n * n, {});

  std::vector<std::size_t> dist(n);
  for (std::size_t y = 1; y < n; ++y) {
    // Distance to y along increasing edges; the increasing-edge relation is
    // acyclic, so one backward sweep lays out the layers.
    std::fill(dist.begin(), dist.end(), kUnreachable);
    dist[y] = 0;
    for (std::size_t v = y; v-- > 0;) {
      const Bitset& row = t.adj_.row(v);
      for (auto w = row.find_next(v); w != Bitset::npos && w <= y; w = row.find_next(w)) {
        if (dist[w] != kUnreachable) dist[v] = std::min(dist[v], dist[w] + 1);
      }
    }
    for (std::size_t x = 0; x < y; ++x) {
      if (dist[x] == kUnreachable) {
        throw InternalContradiction("traceable graph without an increasing path");
      }
      auto& p = t.paths_[x * n + y];
      p.push_back(x);
      std::size_t cur = x;
      while (cur != y) {
        const Bitset& row = t.adj_.row(cur);
        auto w = row.find_next(cur);
        while (dist[w] != dist[cur] - 1) w = row.find_next(w);
        p.push_back(w);
        cur = w;
      }
    }
  }
  return t;
}

std::span<const std::size_t> IncreasingPathTable::path(std::size_t x, std::size_t y) const {
  if (x >= y || y >= size()) {
    throw InvalidInput("path(x, y) needs x < y < " + std::to_string(size()));
  }
  return paths_[x * size() + y];
}

std::size_t IncreasingPathTable::max_edges_on_path() const {
  std::size_t best = 0;
  for (const auto& p : paths_) {
    if (!p.empty()) best = std::max(best, p.size() - 1);
  }
  return best;
}

std::string Color::name() const {
  if (is_residual()) return "K";
  return "K_" + std::to_string(i_) + "," + std::to_string(j_);
}

std::size_t color_count(std::size_t n) { return (n - 1) * (n - 1) + 1; }

Color color_4subset(const IncreasingPathTable& t, std::size_t n,
                    std::array<std::size_t, 4> s) {
  if (n < 2) throw InvalidInput("colouring needs n >= 2");
  if (!(s[0] < s[1] && s[1] < s[2] && s[2] < s[3])) {
    throw InvalidInput("4-subset must be ascending");
  }
  const auto p = t.path(s[0], s[1]);
  const auto q = t.path(s[2], s[3]);
  const std::size_t imax = std::min(n - 2, p.size() - 1);
  const std::size_t jmax = std::min(n - 2, q.size() - 1);
  for (std::size_t i = 0; i <= imax; ++i) {
    for (std::size_t j = 0; j <= jmax; ++j) {
      if (t.adjacency().adjacent(p[i], q[j])) {
        return Color::pair(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return Color::residual();
}

FourColoring::FourColoring(std::size_t vertex_count, const Rule& rule, std::size_t n)
    : size_(vertex_count), n_(n) {
  if (vertex_count > kMaxColoringVertices) {
    throw ResourceLimit("4-subset colouring limited to " + std::to_string(kMaxColoringVertices) +
                        " vertices");
  }
  colors_.reserve(binomial(vertex_count, 4));
  // Loop order matches colex rank, so push_back lands every subset at its rank.
  for (std::size_t d = 3; d < vertex_count; ++d)
    for (std::size_t c = 2; c < d; ++c)
      for (std::size_t b = 1; b < c; ++b)
        for (std::size_t a = 0; a < b; ++a) colors_.push_back(rule(a, b, c, d));
}

FourColoring FourColoring::from_table(const IncreasingPathTable& t, std::size_t n) {
  return FourColoring(
      t.size(),
      [&](std::size_t x, std::size_t y, std::size_t u, std::size_t v) {
        return color_4subset(t, n, {x, y, u, v});
      },
      n);
}

Color FourColoring::at(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
  std::array<std::size_t, 4> s{a, b, c, d};
  std::sort(s.begin(), s.end());
  if (s[3] >= size_ || s[0] == s[1] || s[1] == s[2] || s[2] == s[3]) {
    throw InvalidInput("not a 4-subset of the coloured vertex set");
  }
  return colors_[colex_rank(s)];
}

std::map<Color, std::size_t> FourColoring::histogram() const {
  std::map<Color, std::size_t> h;
  for (const Color& c : colors_) ++h[c];
  return h;
}

bool certificate_holds(const FourColoring& c, const HomogeneousCertificate& cert) {
  const auto& s = cert.subset;
  if (!std::is_sorted(s.begin(), s.end()) ||
      std::adjacent_find(s.begin(), s.end()) != s.end()) {
    return false;
  }
  if (!s.empty() && s.back() >= c.vertex_count()) return false;
  for (std::size_t d = 3; d < s.size(); ++d)
    for (std::size_t cc = 2; cc < d; ++cc)
      for (std::size_t b = 1; b < cc; ++b)
        for (std::size_t a = 0; a < b; ++a) {
          if (c.at(s[a], s[b], s[cc], s[d]) != cert.color) return false;
        }
  return true;
}

namespace {

class HomogeneousSearch {
 public:
  HomogeneousSearch(const FourColoring& c, std::size_t q, std::optional<Color> only)
      : c_(c), q_(q), target_(only), first_filter_(only ? 3 : 4) {}

  std::optional<HomogeneousCertificate> run(std::vector<std::size_t> candidates) {
    if (extend(candidates)) return HomogeneousCertificate{chosen_, *target_};
    return std::nullopt;
  }

 private:
  bool extend(const std::vector<std::size_t>& candidates) {
    if (chosen_.size() == q_) return true;
    const std::size_t need = q_ - chosen_.size();
    for (std::size_t idx = 0; idx + need <= candidates.size(); ++idx) {
      const std::size_t v = candidates[idx];
      chosen_.push_back(v);
      const bool fixed_here = !target_ && chosen_.size() == 4;
      if (fixed_here) target_ = c_.at(chosen_[0], chosen_[1], chosen_[2], chosen_[3]);
      if (extend(filter(candidates, idx + 1))) return true;
      if (fixed_here) target_.reset();
      chosen_.pop_back();
    }
    return false;
  }

  // Keeps the later candidates w for which every 4-subset of chosen + {w} not
  // checked at a shallower level has the target colour.
  std::vector<std::size_t> filter(const std::vector<std::size_t>& candidates,
                                  std::size_t from) const {
    std::vector<std::size_t> out;
    const std::size_t t = chosen_.size();
    if (!target_ || t < first_filter_) {
      out.assign(candidates.begin() + static_cast<std::ptrdiff_t>(from), candidates.end());
      return out;
    }
    const bool all_triples = t == first_filter_;
    const std::size_t v_index = t - 1;
    for (std::size_t k = from; k < candidates.size(); ++k) {
      const std::size_t w = candidates[k];
      bool ok = true;
      for (std::size_t a = 0; ok && a < t; ++a)
        for (std::size_t b = a + 1; ok && b < t; ++b)
          for (std::size_t d = b + 1; ok && d < t; ++d) {
            if (!all_triples && d != v_index) continue;
            ok = c_.at(chosen_[a], chosen_[b], chosen_[d], w) == *target_;
          }
      if (ok) out.push_back(w);
    }
    return out;
  }

  const FourColoring& c_;
  std::size_t q_;
  std::optional<Color> target_;
  std::size_t first_filter_;
  std::vector<std::size_t> chosen_;
};

}  // namespace

std::optional<HomogeneousCertificate> find_homogeneous(const FourColoring& c,
                                                       std::span<const std::size_t> vertices,
                                                       std::size_t q,
                                                       std::optional<Color> only) {
  if (q < 4) throw InvalidInput("homogeneous set size must be at least 4");
  std::vector<std::size_t> cand(vertices.begin(), vertices.end());
  std::sort(cand.begin(), cand.end());
  if (std::adjacent_find(cand.begin(), cand.end()) != cand.end()) {
    throw InvalidInput("vertex list repeats an element");
  }
  if (!cand.empty() && cand.back() >= c.vertex_count()) {
    throw InvalidInput("vertex list leaves the coloured set");
  }
  if (q > cand.size()) return std::nullopt;
  auto cert = HomogeneousSearch(c, q, only).run(std::move(cand));
  if (cert && !certificate_holds(c, *cert)) {
    throw InternalContradiction("homogeneous search returned a non-homogeneous set");
  }
  return cert;
}

Embedding extract_k22(const HomogeneousCertificate& cert, const IncreasingPathTable& t) {
  if (cert.color.is_residual()) throw PreconditionError("K22 extraction needs a K_i,j colour");
  if (cert.subset.size() < 8) {
    throw PreconditionError("K22 extraction needs 8 certificate elements, got " +
                            std::to_string(cert.subset.size()));
  }
  const auto& x = cert.subset;
  const auto i = static_cast<std::size_t>(cert.color.i());
  const auto j = static_cast<std::size_t>(cert.color.j());
  auto image = [&](std::size_t idx, std::size_t from, std::size_t to) {
    const auto p = t.path(x[from], x[to]);
    if (idx >= p.size()) {
      throw ExtractionFailure("path index beyond path length", {x[from], x[to], idx});
    }
    return p[idx];
  };
  const std::array<std::size_t, 4> pos{image(i, 0, 1), image(i, 2, 3), image(j, 4, 5),
                                       image(j, 6, 7)};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b) {
      if (pos[a] == pos[b]) {
        throw ExtractionFailure("K22 images collide", {t.label(pos[a]), a, b});
      }
    }
  Embedding e{Pattern::k22(), {}};
  for (std::size_t p : pos) e.assignment.push_back(t.label(p));
  if (auto why = embedding_violation(t.host(), e)) {
    std::vector<std::size_t> w(e.assignment.begin(), e.assignment.end());
    throw ExtractionFailure("extracted K22 does not embed: " + *why, w);
  }
  return e;
}

bool GreedyTrace::progress_bound_holds() const {
  for (std::size_t i = 0; i < picks.size(); ++i) {
    if (i + 1 >= anchors.size() || picks[i] > anchors[i + 1]) return false;
  }
  return true;
}

GreedyTrace extract_chordless_traced(const HomogeneousCertificate& cert,
                                     const IncreasingPathTable& t, std::size_t n) {
  if (!cert.color.is_residual()) throw PreconditionError("path extraction needs colour K");
  if (n == 0) throw InvalidInput("path length must be at least 1");
  if (cert.subset.size() < n + 1) {
    throw PreconditionError("path extraction needs " + std::to_string(n + 1) +
                            " certificate elements, got " + std::to_string(cert.subset.size()));
  }
  GreedyTrace tr;
  tr.anchors.assign(cert.subset.begin(), cert.subset.begin() + static_cast<std::ptrdiff_t>(n + 1));
  tr.route.push_back(tr.anchors[0]);
  for (std::size_t a = 0; a < n; ++a) {
    const auto p = t.path(tr.anchors[a], tr.anchors[a + 1]);
    tr.route.insert(tr.route.end(), p.begin() + 1, p.end());
  }

  std::size_t at = 0;  // index of the current pick in route
  tr.picks.push_back(tr.route[0]);
  while (tr.picks.size() < n) {
    std::size_t next = at;
    for (std::size_t r = tr.route.size(); r-- > at + 1;) {
      if (t.adjacency().adjacent(tr.route[at], tr.route[r])) {
        next = r;
        break;
      }
    }
    if (next == at) {
      throw ExtractionFailure("greedy walk ran off the route",
                              std::vector<std::size_t>(tr.picks.begin(), tr.picks.end()));
    }
    at = next;
    tr.picks.push_back(tr.route[at]);
  }
  for (std::size_t p : tr.picks) tr.path.verts.push_back(t.label(p));
  if (!is_chordless(t.host(), tr.path)) {
    throw ExtractionFailure("greedy walk produced a path with a chord",
                            std::vector<std::size_t>(tr.picks.begin(), tr.picks.end()));
  }
  return tr;
}

PathSeq extract_chordless(const HomogeneousCertificate& cert, const IncreasingPathTable& t,
                          std::size_t n) {
  return extract_chordless_traced(cert, t, n).path;
}

WitnessKind kind_of(const DichotomyWitness& w) {
  switch (w.index()) {
    case 0: return WitnessKind::chordless_path;
    case 1: return WitnessKind::k22_copy;
    default: return WitnessKind::neither;
  }
}

std::string kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::chordless_path: return "chordless-path";
    case WitnessKind::k22_copy: return "k22-copy";
    case WitnessKind::neither: return "neither";
  }
  return "neither";
}

DichotomyWitness dichotomy(const Graph& g, std::size_t n) {
  if (!check_traceable(g)) throw InvalidInput("graph is not traceable in its stored order");
  if (auto p = find_chordless_path(g, n)) return *p;
  if (auto e = find_embedding(g, Pattern::k22())) return *e;
  return Neither{};
}

WitnessKind dichotomy_kind(const DenseAdjacency& adj, std::size_t n) {
  if (find_chordless_path(adj, n)) return WitnessKind::chordless_path;
  if (find_embedding(adj, Pattern::k22())) return WitnessKind::k22_copy;
  return WitnessKind::neither;
}

std::size_t chord_count(std::size_t size) { return size < 3 ? 0 : (size - 1) * (size - 2) / 2; }

namespace {

std::vector<std::pair<std::size_t, std::size_t>> chord_list(std::size_t size) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 2; j < size; ++j) out.emplace_back(i, j);
  return out;
}

DenseAdjacency adjacency_from_mask(std::size_t size,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& chords,
                                   std::uint64_t mask) {
  DenseAdjacency adj(size);
  for (std::size_t i = 0; i + 1 < size; ++i) adj.add_edge(i, i + 1);
  for (std::size_t c = 0; c < chords.size(); ++c) {
    if (mask >> c & 1U) adj.add_edge(chords[c].first, chords[c].second);
  }
  return adj;
}

struct SliceResult {
  std::uint64_t neither = 0;
  std::optional<std::uint64_t> first;
};

}  // namespace

Graph traceable_from_mask(std::size_t size, std::uint64_t mask) {
  std::vector<Vertex> vs(size);
  for (std::size_t i = 0; i < size; ++i) vs[i] = static_cast<Vertex>(i);
  std::vector<Edge> es;
  for (std::size_t i = 0; i + 1 < size; ++i) {
    es.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  }
  const auto chords = chord_list(size);
  for (std::size_t c = 0; c < chords.size(); ++c) {
    if (mask >> c & 1U) {
      es.push_back({static_cast<Vertex>(chords[c].first), static_cast<Vertex>(chords[c].second)});
    }
  }
  return Graph(std::move(vs), es);
}

MinMReport estimate_min_m(std::size_t n, std::size_t size_bound, std::size_t jobs) {
  if (n == 0) throw InvalidInput("n must be at least 1");
  if (size_bound > kMaxEnumerationSize) {
    throw ResourceLimit("exhaustive enumeration is limited to " +
                        std::to_string(kMaxEnumerationSize) + " vertices");
  }
  jobs = std::max<std::size_t>(jobs, 1);
  MinMReport report;
  report.n = n;
  for (std::size_t size = 1; size <= size_bound; ++size) {
    const auto chords = chord_list(size);
    const std::uint64_t total = std::uint64_t{1} << chords.size();
    const std::size_t workers = static_cast<std::size_t>(
        std::min<std::uint64_t>(jobs, std::max<std::uint64_t>(total / 1024, 1)));
    std::vector<SliceResult> slices(workers);
    auto work = [&](std::size_t w) {
      const std::uint64_t lo = total * w / workers;
      const std::uint64_t hi = total * (w + 1) / workers;
      for (std::uint64_t mask = lo; mask < hi; ++mask) {
        if (dichotomy_kind(adjacency_from_mask(size, chords, mask), n) != WitnessKind::neither) {
          continue;
        }
        ++slices[w].neither;
        if (!slices[w].first) slices[w].first = mask;
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& th : pool) th.join();
    }
    SizeRow row;
    row.size = size;
    row.graphs = total;
    for (const auto& s : slices) {
      row.neither += s.neither;
      if (!row.example && s.first) row.example = traceable_from_mask(size, *s.first);
    }
    if (row.neither > 0) report.largest_neither = size;
    report.sizes.push_back(std::move(row));
  }
  return report;
}

std::optional<std::uint64_t> tower(std::size_t height, std::uint64_t x) {
  if (height == 0) throw InvalidInput("tower height starts at 1");
  std::uint64_t v = x;
  for (std::size_t k = 2; k <= height; ++k) {
    if (v >= 64) return std::nullopt;
    v = std::uint64_t{1} << v;
  }
  return v;
}

TowerBound tower_bound(std::size_t n, std::size_t c) {
  if (n < 2) throw PreconditionError("tower bound needs n >= 2");
  if (c == 0) throw InvalidInput("tower constant must be positive");
  std::size_t log2_ceil = 0;
  while ((std::size_t{1} << log2_ceil) < n) ++log2_ceil;
  TowerBound b;
  b.height = c * log2_ceil;
  b.value = tower(b.height, 2);
  b.expression = "t_" + std::to_string(b.height) + "(2)";
  return b;
}

PipelineTrace run_pipeline(const Graph& g, std::size_t n) {
  if (n < 2) throw InvalidInput("pipeline needs n >= 2");
  PipelineTrace tr;
  tr.n = n;
  tr.q = homogeneous_size(n);
  tr.vertex_count = g.size();
  const auto table = IncreasingPathTable::build(g);
  tr.max_edges_on_path = table.max_edges_on_path();
  tr.direct_path = find_chordless_path(g, n);
  tr.edge_bound_holds = tr.direct_path || tr.max_edges_on_path <= n - 2;
  if (tr.direct_path) {
    tr.outcome = "chordless-path";
    return tr;
  }
  if (!tr.edge_bound_holds) {
    throw InternalContradiction("increasing path longer than n-2 edges without a chordless n-path");
  }

  const auto coloring = FourColoring::from_table(table, n);
  tr.histogram = coloring.histogram();
  std::vector<std::size_t> all(g.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  tr.certificate = find_homogeneous(coloring, all, tr.q);
  if (!tr.certificate) {
    tr.outcome = "no-homogeneous-set";
    return tr;
  }
  if (tr.certificate->color.is_residual()) {
    tr.greedy = extract_chordless_traced(*tr.certificate, table, n);
    tr.outcome = "chordless-path";
  } else {
    tr.k22 = extract_k22(*tr.certificate, table);
    tr.outcome = "k22";
  }
  return tr;
}

}  // namespace grs::finite
