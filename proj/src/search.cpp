#include "grs/search.hpp"

#include <unordered_set>

#include "grs/error.hpp"

namespace grs {

namespace {

class ChordlessSearch {
 public:
  ChordlessSearch(const DenseAdjacency& adj, std::size_t n) : adj_(adj), n_(n) {}

  std::optional<std::vector<std::size_t>> run() {
    const Bitset none(adj_.size());
    for (std::size_t start = 0; start < adj_.size(); ++start) {
      path_.assign(1, start);
      if (extend(none)) return path_;
    }
    return std::nullopt;
  }

 private:
  // `blocked` is the union of the closed neighbourhoods of every path vertex
  // except the last one; the next vertex must avoid all of it.
  bool extend(const Bitset& blocked) {
    if (path_.size() == n_) return true;
    const std::size_t last = path_.back();
    const Bitset candidates = adj_.row(last) - blocked;
    if (candidates.none()) return false;
    Bitset next_blocked = blocked | adj_.row(last);
    next_blocked.set(last);
    for (auto c = candidates.find_first(); c != Bitset::npos; c = candidates.find_next(c)) {
      path_.push_back(c);
      if (extend(next_blocked)) return true;
      path_.pop_back();
    }
    return false;
  }

  const DenseAdjacency& adj_;
  std::size_t n_;
  std::vector<std::size_t> path_;
};

class EmbeddingSearch {
 public:
  EmbeddingSearch(const DenseAdjacency& adj, const Pattern& p)
      : adj_(adj), pattern_(p), k_(p.side()), assign_(2 * k_), used_(adj.size()) {}

  std::optional<std::vector<std::size_t>> run() {
    if (assign_a(0)) return assign_;
    return std::nullopt;
  }

 private:
  // b_m is constrained by every assigned a_n with an a_n-b_m edge. For both A
  // and K_{k,k} these constraint sets are nested, so b_m..b_{k-1} (A) or all
  // b's (K_{k,k}) must fit into b_m's candidate set.
  std::size_t required_capacity(std::size_t m) const {
    return pattern_.family() == Pattern::Family::a ? k_ - m : k_;
  }

  Bitset b_candidates(std::size_t m, std::size_t assigned_a) const {
    Bitset cand(adj_.size());
    cand.set();
    for (std::size_t n = 0; n < assigned_a; ++n) {
      if (pattern_.has_edge(n, m)) cand &= adj_.row(assign_[n]);
    }
    return cand - used_;
  }

  bool capacity_ok(std::size_t assigned_a) const {
    for (std::size_t m = 0; m < k_; ++m) {
      if (b_candidates(m, assigned_a).count() < required_capacity(m)) return false;
    }
    return true;
  }

  bool assign_a(std::size_t i) {
    if (i == k_) return assign_b(0);
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      if (used_.test(v)) continue;
      assign_[i] = v;
      used_.set(v);
      if (capacity_ok(i + 1) && assign_a(i + 1)) return true;
      used_.reset(v);
    }
    return false;
  }

  bool assign_b(std::size_t m) {
    if (m == k_) return true;
    const Bitset cand = b_candidates(m, k_);
    for (auto c = cand.find_first(); c != Bitset::npos; c = cand.find_next(c)) {
      assign_[k_ + m] = c;
      used_.set(c);
      if (assign_b(m + 1)) return true;
      used_.reset(c);
    }
    return false;
  }

  const DenseAdjacency& adj_;
  const Pattern& pattern_;
  std::size_t k_;
  std::vector<std::size_t> assign_;
  Bitset used_;
};

}  // namespace

bool is_chordless(const Graph& g, const PathSeq& p) {
  std::unordered_set<Vertex> seen;
  for (Vertex v : p.verts) {
    if (!g.contains(v)) {
      throw InvalidInput("path vertex " + std::to_string(v) + " is not in the graph");
    }
    if (!seen.insert(v).second) {
      throw InvalidInput("path repeats vertex " + std::to_string(v));
    }
  }
  const auto& vs = p.verts;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (g.adjacent(vs[i], vs[j]) != (j == i + 1)) return false;
    }
  }
  return true;
}

std::optional<std::vector<std::size_t>> find_chordless_path(const DenseAdjacency& adj,
                                                            std::size_t n) {
  if (n == 0) throw InvalidInput("chordless path length must be at least 1");
  if (n > adj.size()) return std::nullopt;
  return ChordlessSearch(adj, n).run();
}

std::optional<PathSeq> find_chordless_path(const Graph& g, std::size_t n) {
  auto found = find_chordless_path(DenseAdjacency(g), n);
  if (!found) return std::nullopt;
  PathSeq p;
  for (std::size_t pos : *found) p.verts.push_back(g.at(pos));
  if (!is_chordless(g, p)) {
    throw InternalContradiction("chordless path search produced a path with a chord");
  }
  return p;
}

std::optional<std::vector<std::size_t>> find_embedding(const DenseAdjacency& adj,
                                                       const Pattern& pattern) {
  if (pattern.vertex_count() > adj.size()) return std::nullopt;
  return EmbeddingSearch(adj, pattern).run();
}

std::optional<Embedding> find_embedding(const Graph& g, const Pattern& pattern) {
  auto found = find_embedding(DenseAdjacency(g), pattern);
  if (!found) return std::nullopt;
  Embedding e{pattern, {}};
  for (std::size_t pos : *found) e.assignment.push_back(g.at(pos));
  if (auto why = embedding_violation(g, e)) {
    throw InternalContradiction("embedding search produced an invalid witness: " + *why);
  }
  return e;
}

bool check_traceable(const Graph& g) {
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    if (!g.adjacent(g.at(i), g.at(i + 1))) return false;
  }
  return true;
}

}  // namespace grs
