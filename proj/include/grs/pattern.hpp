#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grs/graph.hpp"

namespace grs {

/// The three bipartite pattern families the constructions look for.
///
/// Pattern vertices are numbered a_0..a_{k-1} as 0..k-1 and b_0..b_{k-1} as
/// k..2k-1. A(k) has an edge a_n - b_m iff n <= m; K_{k,k} has every a-b edge;
/// K22 is K_{2,2}.
class Pattern {
 public:
  enum class Family { k22, a, complete_bipartite };

  static Pattern k22() { return Pattern(Family::k22, 2); }
  static Pattern a(std::size_t k) { return Pattern(Family::a, k); }
  static Pattern kkk(std::size_t k) { return Pattern(Family::complete_bipartite, k); }

  /// Accepts "K22", "A:k" and "Kkk:k". Throws InvalidInput otherwise.
  static Pattern parse(std::string_view text);

  Family family() const noexcept { return family_; }
  std::size_t side() const noexcept { return k_; }
  std::size_t vertex_count() const noexcept { return 2 * k_; }

  /// Edge between a_n and b_m.
  bool has_edge(std::size_t n, std::size_t m) const {
    return family_ == Family::a ? n <= m : true;
  }

  std::string name() const;
  std::string vertex_label(std::size_t pattern_vertex) const;

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  Pattern(Family f, std::size_t k) : family_(f), k_(k) {}

  Family family_;
  std::size_t k_;
};

/// The pattern itself as a graph on vertices 0..2k-1.
Graph pattern_graph(const Pattern& p);

/// Injective pattern-vertex -> host-vertex map. assignment[i] is the image of
/// pattern vertex i.
struct Embedding {
  Pattern pattern = Pattern::k22();
  std::vector<Vertex> assignment;

  Vertex a(std::size_t n) const { return assignment.at(n); }
  Vertex b(std::size_t m) const { return assignment.at(pattern.side() + m); }
  friend bool operator==(const Embedding&, const Embedding&) = default;
};

/// Describes the first way the embedding fails to be one (wrong size,
/// non-injective, image outside host, missing host edge); nullopt if valid.
std::optional<std::string> embedding_violation(const Graph& host, const Embedding& e);

inline bool is_valid_embedding(const Graph& host, const Embedding& e) {
  return !embedding_violation(host, e).has_value();
}

}  // namespace grs
