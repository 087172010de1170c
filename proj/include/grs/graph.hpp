#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace grs {

using Vertex = std::uint32_t;
using Bitset = boost::dynamic_bitset<std::uint64_t>;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  auto operator<=>(const Edge&) const = default;
};

/// Finite undirected simple graph over natural-number vertices.
///
/// The stored vertex order is meaningful: it is the tracing order used by
/// check_traceable and by everything that talks about "increasing" paths.
/// Graphs are immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Throws InvalidInput on duplicate vertices, self-loops or edges that
  /// mention an unknown vertex. Repeated edges are merged.
  Graph(std::vector<Vertex> vertices, std::span<const Edge> edges);

  /// 0 - 1 - ... - (n-1)
  static Graph path(std::size_t n);
  static Graph cycle(std::size_t n);
  static Graph complete(std::size_t n);

  std::size_t size() const noexcept { return order_.size(); }
  bool empty() const noexcept { return order_.empty(); }
  std::span<const Vertex> vertices() const noexcept { return order_; }

  bool contains(Vertex v) const { return index_.contains(v); }
  std::optional<std::size_t> find_position(Vertex v) const;
  /// Throws InvalidInput for unknown vertices.
  std::size_t position(Vertex v) const;
  Vertex at(std::size_t position) const { return order_.at(position); }

  bool adjacent(Vertex a, Vertex b) const;
  /// Neighbours in ascending vertex id.
  std::span<const Vertex> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  /// Every edge once, u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  /// Same shape with vertex i of the stored order renamed to i.
  Graph relabeled_by_order() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.order_ == b.order_ && a.adj_ == b.adj_;
  }

 private:
  std::vector<Vertex> order_;
  std::unordered_map<Vertex, std::size_t> index_;
  std::vector<std::vector<Vertex>> adj_;  // indexed by position
  std::size_t edge_count_ = 0;
};

/// Bitset adjacency rows over positions in a graph's stored order. This is
/// the representation the exhaustive searches run on.
class DenseAdjacency {
 public:
  explicit DenseAdjacency(std::size_t n = 0);
  explicit DenseAdjacency(const Graph& g);

  std::size_t size() const noexcept { return rows_.size(); }
  void add_edge(std::size_t a, std::size_t b);
  bool adjacent(std::size_t a, std::size_t b) const { return rows_[a].test(b); }
  const Bitset& row(std::size_t a) const { return rows_[a]; }

 private:
  std::vector<Bitset> rows_;
};

/// A sequence of distinct vertices, read as v_0, v_1, ..., v_{n-1}.
struct PathSeq {
  std::vector<Vertex> verts;

  std::size_t size() const noexcept { return verts.size(); }
  PathSeq reversed() const { return PathSeq{{verts.rbegin(), verts.rend()}}; }
  friend bool operator==(const PathSeq&, const PathSeq&) = default;
};

}  // namespace grs
