#include "grs/graph.hpp"

#include <algorithm>

#include "grs/error.hpp"

namespace grs {

Graph::Graph(std::vector<Vertex> vertices, std::span<const Edge> edges)
    : order_(std::move(vertices)), adj_(order_.size()) {
  index_.reserve(order_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (!index_.emplace(order_[i], i).second) {
      throw InvalidInput("duplicate vertex " + std::to_string(order_[i]));
    }
  }
  for (const Edge& e : edges) {
    if (e.u == e.v) {
      throw InvalidInput("self-loop at vertex " + std::to_string(e.u));
    }
    auto pu = find_position(e.u);
    auto pv = find_position(e.v);
    if (!pu || !pv) {
      throw InvalidInput("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                         " mentions a vertex outside the graph");
    }
    adj_[*pu].push_back(e.v);
    adj_[*pv].push_back(e.u);
  }
  for (auto& row : adj_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    edge_count_ += row.size();
  }
  edge_count_ /= 2;
}

Graph Graph::path(std::size_t n) {
  std::vector<Vertex> vs(n);
  std::vector<Edge> es;
  for (std::size_t i = 0; i < n; ++i) {
    vs[i] = static_cast<Vertex>(i);
    if (i + 1 < n) es.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  }
  return Graph(std::move(vs), es);
}

Graph Graph::cycle(std::size_t n) {
  if (n < 3) return path(n);
  std::vector<Vertex> vs(n);
  std::vector<Edge> es;
  for (std::size_t i = 0; i < n; ++i) {
    vs[i] = static_cast<Vertex>(i);
    es.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)});
  }
  return Graph(std::move(vs), es);
}

Graph Graph::complete(std::size_t n) {
  std::vector<Vertex> vs(n);
  std::vector<Edge> es;
  for (std::size_t i = 0; i < n; ++i) {
    vs[i] = static_cast<Vertex>(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      es.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
    }
  }
  return Graph(std::move(vs), es);
}

std::optional<std::size_t> Graph::find_position(Vertex v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Graph::position(Vertex v) const {
  auto p = find_position(v);
  if (!p) throw InvalidInput("vertex " + std::to_string(v) + " is not in the graph");
  return *p;
}

bool Graph::adjacent(Vertex a, Vertex b) const {
  auto pa = find_position(a);
  if (!pa || !contains(b)) return false;
  const auto& row = adj_[*pa];
  return std::binary_search(row.begin(), row.end(), b);
}

std::span<const Vertex> Graph::neighbors(Vertex v) const { return adj_[position(v)]; }

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t i = 0; i < order_.size(); ++i) {
    for (Vertex w : adj_[i]) {
      if (order_[i] < w) out.push_back({order_[i], w});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Graph Graph::relabeled_by_order() const {
  std::vector<Vertex> vs(order_.size());
  std::vector<Edge> es;
  es.reserve(edge_count_);
  for (std::size_t i = 0; i < order_.size(); ++i) {
    vs[i] = static_cast<Vertex>(i);
    for (Vertex w : adj_[i]) {
      auto j = index_.at(w);
      if (i < j) es.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
    }
  }
  return Graph(std::move(vs), es);
}

DenseAdjacency::DenseAdjacency(std::size_t n) : rows_(n, Bitset(n)) {}

DenseAdjacency::DenseAdjacency(const Graph& g) : DenseAdjacency(g.size()) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (Vertex w : g.neighbors(g.at(i))) rows_[i].set(g.position(w));
  }
}

void DenseAdjacency::add_edge(std::size_t a, std::size_t b) {
  rows_[a].set(b);
  rows_[b].set(a);
}

}  // namespace grs
