#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "grs/graph.hpp"

namespace testing_helpers {

// Graph on 0..n-1 in natural order.
inline grs::Graph graph_of(std::size_t n, std::initializer_list<std::pair<int, int>> edges) {
  std::vector<grs::Vertex> vs(n);
  for (std::size_t i = 0; i < n; ++i) vs[i] = static_cast<grs::Vertex>(i);
  std::vector<grs::Edge> es;
  for (auto [u, v] : edges) es.push_back({static_cast<grs::Vertex>(u), static_cast<grs::Vertex>(v)});
  return grs::Graph(vs, es);
}

inline grs::PathSeq path_of(std::initializer_list<grs::Vertex> vs) { return grs::PathSeq{vs}; }

}  // namespace testing_helpers
