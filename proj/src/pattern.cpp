#include "grs/pattern.hpp"

#include <charconv>
#include <unordered_set>

#include "grs/error.hpp"

namespace grs {

namespace {

std::size_t parse_size(std::string_view text, std::string_view whole) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    throw InvalidInput("bad pattern size in '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Pattern Pattern::parse(std::string_view text) {
  if (text == "K22") return k22();
  if (text.starts_with("A:")) return a(parse_size(text.substr(2), text));
  if (text.starts_with("Kkk:")) return kkk(parse_size(text.substr(4), text));
  throw InvalidInput("unknown pattern '" + std::string(text) + "' (expected K22, A:k or Kkk:k)");
}

std::string Pattern::name() const {
  switch (family_) {
    case Family::k22:
      return "K22";
    case Family::a:
      return "A:" + std::to_string(k_);
    case Family::complete_bipartite:
      return "Kkk:" + std::to_string(k_);
  }
  return {};
}

std::string Pattern::vertex_label(std::size_t v) const {
  return v < k_ ? "a" + std::to_string(v) : "b" + std::to_string(v - k_);
}

Graph pattern_graph(const Pattern& p) {
  const std::size_t k = p.side();
  std::vector<Vertex> vs(2 * k);
  for (std::size_t i = 0; i < vs.size(); ++i) vs[i] = static_cast<Vertex>(i);
  std::vector<Edge> es;
  for (std::size_t n = 0; n < k; ++n) {
    for (std::size_t m = 0; m < k; ++m) {
      if (p.has_edge(n, m)) es.push_back({static_cast<Vertex>(n), static_cast<Vertex>(k + m)});
    }
  }
  return Graph(std::move(vs), es);
}

std::optional<std::string> embedding_violation(const Graph& host, const Embedding& e) {
  const std::size_t k = e.pattern.side();
  if (e.assignment.size() != 2 * k) {
    return "assignment has " + std::to_string(e.assignment.size()) + " images, pattern has " +
           std::to_string(2 * k) + " vertices";
  }
  std::unordered_set<Vertex> seen;
  for (std::size_t i = 0; i < e.assignment.size(); ++i) {
    Vertex v = e.assignment[i];
    if (!host.contains(v)) {
      return e.pattern.vertex_label(i) + " maps to " + std::to_string(v) + ", not a host vertex";
    }
    if (!seen.insert(v).second) return "host vertex " + std::to_string(v) + " is used twice";
  }
  for (std::size_t n = 0; n < k; ++n) {
    for (std::size_t m = 0; m < k; ++m) {
      if (e.pattern.has_edge(n, m) && !host.adjacent(e.a(n), e.b(m))) {
        return "missing host edge " + std::to_string(e.a(n)) + "-" + std::to_string(e.b(m)) +
               " for a" + std::to_string(n) + "-b" + std::to_string(m);
      }
    }
  }
  return std::nullopt;
}

}  // namespace grs
