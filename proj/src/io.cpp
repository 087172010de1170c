#include "grs/io.hpp"

#include <fstream>
#include <sstream>

#include "grs/error.hpp"

namespace grs::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

std::uint64_t natural(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw InvalidInput(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::pair<std::uint64_t, std::uint64_t> pair_of(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) {
    throw InvalidInput(std::string(what) + " entries must be [a, b] pairs");
  }
  return {natural(j[0], what), natural(j[1], what)};
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw InvalidInput(std::string("\"") + key + "\" must be an array");
  return a;
}

Vertex vertex(std::uint64_t v) {
  if (v > std::numeric_limits<Vertex>::max()) {
    throw InvalidInput("vertex id " + std::to_string(v) + " is too large");
  }
  return static_cast<Vertex>(v);
}

}  // namespace

Json graph_to_json(const Graph& g) {
  Json j;
  j["vertices"] = Json::array();
  for (Vertex v : g.vertices()) j["vertices"].push_back(v);
  j["edges"] = Json::array();
  for (const auto& e : g.edges()) j["edges"].push_back({e.u, e.v});
  return j;
}

Graph graph_from_json(const Json& j) {
  std::vector<Vertex> vs;
  for (const auto& v : array_field(j, "vertices")) vs.push_back(vertex(natural(v, "vertex")));
  std::vector<Edge> es;
  for (const auto& e : array_field(j, "edges")) {
    const auto [u, v] = pair_of(e, "edge");
    es.push_back({vertex(u), vertex(v)});
  }
  return Graph(std::move(vs), es);
}

LatticeFile lattice_from_json(const Json& j) {
  const auto n = natural(field(j, "n"), "n");
  std::vector<lattice::LeqPair> leq;
  for (const auto& p : array_field(j, "leq")) {
    const auto [x, y] = pair_of(p, "leq");
    leq.emplace_back(x, y);
  }
  LatticeFile out{lattice::Poset(n, leq), {}};
  if (j.contains("generators")) {
    for (const auto& g : array_field(j, "generators")) {
      out.generators.push_back(natural(g, "generator"));
    }
  }
  return out;
}

Json lattice_to_json(const lattice::Poset& p, const std::vector<lattice::Element>& generators) {
  Json j;
  j["n"] = p.size();
  j["leq"] = Json::array();
  for (auto [x, y] : p.pairs()) j["leq"].push_back({x, y});
  j["generators"] = generators;
  return j;
}

Json to_json(const PathSeq& p) { return Json(p.verts); }

Json to_json(const Embedding& e) {
  Json j;
  j["pattern"] = e.pattern.name();
  Json map = Json::object();
  for (std::size_t i = 0; i < e.assignment.size(); ++i) {
    map[e.pattern.vertex_label(i)] = e.assignment[i];
  }
  j["assignment"] = std::move(map);
  return j;
}

Json to_json(const CheckList& c) {
  Json out = Json::array();
  for (const auto& ch : c.checks) {
    Json j;
    j["name"] = ch.name;
    j["passed"] = ch.passed;
    if (!ch.witness.empty()) j["witness"] = ch.witness;
    if (!ch.note.empty()) j["note"] = ch.note;
    out.push_back(std::move(j));
  }
  return out;
}

std::string graph_dot(const Graph& g, const std::string& name) {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (Vertex v : g.vertices()) os << "  " << v << ";\n";
  for (const auto& e : g.edges()) os << "  " << e.u << " -- " << e.v << ";\n";
  os << "}\n";
  return os.str();
}

std::string pattern_dot(const Pattern& p) {
  const Graph g = pattern_graph(p);
  std::ostringstream os;
  os << "graph \"" << p.name() << "\" {\n";
  for (Vertex v : g.vertices()) {
    os << "  " << v << " [label=\"" << p.vertex_label(v) << "\"];\n";
  }
  for (const auto& e : g.edges()) os << "  " << e.u << " -- " << e.v << ";\n";
  os << "}\n";
  return os.str();
}

std::string hasse_dot(const lattice::FiniteLattice& lat, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=BT;\n";
  for (lattice::Element x = 0; x < lat.size(); ++x) os << "  " << x << ";\n";
  for (auto [x, y] : lat.covers()) os << "  " << x << " -> " << y << ";\n";
  os << "}\n";
  return os.str();
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw IoError("error while writing " + path.string());
}

Json read_json(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  write_text(path, j.dump(2) + "\n");
}

}  // namespace grs::io
