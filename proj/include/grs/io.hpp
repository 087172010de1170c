#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "grs/graph.hpp"
#include "grs/lattice.hpp"
#include "grs/pattern.hpp"
#include "grs/report.hpp"

namespace grs::io {

using Json = nlohmann::ordered_json;

/// {"vertices":[...],"edges":[[u,v],...]}, vertices in stored order and
/// edges in canonical order.
Json graph_to_json(const Graph& g);
/// Throws InvalidInput on a missing field or a value of the wrong type, and
/// whatever Graph's constructor throws.
Graph graph_from_json(const Json& j);

struct LatticeFile {
  lattice::Poset poset;
  std::vector<lattice::Element> generators;
};

/// {"n":N,"leq":[[x,y],...],"generators":[...]}. The relation is kept as
/// given; validation is the caller's job.
LatticeFile lattice_from_json(const Json& j);
Json lattice_to_json(const lattice::Poset& p, const std::vector<lattice::Element>& generators);

Json to_json(const PathSeq& p);
Json to_json(const Embedding& e);
/// [{"name":..,"passed":..,"witness":[..],"note":..}, ...]; empty fields
/// are left out.
Json to_json(const CheckList& c);

/// Undirected graph, vertices in stored order, edges canonical.
std::string graph_dot(const Graph& g, const std::string& name = "G");
/// The pattern's own graph with a#/b# labels.
std::string pattern_dot(const Pattern& p);
/// Hasse diagram: cover pairs only, drawn bottom to top.
std::string hasse_dot(const lattice::FiniteLattice& lat, const std::string& name = "L");

/// Throws IoError when the file cannot be read or written.
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Throws IoError for unreadable files and InvalidInput for bad JSON.
Json read_json(const std::filesystem::path& path);
/// Two-space indent and a trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace grs::io
