#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "grs/graph.hpp"
#include "grs/pattern.hpp"

namespace grs {

/// True iff p is a path of g whose only edges are between consecutive
/// entries. Throws InvalidInput if p repeats a vertex or leaves g.
bool is_chordless(const Graph& g, const PathSeq& p);

/// Lexicographically least (in stored vertex order) chordless path on exactly
/// n vertices. Throws InvalidInput for n == 0.
std::optional<PathSeq> find_chordless_path(const Graph& g, std::size_t n);

/// Lexicographically least embedding, comparing assignments a_0, ..., a_{k-1},
/// b_0, ..., b_{k-1} by host position. A pattern larger than the host simply
/// has no embedding.
std::optional<Embedding> find_embedding(const Graph& g, const Pattern& pattern);

/// True iff consecutive vertices of the stored order are adjacent.
bool check_traceable(const Graph& g);

// Position-level cores shared with the enumeration code, which builds
// DenseAdjacency directly. Results are positions, not vertex ids.
std::optional<std::vector<std::size_t>> find_chordless_path(const DenseAdjacency& adj,
                                                            std::size_t n);
std::optional<std::vector<std::size_t>> find_embedding(const DenseAdjacency& adj,
                                                       const Pattern& pattern);

}  // namespace grs
