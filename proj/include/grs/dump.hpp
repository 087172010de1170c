#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "grs/graph.hpp"
#include "grs/pattern.hpp"
#include "grs/report.hpp"

namespace grs::dump {

using Natural = std::uint64_t;

/// Sorted neighbour lists indexed by vertex. Vertices are 0..k.
using AdjacencyLists = std::vector<std::vector<Vertex>>;

/// Inclusive vertex interval.
struct Block {
  Vertex first = 0;
  Vertex last = 0;

  std::size_t size() const noexcept { return last - first + 1; }
  bool contains(Vertex x) const noexcept { return first <= x && x <= last; }
  friend bool operator==(const Block&, const Block&) = default;
};

/// One stage seen through an adjacency that may extend past it. Edges are
/// never added between two vertices that already exist, so restricting a later
/// adjacency to 0..k reproduces this stage exactly.
class StageView {
 public:
  StageView(std::size_t stage, Vertex k, std::span<const Vertex> coding,
            const AdjacencyLists& adjacency)
      : stage_(stage), k_(k), coding_(coding), adj_(&adjacency) {}

  std::size_t stage() const noexcept { return stage_; }
  Vertex k() const noexcept { return k_; }
  std::span<const Vertex> coding() const noexcept { return coding_; }

  /// Blocks are recovered from the coding boundaries. Assumes a well-formed
  /// coding list (see well_formed()).
  std::size_t block_count() const noexcept { return coding_.size(); }
  Block block(std::size_t j) const;
  std::size_t block_of(Vertex x) const;
  std::vector<Block> blocks() const;

  bool is_coding(Vertex x) const;
  bool has_edge(Vertex x, Vertex y) const;
  /// Neighbours of x that exist at this stage, ascending.
  std::span<const Vertex> neighbors(Vertex x) const;
  std::size_t degree(Vertex x) const { return neighbors(x).size(); }

  /// Coding list has stage+1 entries, is strictly increasing and ends at k,
  /// and the adjacency covers 0..k.
  bool well_formed() const;

  /// Materialised graph on 0..k in natural order.
  Graph graph() const;

 private:
  std::size_t stage_;
  Vertex k_;
  std::span<const Vertex> coding_;
  const AdjacencyLists* adj_;
};

/// Stage s of the construction: vertices 0..k, blocks delimited by the coding
/// vertices c_{0,s} < ... < c_{s,s} = k.
class ConstructionState {
 public:
  /// Stage 0: the single vertex 0, which is its own block and coding vertex.
  static ConstructionState init();

  /// Assembles a state from raw parts without checking it; used to build
  /// adversarial inputs for the lemma checkers. Edges must lie within 0..k.
  static ConstructionState from_parts(std::size_t stage, Vertex k, std::vector<Vertex> coding,
                                      std::span<const Edge> edges);

  std::size_t stage() const noexcept { return stage_; }
  Vertex k() const noexcept { return k_; }
  const std::vector<Vertex>& coding() const noexcept { return coding_; }
  const AdjacencyLists& adjacency() const noexcept { return adj_; }

  StageView view() const { return StageView(stage_, k_, coding_, adj_); }
  std::vector<Block> blocks() const { return view().blocks(); }
  bool has_edge(Vertex x, Vertex y) const { return view().has_edge(x, y); }
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;
  Graph graph() const { return view().graph(); }

 private:
  friend ConstructionState advance(ConstructionState st, Natural n, std::vector<Edge>* added);

  std::size_t stage_ = 0;
  Vertex k_ = 0;
  std::vector<Vertex> coding_;
  AdjacencyLists adj_;
};

/// Performs one stage with n = f(s). A small n (n <= s) dumps blocks n..s into
/// block n under a fresh coding vertex and opens singleton blocks after it; a
/// large n only opens one new singleton block. New edges, if requested, are
/// appended to `added` sorted with u < v.
ConstructionState advance(ConstructionState st, Natural n, std::vector<Edge>* added = nullptr);

inline ConstructionState step(const ConstructionState& st, Natural n) { return advance(st, n); }

/// What changed at one stage, kept instead of full per-stage copies.
struct StageRecord {
  std::size_t stage = 0;
  Vertex k = 0;
  std::vector<Vertex> coding;
  std::vector<Edge> new_edges;
};

class StagedHistory {
 public:
  StagedHistory(std::vector<Natural> f, std::vector<StageRecord> records,
                ConstructionState final_state);

  /// Number of stages T; there are T+1 records, for stages 0..T.
  std::size_t stages() const noexcept { return records_.size() - 1; }
  const std::vector<Natural>& f() const noexcept { return f_; }
  const std::vector<StageRecord>& records() const noexcept { return records_; }
  const StageRecord& record(std::size_t s) const { return records_.at(s); }

  /// Stage s viewed through the final adjacency.
  StageView view(std::size_t s) const;
  /// Stage s rebuilt as a standalone state.
  ConstructionState state(std::size_t s) const;
  const ConstructionState& final_state() const noexcept { return final_; }
  const Graph& final_graph() const noexcept { return final_graph_; }

 private:
  std::vector<Natural> f_;
  std::vector<StageRecord> records_;
  ConstructionState final_;
  Graph final_graph_;
};

/// Runs T stages driven by f(0..T-1). Throws InvalidInput if f is too short
/// or repeats a value among the entries used.
StagedHistory run(std::span<const Natural> f, std::size_t stages);

/// Random permutation of 0..len-1 from a 64-bit Mersenne twister.
std::vector<Natural> seeded_permutation(std::uint64_t seed, std::size_t len);

/// Checks greatest, codeconnection, tracing, components and goup on one
/// stage, preceded by a "state" check of the coding list's shape.
CheckList check_stage_lemmas(const StageView& v);
inline CheckList check_stage_lemmas(const ConstructionState& st) {
  return check_stage_lemmas(st.view());
}

/// A chordless 4-path of the stage, if one exists (it never should).
std::optional<PathSeq> check_no_chordless4(const StageView& v);
inline std::optional<PathSeq> check_no_chordless4(const ConstructionState& st) {
  return check_no_chordless4(st.view());
}

/// First (s, k) with k <= s < T at which "c_{k,s+1} != c_{k,s} iff f(s) <= k"
/// fails, scanning s then k ascending.
std::optional<std::pair<std::size_t, std::size_t>> coding_change_violation(
    const StagedHistory& h);
inline bool coding_change_law(const StagedHistory& h) { return !coding_change_violation(h); }

/// Growth, restriction and coding monotonicity across stages, plus the coding
/// change law.
CheckList check_history(const StagedHistory& h);

/// The limit of c_{k,s}, treating h.f() as the complete input: index k exists
/// iff k <= T, and no later stage can move it.
std::optional<Vertex> stable_coding(const StagedHistory& h, std::size_t k);

/// Maps a_i to c_i and b_j to c_{k+j}. Throws CapacityError when fewer than
/// 2k stable coding vertices exist.
Embedding embed_via_coding(const StagedHistory& h, const Pattern& pattern);

/// An embedding into a constructed graph together with the running maximum of
/// its a-side images.
class DecodeContext {
 public:
  /// Throws InvalidContext if the embedding does not validate against host.
  static DecodeContext build(const Graph& host, Embedding embedding);

  const Embedding& embedding() const noexcept { return embedding_; }
  /// gprime()[n] = max of the images of a_0..a_n.
  const std::vector<Vertex>& gprime() const noexcept { return gprime_; }

 private:
  DecodeContext(Embedding e, std::vector<Vertex> g) : embedding_(std::move(e)), gprime_(std::move(g)) {}

  Embedding embedding_;
  std::vector<Vertex> gprime_;
};

/// Whether some x <= g'(k) has f(x) = k. When the a-side sits on stable
/// coding vertices in ascending order this decides k in range(f).
bool decode_range(const DecodeContext& ctx, std::span<const Natural> f, Natural k);

}  // namespace grs::dump
