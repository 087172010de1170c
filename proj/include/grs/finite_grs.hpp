#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "grs/graph.hpp"
#include "grs/pattern.hpp"

// Everything here works in "positions": indices into the host's stored
// (tracing) order. Witnesses handed back to callers use the host's vertex ids.
namespace grs::finite {

/// For every pair x < y of a traceable graph, the lexicographically least
/// shortest strictly increasing path from x to y. Such a path is chordless:
/// a chord would be a shortcut.
class IncreasingPathTable {
 public:
  /// Throws InvalidInput unless g is traceable in its stored order and has at
  /// least two vertices.
  static IncreasingPathTable build(const Graph& g);

  std::size_t size() const noexcept { return adj_.size(); }
  const Graph& host() const noexcept { return host_; }
  const DenseAdjacency& adjacency() const noexcept { return adj_; }
  Vertex label(std::size_t position) const { return host_.at(position); }

  /// Positions of the path from x to y (x < y).
  std::span<const std::size_t> path(std::size_t x, std::size_t y) const;
  /// N(x, y): number of edges on the path.
  std::size_t edges_on_path(std::size_t x, std::size_t y) const { return path(x, y).size() - 1; }
  /// a_i(x, y), for 0 <= i <= N(x, y).
  std::size_t vertex_on_path(std::size_t i, std::size_t x, std::size_t y) const {
    return path(x, y)[i];
  }
  std::size_t max_edges_on_path() const;

 private:
  Graph host_;
  DenseAdjacency adj_;
  std::vector<std::vector<std::size_t>> paths_;  // x * size + y
};

/// K_{i,j} or the residual colour K.
class Color {
 public:
  static Color pair(int i, int j) { return Color(i, j); }
  static Color residual() { return Color(-1, -1); }

  bool is_residual() const noexcept { return i_ < 0; }
  int i() const noexcept { return i_; }
  int j() const noexcept { return j_; }
  std::string name() const;

  auto operator<=>(const Color&) const = default;

 private:
  Color(int i, int j) : i_(i), j_(j) {}
  int i_;
  int j_;
};

/// Number of colours the proof uses for path parameter n: (n-1)^2 + 1.
std::size_t color_count(std::size_t n);

/// Colour of the ascending 4-tuple x < y < u < v: the lexicographically least
/// (i, j) with i <= min(n-2, N(x,y)), j <= min(n-2, N(u,v)) and an edge
/// a_i(x,y) - a_j(u,v); K if there is none. Requires n >= 2.
Color color_4subset(const IncreasingPathTable& t, std::size_t n,
                    std::array<std::size_t, 4> xyuv);

/// A colouring of all 4-subsets of {0, ..., size-1}.
class FourColoring {
 public:
  using Rule = std::function<Color(std::size_t, std::size_t, std::size_t, std::size_t)>;

  FourColoring(std::size_t vertex_count, const Rule& rule, std::size_t n = 0);
  static FourColoring from_table(const IncreasingPathTable& t, std::size_t n);

  std::size_t vertex_count() const noexcept { return size_; }
  /// Path parameter the colouring was built for; 0 for free-form colourings.
  std::size_t n() const noexcept { return n_; }
  /// Colour of {a, b, c, d}, given in any order.
  Color at(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const;
  /// Colour class sizes.
  std::map<Color, std::size_t> histogram() const;

 private:
  std::size_t size_;
  std::size_t n_;
  std::vector<Color> colors_;  // colex rank of the 4-subset
};

/// A subset all of whose 4-subsets share one colour.
struct HomogeneousCertificate {
  std::vector<std::size_t> subset;  // ascending positions
  Color color = Color::residual();
};

bool certificate_holds(const FourColoring& c, const HomogeneousCertificate& cert);

/// Lexicographically least ascending q-subset of `vertices` that is
/// homogeneous, optionally for one prescribed colour. Exact ordered
/// backtracking with colour-compatibility pruning. Throws InvalidInput for
/// q < 4.
std::optional<HomogeneousCertificate> find_homogeneous(const FourColoring& c,
                                                       std::span<const std::size_t> vertices,
                                                       std::size_t q,
                                                       std::optional<Color> only = std::nullopt);

/// Builds the K22 copy a_i(x1,x2), a_i(x3,x4) | a_j(x5,x6), a_j(x7,x8) from
/// the first eight certificate elements. Throws PreconditionError if the
/// colour is K or the subset is too small, ExtractionFailure if the images
/// collide or miss an edge.
Embedding extract_k22(const HomogeneousCertificate& cert, const IncreasingPathTable& t);

/// The greedy walk over the concatenated paths x_0 -> x_1 -> ... -> x_n.
struct GreedyTrace {
  std::vector<std::size_t> anchors;  // x_0..x_n
  std::vector<std::size_t> route;    // concatenated path, ascending
  std::vector<std::size_t> picks;    // y_0..y_{n-1}
  PathSeq path;                      // picks as host vertices

  /// y_i <= x_{i+1} for every pick.
  bool progress_bound_holds() const;
};

/// y_0 = x_0 and y_{i+1} = the greatest route vertex adjacent to y_i, until
/// n vertices are picked. Throws PreconditionError for a non-K certificate or
/// fewer than n+1 elements, ExtractionFailure if the route runs out.
GreedyTrace extract_chordless_traced(const HomogeneousCertificate& cert,
                                     const IncreasingPathTable& t, std::size_t n);
PathSeq extract_chordless(const HomogeneousCertificate& cert, const IncreasingPathTable& t,
                          std::size_t n);

struct Neither {
  friend bool operator==(const Neither&, const Neither&) = default;
};
using DichotomyWitness = std::variant<PathSeq, Embedding, Neither>;

enum class WitnessKind { chordless_path, k22_copy, neither };
WitnessKind kind_of(const DichotomyWitness& w);
std::string kind_name(WitnessKind k);

/// Chordless n-path if there is one, else a K22 copy, else Neither.
/// Throws InvalidInput if g is not traceable in its stored order.
DichotomyWitness dichotomy(const Graph& g, std::size_t n);
/// Same decision on a position-level adjacency; no witness.
WitnessKind dichotomy_kind(const DenseAdjacency& adj, std::size_t n);

/// Homogeneous-set size the proof asks for: max(n+1, 8).
inline std::size_t homogeneous_size(std::size_t n) { return n + 1 > 8 ? n + 1 : 8; }

struct SizeRow {
  std::size_t size = 0;
  std::uint64_t graphs = 0;
  std::uint64_t neither = 0;
  std::optional<Graph> example;  // first Neither graph in chord-mask order
};

struct MinMReport {
  std::size_t n = 0;
  std::vector<SizeRow> sizes;
  std::size_t largest_neither = 0;  // 0 when no size has a Neither graph

  std::size_t empirical_lower_bound() const { return largest_neither + 1; }
};

inline constexpr std::size_t kMaxEnumerationSize = 8;

/// The traceable graph on 0..size-1 with the Hamiltonian path plus the chords
/// selected by `mask`, chords ordered (i, j), j >= i+2, lexicographically.
Graph traceable_from_mask(std::size_t size, std::uint64_t mask);
std::size_t chord_count(std::size_t size);

/// Runs the dichotomy on every traceable graph of each size 1..size_bound.
/// Throws ResourceLimit above kMaxEnumerationSize.
MinMReport estimate_min_m(std::size_t n, std::size_t size_bound, std::size_t jobs = 1);

/// t_1(x) = x, t_k(x) = 2^{t_{k-1}(x)}; nullopt once it exceeds 64 bits.
std::optional<std::uint64_t> tower(std::size_t height, std::uint64_t x);

struct TowerBound {
  std::size_t height = 0;  // c * ceil(log2 n)
  std::optional<std::uint64_t> value;
  std::string expression;
};

TowerBound tower_bound(std::size_t n, std::size_t c = 1);

/// Everything the coloring route produced for one host.
struct PipelineTrace {
  std::size_t n = 0;
  std::size_t q = 0;
  std::size_t vertex_count = 0;
  std::optional<PathSeq> direct_path;  // chordless n-path found directly
  std::size_t max_edges_on_path = 0;
  bool edge_bound_holds = true;        // N(x,y) <= n-2, meaningful without direct_path
  std::map<Color, std::size_t> histogram;
  std::optional<HomogeneousCertificate> certificate;
  std::optional<Embedding> k22;
  std::optional<GreedyTrace> greedy;
  std::string outcome;                 // "k22", "chordless-path" or "no-homogeneous-set"
};

/// table -> colouring -> homogeneous set of size max(n+1, 8) -> extraction.
PipelineTrace run_pipeline(const Graph& g, std::size_t n);

}  // namespace grs::finite
