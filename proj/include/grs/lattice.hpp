#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grs/graph.hpp"
#include "grs/report.hpp"

namespace grs::lattice {

using Element = std::size_t;
using LeqPair = std::pair<Element, Element>;

/// A binary relation on 0..n-1 that is meant to be a partial order. Nothing
/// is checked on construction beyond the range of the pairs.
class Poset {
 public:
  Poset() = default;
  /// Throws InvalidInput if a pair leaves 0..n-1.
  Poset(std::size_t n, std::span<const LeqPair> leq);

  std::size_t size() const noexcept { return rows_.size(); }
  bool leq(Element x, Element y) const { return rows_.at(x).test(y); }
  bool less(Element x, Element y) const { return x != y && leq(x, y); }
  bool comparable(Element x, Element y) const { return leq(x, y) || leq(y, x); }
  /// Every related pair, ascending.
  std::vector<LeqPair> pairs() const;

  std::optional<Element> least() const;
  std::optional<Element> greatest() const;
  /// Non-bound x with nothing strictly between the least element and x.
  bool is_atom(Element x) const;
  bool is_coatom(Element x) const;

 private:
  std::vector<Bitset> rows_;  // rows_[x].test(y) iff x <= y
};

/// First violated axiom (reflexive, antisymmetric, transitive, bounds, meets,
/// joins), each with a witness tuple. Checks after the first failure are
/// still listed, marked as not checked.
CheckList validate_lattice(const Poset& p);

/// A validated finite lattice with meet and join tables.
class FiniteLattice {
 public:
  /// Throws InvalidInput naming the first failed axiom.
  static FiniteLattice from_poset(Poset p);
  static FiniteLattice from_pairs(std::size_t n, std::span<const LeqPair> leq) {
    return from_poset(Poset(n, leq));
  }

  const Poset& poset() const noexcept { return poset_; }
  std::size_t size() const noexcept { return poset_.size(); }
  bool leq(Element x, Element y) const { return poset_.leq(x, y); }
  bool less(Element x, Element y) const { return poset_.less(x, y); }
  bool comparable(Element x, Element y) const { return poset_.comparable(x, y); }
  Element meet(Element x, Element y) const { return meet_[x * size() + y]; }
  Element join(Element x, Element y) const { return join_[x * size() + y]; }
  Element bottom() const noexcept { return bottom_; }
  Element top() const noexcept { return top_; }
  bool is_bound(Element x) const noexcept { return x == bottom_ || x == top_; }
  bool is_atom(Element x) const { return poset_.is_atom(x); }
  bool is_coatom(Element x) const { return poset_.is_coatom(x); }

  /// Cover pairs (x, y), x covered by y, ascending.
  std::vector<LeqPair> covers() const;

 private:
  Poset poset_;
  std::vector<Element> meet_;
  std::vector<Element> join_;
  Element bottom_ = 0;
  Element top_ = 0;
};

/// Every element other than the bounds is an atom or a coatom.
bool check_length3(const FiniteLattice& lat);

/// Least (x, y, u, v) with atoms x < y and coatoms u < v such that x and y
/// both lie below u and v. Works on raw posets so that non-lattices can be
/// scanned; needs a least and a greatest element (InvalidInput otherwise).
std::optional<std::array<Element, 4>> check_no_double_cover(const Poset& p);
inline std::optional<std::array<Element, 4>> check_no_double_cover(const FiniteLattice& lat) {
  return check_no_double_cover(lat.poset());
}

/// F_0 = generators, F_{k+1} = all meets and joins over F_k, up to the fixpoint.
class RankTable {
 public:
  const std::vector<Element>& generators() const noexcept { return generators_; }
  /// levels()[k] = F_k, ascending; the last level is the whole lattice.
  const std::vector<std::vector<Element>>& levels() const noexcept { return levels_; }
  std::size_t rank(Element x) const { return rank_.at(x); }
  std::size_t max_rank() const noexcept { return levels_.size() - 1; }
  /// Largest element code of rank n: r(x) = n implies x <= rank_bound(n).
  /// Nullopt when no element has rank n.
  std::optional<Element> rank_bound(std::size_t n) const;

 private:
  friend RankTable closure_and_rank(const FiniteLattice& lat, std::span<const Element> generators);

  std::vector<Element> generators_;
  std::vector<std::vector<Element>> levels_;
  std::vector<std::size_t> rank_;
};

/// Throws InvalidInput for an empty or out-of-range generator list and
/// CoverageError, listing the unreached elements, if the closure stops short.
RankTable closure_and_rank(const FiniteLattice& lat, std::span<const Element> generators);

/// Sequences x_0, ..., x_n of non-bound elements with r(x_i) = i where each
/// x_i is x_{i-1} joined or met with some a of rank < i. Stored as a forest of
/// parent pointers, level by level, each level in lexicographic order.
class GenTree {
 public:
  struct Node {
    Element element = 0;
    std::size_t parent = 0;  // index into nodes(); unused at depth 0
    std::size_t depth = 0;
    Element via = 0;         // the a with x_i = x_{i-1} op a
    bool via_join = false;
  };

  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::size_t depth() const noexcept { return depth_; }
  /// The sequence ending at node i, root first.
  std::vector<Element> branch(std::size_t i) const;
  /// Indices of nodes with no children, deepest first, then lexicographic.
  std::vector<std::size_t> maximal_branches() const;
  std::size_t deepest_length() const;

 private:
  friend GenTree build_tree(const FiniteLattice& lat, const RankTable& ranks, std::size_t depth);

  std::vector<Node> nodes_;
  std::vector<std::size_t> level_start_;
  std::vector<bool> has_child_;
  std::size_t depth_ = 0;
};

inline constexpr std::size_t kMaxTreeNodes = 2'000'000;

/// Builds the tree down to the given depth (or until it stops growing) and
/// asserts (P1), (P2) and (P4) with check_tree_properties; throws
/// StructuralError naming the first failure, ResourceLimit past kMaxTreeNodes.
GenTree build_tree(const FiniteLattice& lat, const RankTable& ranks, std::size_t depth);

/// (P1) distinct, consecutive comparable, atoms and coatoms alternate (the
/// last part only for length-3 lattices);
/// (P2) every non-bound element of rank <= depth ends a node of that depth;
/// (P4) the node at depth i is at most rank_bound(i); plus the membership
/// rule itself.
CheckList check_tree_properties(const FiniteLattice& lat, const RankTable& ranks,
                                const GenTree& tree);

/// Largest odd n with n + 1 <= deepest branch length; 0 if there is none.
std::size_t structural_maximum(const GenTree& tree);

/// Graph on elems in the given order, joined when comparable. Throws
/// InvalidInput on repeats, bounds or out-of-range elements.
Graph comparability_graph(const FiniteLattice& lat, std::span<const Element> elems);

/// x_0 < x_1 > x_2 < x_3 ... with n = size-1 odd and no other comparability.
struct Fence {
  std::vector<Element> seq;
  std::vector<Element> branch;  // tree branch the fence was read from
  bool reversed = false;        // the chordless path started at a coatom

  std::size_t length() const noexcept { return seq.empty() ? 0 : seq.size() - 1; }
};

/// First violation of the fence shape in a full pairwise scan; nullopt if seq
/// is a fence. `dual` checks the order-dual shape x_0 > x_1 < x_2 ...
std::optional<std::string> fence_violation(const Poset& p, std::span<const Element> seq,
                                           bool dual = false);

/// Reads a fence of length target (odd) off the maximal tree branches, deepest
/// first: the comparability graph of a branch goes through the dichotomy with
/// target+1 vertices. Throws InvalidInput for an even target or a lattice that
/// is not length 3, InternalContradiction if a K22 shows up.
std::optional<Fence> find_fences(const FiniteLattice& lat, std::span<const Element> generators,
                                 std::size_t target);

/// Elements 0 (bottom), atoms 1..atoms, coatoms after them, top last; edges
/// are (atom index, coatom index) pairs, both 0-based. The result need not be
/// a lattice.
Poset length3_poset(std::size_t atoms, std::size_t coatoms,
                    std::span<const std::pair<std::size_t, std::size_t>> edges);

/// Fence x_0..x_n (n odd) with bounds: bottom 0, x_i = 1+i, top n+2.
FiniteLattice fence_lattice(std::size_t n);

struct GeneratedFence {
  FiniteLattice lattice;
  std::vector<Element> generators;
  std::vector<Element> fence;  // x_0..x_n
};

/// Fence x_0..x_n (n odd, n >= 3) plus one pendant helper per x_i (i >= 1): an atom
/// below it when x_i is a coatom, a coatom above it when x_i is an atom.
/// Generated by x_0 and the helpers, which puts x_i at rank i. Codes: bottom 0,
/// x_i = 1+i, helper of x_i = n+1+i, top 2n+2.
GeneratedFence generated_fence_lattice(std::size_t n);

/// Drops elements in the given order while the rest still generates.
std::vector<Element> minimal_generators(const FiniteLattice& lat, std::span<const Element> order);

}  // namespace grs::lattice
