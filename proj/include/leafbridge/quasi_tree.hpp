#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leafbridge/bits.hpp"
#include "leafbridge/report.hpp"
#include "leafbridge/tree.hpp"

namespace leafbridge {

/// Undirected tree on named nodes.
class UnrootedTree {
 public:
  UnrootedTree() = default;
  /// Throws InputError on unknown endpoints, loops, parallel edges, cycles or
  /// a disconnected graph.
  static UnrootedTree from_edges(std::vector<NodeId> nodes,
                                 const std::vector<std::pair<NodeId, NodeId>>& edges);
  /// Forgets the root.
  static UnrootedTree from_rooted(const RootedTree& t);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<NodeId>& names() const noexcept { return names_; }
  const NodeId& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> find(const NodeId& id) const;
  std::size_t index(const NodeId& id) const;
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return adj_.at(i); }
  std::size_t degree(std::size_t i) const { return adj_.at(i).size(); }
  /// Degree-one nodes; the sole node of a one-node tree also counts.
  std::vector<std::size_t> leaves() const;
  /// Edges (u,v) with u < v by index, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::vector<std::pair<NodeId, NodeId>> edge_names() const;

  /// Nodes on the path from u to v, both included, in order.
  std::vector<std::size_t> path(std::size_t u, std::size_t v) const;

  /// Same tree rooted at r, as a parent mapping.
  RootedTree rooted_at(std::size_t r) const;

  friend bool operator==(const UnrootedTree&, const UnrootedTree&) = default;

 private:
  std::vector<NodeId> names_;
  std::vector<std::vector<std::size_t>> adj_;
};

/// Leaf-labelled canonical form: leaves compared by name, other nodes
/// anonymous; rooted at the center (or the middle of the central edge).
std::string canonical_encoding(const UnrootedTree& t);

/// Ternary structure (N,B), at most 64 nodes, stored both orientations.
///
/// The index keeps, for each ordered pair of ends (x,z), the set of middles
/// {y | Bxyz}; an interval [x,z] is that set plus x and z.
class QuasiTree {
 public:
  QuasiTree() = default;
  /// Empty relation. Throws InputError on duplicates or more than 64 nodes.
  explicit QuasiTree(std::vector<NodeId> nodes);
  static QuasiTree from_triples(std::vector<NodeId> nodes,
                                const std::vector<std::array<NodeId, 3>>& triples);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<NodeId>& names() const noexcept { return names_; }
  const NodeId& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> find(const NodeId& id) const;
  std::size_t index(const NodeId& id) const;

  bool between(std::size_t x, std::size_t y, std::size_t z) const noexcept {
    return has(mid_[x * n_ + z], y);
  }
  /// Adds Bxyz only; callers close under B2 themselves.
  void set(std::size_t x, std::size_t y, std::size_t z, bool v = true) noexcept;
  /// {y | Bxyz}
  Mask middles(std::size_t x, std::size_t z) const noexcept { return mid_[x * n_ + z]; }
  /// [x,z] as a mask.
  Mask interval_mask(std::size_t x, std::size_t z) const noexcept {
    return mid_[x * n_ + z] | bit(x) | bit(z);
  }
  /// Axyz: one of x,y,z lies between the other two.
  bool aligned(std::size_t x, std::size_t y, std::size_t z) const noexcept {
    return between(x, y, z) || between(y, x, z) || between(x, z, y);
  }

  /// Nodes that are never a middle.
  Mask leaf_mask() const noexcept;
  std::vector<std::size_t> leaves() const { return bits_of(leaf_mask()); }
  std::vector<NodeId> leaf_names() const;
  std::vector<std::array<std::size_t, 3>> triples() const;
  bool empty() const noexcept;

  friend bool operator==(const QuasiTree&, const QuasiTree&) = default;

 private:
  std::vector<NodeId> names_;
  std::size_t n_ = 0;
  std::vector<Mask> mid_;
};

/// Bxyz iff x,y,z are distinct and y is on the x–z path.
QuasiTree betweenness_of_tree(const UnrootedTree& t);

enum class BMode { kFull, kPartial };

/// B1..B7 (full) or B1..B6 and B8 (partial).
AxiomReport check_B_axioms(const QuasiTree& q, BMode mode = BMode::kFull);
inline const std::vector<std::string> kQuasiTreeAxioms = {"B1", "B2", "B3", "B4", "B5", "B6", "B7"};
inline const std::vector<std::string> kPartialAxioms = {"B1", "B2", "B3", "B4", "B5", "B6", "B8"};

struct Median {
  enum class Kind { kMedian, kAligned, kNone };
  Kind kind = Kind::kNone;
  /// The median, or for kAligned the argument lying between the other two.
  std::size_t node = npos;
};

/// Requires pairwise distinct arguments (PreconditionError otherwise).
Median median(const QuasiTree& q, std::size_t x, std::size_t y, std::size_t z);
/// Throws PreconditionError when the median does not exist.
std::size_t median_node(const QuasiTree& q, std::size_t x, std::size_t y, std::size_t z);

std::vector<NodeId> interval(const QuasiTree& q, const NodeId& x, const NodeId& y);

/// Every internal node is M(x,y,z) for leaves x,y,z.
bool is_leafy(const QuasiTree& q);
/// B1..B7 and leafy.
bool is_leafy_quasi_tree(const QuasiTree& q);

/// (N, ≤r) with x ≤r y iff x = y or y = r or Bxyr.
RootedTree root_at(const QuasiTree& q, const NodeId& r);
/// Bxyz iff x,y,z distinct and y lies on the x–z path of t (so x < y ≤ x⊔z
/// or z < y ≤ x⊔z). Requires at least three nodes.
QuasiTree unroot(const RootedTree& t);

/// Restriction of B to `keep`.
QuasiTree induced(const QuasiTree& q, const std::vector<NodeId>& keep);
/// X plus the medians of its triples, as an induced structure. X must consist
/// of leaves of q.
QuasiTree leafy_closure(const QuasiTree& q, const std::vector<NodeId>& xs);

/// Tree whose edges are the pairs {x,y} with no node between them. Throws
/// PreconditionError if these pairs do not form a tree.
UnrootedTree underlying_tree(const QuasiTree& q);
/// Canonical form of underlying_tree(q).
std::string canonical_encoding(const QuasiTree& q);
bool isomorphic(const QuasiTree& a, const QuasiTree& b);

// ---------------------------------------------------------------------------
// Enumeration

/// Unrooted trees with leaves exactly `labels` and every other node of
/// degree at least 3, each once. Built from the rooted leafy trees on all
/// labels but the last, hanging the last label at the root.
void for_each_leafy_unrooted_tree(const std::vector<NodeId>& labels,
                                  const std::function<void(const UnrootedTree&)>& visit);

/// All labelled trees on the given nodes (Prüfer sequences).
void for_each_labelled_tree(const std::vector<NodeId>& nodes,
                            const std::function<void(const UnrootedTree&)>& visit);

}  // namespace leafbridge
