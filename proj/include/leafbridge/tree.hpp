#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace leafbridge {

using NodeId = std::string;

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// Finite rooted tree given by a parent mapping over opaque node names.
///
/// Nodes are kept sorted by name, so node index order is the lexicographic
/// order of identifiers. Construction accepts shapes that are not trees
/// (several roots, cycles, unary nodes) so that validate_tree can report
/// them; the structural accessors (root, leq, depth) require a tree.
class RootedTree {
 public:
  RootedTree() = default;

  /// `parent` maps every non-root node to its father.
  static RootedTree from_parents(std::vector<NodeId> nodes,
                                 const std::map<NodeId, NodeId>& parent);
  static RootedTree from_children(const NodeId& root,
                                  const std::map<NodeId, std::vector<NodeId>>& children);
  static RootedTree single(NodeId node);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<NodeId>& names() const noexcept { return names_; }
  const NodeId& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> find(const NodeId& id) const;
  /// Throws InputError for an unknown identifier.
  std::size_t index(const NodeId& id) const;

  std::size_t parent(std::size_t i) const { return parent_.at(i); }
  const std::vector<std::size_t>& children(std::size_t i) const { return children_.at(i); }
  bool is_leaf(std::size_t i) const { return children_.at(i).empty(); }
  std::vector<std::size_t> leaves() const;
  std::vector<NodeId> leaf_names() const;

  /// True iff there is exactly one root and every node reaches it.
  bool is_tree() const noexcept { return tree_ok_; }
  std::size_t root() const;
  std::size_t depth(std::size_t i) const;
  std::size_t height() const;
  /// Ancestor-or-self relation x ≤ y.
  bool leq(std::size_t x, std::size_t y) const;

  /// Parent mapping by name, as accepted by from_parents.
  std::map<NodeId, NodeId> parent_map() const;

  /// Renames every node through `f`; the result must stay injective.
  RootedTree relabel(const std::function<NodeId(const NodeId&)>& f) const;

  friend bool operator==(const RootedTree& a, const RootedTree& b) {
    return a.names_ == b.names_ && a.parent_ == b.parent_;
  }

 private:
  void build(std::vector<NodeId> nodes, const std::map<NodeId, NodeId>& parent);

  std::vector<NodeId> names_;
  std::vector<std::size_t> parent_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::size_t> depth_;
  std::size_t root_ = npos;
  bool tree_ok_ = false;
};

struct Violation {
  NodeId node;
  std::string rule;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Checks that `t` is a finite leafy rooted tree. Violations are data.
ValidationReport validate_tree(const RootedTree& t);

/// Throws PreconditionError naming the first violation unless `t` is a leafy tree.
void require_leafy_tree(const RootedTree& t);

std::size_t join(const RootedTree& t, std::size_t x, std::size_t y);
NodeId join(const RootedTree& t, const NodeId& x, const NodeId& y);

std::vector<std::size_t> leaves_below(const RootedTree& t, std::size_t u);
std::vector<NodeId> leaves_below(const RootedTree& t, const NodeId& u);

/// Replaces leaves by trees. A replacing tree may contain the replaced leaf
/// as one of its own leaves, or be the single node of that name.
RootedTree substitute(const RootedTree& t, const std::map<NodeId, RootedTree>& sub);

struct Contraction {
  RootedTree tree;
  /// Representative leaf -> the subtree it stands for.
  std::map<NodeId, RootedTree> parts;
};

/// Contracts the subtree below each root of the antichain `roots` onto its
/// lexicographically least leaf. substitute(result.tree, result.parts) == s.
Contraction contract(const RootedTree& s, const std::vector<NodeId>& roots);

/// Subtree of `t` rooted at `u`.
RootedTree subtree(const RootedTree& t, std::size_t u);

/// Nodes {x⊔y | x,y ∈ X} with the order induced by `t`.
RootedTree join_closure(const RootedTree& t, const std::vector<NodeId>& xs);

enum class LabelMode {
  kLeafLabels,  ///< leaves compared by name, internal nodes anonymous
  kShape,       ///< all nodes anonymous
};

/// Bottom-up encoding with sorted child encodings; equal iff isomorphic.
std::string canonical_encoding(const RootedTree& t, LabelMode mode = LabelMode::kLeafLabels);
bool isomorphic(const RootedTree& a, const RootedTree& b, LabelMode mode = LabelMode::kLeafLabels);

/// Deterministic name for an internal node covering `leaves`: "[a,b,c]".
NodeId cluster_name(std::span<const NodeId> leaves);

/// Renames every internal node to the cluster name of its leaf set.
RootedTree with_cluster_names(const RootedTree& t);

// ---------------------------------------------------------------------------
// Laminar families

struct LaminarFamily {
  std::vector<NodeId> ground;
  std::vector<std::vector<NodeId>> members;
};

/// {Lf(u) | u a node}, each member sorted, members sorted.
LaminarFamily to_laminar(const RootedTree& t);
/// Members ordered by inclusion; throws InputError on overlapping members or
/// a missing singleton or ground set.
RootedTree from_laminar(const LaminarFamily& f);

// ---------------------------------------------------------------------------
// Enumeration

/// Calls `visit` once for every leafy rooted tree whose leaves are exactly
/// `labels` (internal nodes carry cluster names). Order is deterministic.
void for_each_leafy_tree(const std::vector<NodeId>& labels,
                         const std::function<void(const RootedTree&)>& visit);
std::vector<RootedTree> enumerate_leafy_trees(const std::vector<NodeId>& labels);

/// Uniform over insertion sequences (not over trees); deterministic given `rng`.
RootedTree random_leafy_tree(const std::vector<NodeId>& labels, std::mt19937_64& rng);

/// "a", "b", ..., "z", "l26", ... for n labels.
std::vector<NodeId> default_labels(std::size_t n);

}  // namespace leafbridge
