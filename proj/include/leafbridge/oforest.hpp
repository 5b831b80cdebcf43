#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "leafbridge/leaf_structure.hpp"
#include "leafbridge/tree.hpp"

namespace leafbridge {

/// Finite O-forest: a strict partial order on named nodes, leaves minimal.
class OForest {
 public:
  OForest() = default;
  /// `lt` holds pairs (x,y) meaning x < y; the transitive closure is taken.
  /// Throws InputError on unknown nodes or a cycle.
  static OForest from_pairs(std::vector<NodeId> nodes,
                            const std::vector<std::pair<NodeId, NodeId>>& lt);
  /// Disjoint union of trees. Throws InputError on shared identifiers.
  static OForest from_trees(const std::vector<RootedTree>& trees);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<NodeId>& names() const noexcept { return names_; }
  const NodeId& name(std::size_t i) const { return names_.at(i); }
  std::size_t index(const NodeId& id) const;
  bool less(std::size_t x, std::size_t y) const { return lt_[x][y]; }
  bool leq(std::size_t x, std::size_t y) const { return x == y || lt_[x][y]; }

  /// Minimal nodes.
  std::vector<std::size_t> leaves() const;
  /// Closed order as pairs (x,y), x < y, sorted.
  std::vector<std::pair<NodeId, NodeId>> lt_pairs() const;

  /// Checks hierarchy (upper bounds of a node form a chain) and leafiness.
  ValidationReport validate() const;

  /// One rooted tree per component. Requires a valid forest.
  std::vector<RootedTree> components() const;

 private:
  std::vector<NodeId> names_;
  std::vector<std::vector<bool>> lt_;
};

/// Forest up to isomorphism (leaf labels kept).
std::string canonical_encoding(const OForest& f);

struct JoinCompletion {
  RootedTree tree;
  /// x -> node of `tree` standing for N≥(x).
  std::map<NodeId, NodeId> embedding;
};

/// Nodes are the distinct sets N≥(y,z) over leaves y,z, ordered by reverse
/// inclusion. A nonempty set is named after its least element; the empty set,
/// present iff f has several components, becomes the root "∅".
JoinCompletion join_completion(const OForest& f);

struct ExtendedLeafStructure {
  LeafStructure ls;
  /// U[x][y]: x⊔y exists.
  std::vector<std::vector<bool>> u;
};

ExtendedLeafStructure extended_structure(const OForest& f);

/// Builds the quotient tree of (L,R) and drops the classes [xy] with ¬Uxy.
/// Throws InputError if U is not constant on a class.
OForest reconstruct_forest(const ExtendedLeafStructure& e);

/// Every leafy O-forest whose leaves are exactly `labels`, each once.
void for_each_leafy_oforest(const std::vector<NodeId>& labels,
                            const std::function<void(const OForest&)>& visit);

}  // namespace leafbridge
