#pragma once

#include <map>
#include <optional>
#include <vector>

#include "leafbridge/leaf_structure.hpp"
#include "leafbridge/tree.hpp"

namespace leafbridge {

/// Leaf weights in {0,1,2}; a set weighs the sum of its members mod 3.
struct WeightAssignment {
  std::map<NodeId, int> sigma;
};

/// Throws InputError for a leaf outside the domain of σ.
int weight_of_set(const WeightAssignment& w, const std::vector<NodeId>& ys);
/// σ(Lf(u)).
int node_weight(const RootedTree& t, const WeightAssignment& w, std::size_t u);

struct GoodCheck {
  bool good = false;
  /// internal node -> its unique heaviest son; filled only when good.
  std::map<NodeId, NodeId> son;
  /// First internal node with a tie at the top, when not good.
  std::optional<NodeId> tie_at;
};

GoodCheck is_good(const RootedTree& t, const WeightAssignment& w);

/// A good σ with σ(root) = i whose σ-sons are the preferred ones. For target 0
/// the second son is the least non-preferred child.
WeightAssignment build_good_weights(const RootedTree& t,
                                    const std::map<NodeId, NodeId>& preferred, int i);

struct WeightPair {
  WeightAssignment sigma;
  WeightAssignment sigma_prime;
  std::map<NodeId, NodeId> son;
  std::map<NodeId, NodeId> son_prime;
};

/// σ prefers the least child, σ′ the least child other than the σ-son; both
/// with root weight 0. Requires a leafy tree with at least two leaves.
WeightPair build_weight_pair(const RootedTree& t);

/// One σ-step from u, then σ′-steps down to a leaf.
NodeId rep(const RootedTree& t, const WeightPair& p, const NodeId& u);
std::map<NodeId, NodeId> rep_table(const RootedTree& t, const WeightPair& p);

/// Leaves u1..u(p-1) with z⊔u1 the σ-son of u and each later z⊔ui the σ′-son
/// of the previous one, where z = Rep(u). Empty when the σ-son is a leaf.
std::vector<NodeId> rep_chain_witnesses(const RootedTree& t, const WeightPair& p,
                                        const NodeId& u);

struct RepReconstruction {
  /// Leaves "(x,1)", internal nodes "(w,2)" with w = Rep of the node.
  RootedTree tree;
  /// Internal node of the quotient tree -> representing leaf.
  std::map<NodeId, NodeId> rep;
};

/// Requires A1..A5.
RepReconstruction reconstruct_rep(const LeafStructure& ls);

NodeId pair_name(const NodeId& x, int k);

}  // namespace leafbridge
