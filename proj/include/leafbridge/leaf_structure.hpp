#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "leafbridge/bits.hpp"
#include "leafbridge/report.hpp"
#include "leafbridge/tree.hpp"

namespace leafbridge {

using Triple = std::array<std::size_t, 3>;

/// Leaf set L (sorted, at most 64 elements) with a ternary relation R.
///
/// Stored as one mask per ordered pair (y,z): the set {x | Rxyz}, which for
/// the structure of a tree is Lf(y⊔z).
class LeafStructure {
 public:
  LeafStructure() = default;
  /// Empty relation. Throws InputError on duplicates or more than 64 leaves.
  explicit LeafStructure(std::vector<NodeId> leaves);
  static LeafStructure from_triples(std::vector<NodeId> leaves,
                                    const std::vector<std::array<NodeId, 3>>& triples);

  std::size_t size() const noexcept { return leaves_.size(); }
  const std::vector<NodeId>& leaves() const noexcept { return leaves_; }
  const NodeId& name(std::size_t i) const { return leaves_.at(i); }
  std::optional<std::size_t> find(const NodeId& id) const;
  std::size_t index(const NodeId& id) const;

  bool holds(std::size_t x, std::size_t y, std::size_t z) const noexcept {
    return has(in_[y * n_ + z], x);
  }
  void set(std::size_t x, std::size_t y, std::size_t z, bool v = true) noexcept;
  /// {x | Rxyz}
  Mask middle(std::size_t y, std::size_t z) const noexcept { return in_[y * n_ + z]; }

  /// All triples (x,y,z) with Rxyz, lexicographic.
  std::vector<Triple> triples() const;
  std::size_t triple_count() const;

  /// Adds Rxxy, Rxyx and the A2 mirror of every triple.
  void close_a1_a2();

  /// Restriction to the leaves in `keep` (R[X]).
  LeafStructure induced(const std::vector<NodeId>& keep) const;

  friend bool operator==(const LeafStructure&, const LeafStructure&) = default;

 private:
  std::vector<NodeId> leaves_;
  std::size_t n_ = 0;
  std::vector<Mask> in_;
};

/// Rxyz iff x ≤ y⊔z. Throws PreconditionError unless t is a leafy tree.
LeafStructure leaf_structure(const RootedTree& t);

inline const std::vector<std::string> kLeafAxiomsCore = {"A1", "A2", "A3", "A4", "A5"};
inline const std::vector<std::string> kLeafAxiomsDerived = {"A6", "A7", "A8", "A9", "A10"};

/// A1..A10, each with a counterexample on failure. A10 is checked as
/// R0xyz ⊕ R1xyz ⊕ R1yzx ⊕ R1zxy (the terms are pairwise exclusive, so this
/// is "exactly one"); the variant with R1yxz repeats R1xyz under A2.
AxiomReport check_axioms(const LeafStructure& ls);

/// False iff A1..A5 all pass while one of A6..A10 fails.
bool derivations_consistent(const AxiomReport& report);

/// Throws AxiomViolation on the first failing axiom of A1..A5.
void require_leaf_axioms(const LeafStructure& ls);

/// Quotient (L×L,⊑)/≡ as a rooted tree, with the class of every pair.
struct QuotientTree {
  RootedTree tree;
  std::size_t n = 0;
  /// Tree node index of [xy], at x*n+y.
  std::vector<std::size_t> class_of;
  /// Least pair of each tree node, by node index.
  std::vector<std::pair<std::size_t, std::size_t>> representative;

  std::size_t node(std::size_t x, std::size_t y) const { return class_of[x * n + y]; }
};

/// Leaves keep their names; an internal class is named "[x,y]" after its
/// least pair. Requires A1..A5.
QuotientTree quotient_tree(const LeafStructure& ls);
RootedTree reconstruct_quotient(const LeafStructure& ls);

/// Depth of x⊔y in the reconstructed tree (root at 0).
std::size_t join_depth(const LeafStructure& ls, const NodeId& x, const NodeId& y);
/// x⊔y is a son of z⊔u.
bool is_son(const LeafStructure& ls, const NodeId& x, const NodeId& y, const NodeId& z,
            const NodeId& u);
bool is_root(const LeafStructure& ls, const NodeId& x, const NodeId& y);

}  // namespace leafbridge
