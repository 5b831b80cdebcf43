#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "leafbridge/bits.hpp"
#include "leafbridge/leaf_structure.hpp"
#include "leafbridge/quasi_tree.hpp"
#include "leafbridge/report.hpp"

namespace leafbridge {

using Quad = std::array<std::size_t, 4>;

/// Leaf set L (sorted, at most 64) with a 4-ary relation S; E is derived:
/// Exyzu iff x,y,z,u are distinct and none of Sxyzu, Sxzyu, Sxuyz holds.
class SeparationStructure {
 public:
  SeparationStructure() = default;
  explicit SeparationStructure(std::vector<NodeId> leaves);
  /// Loads generators and closes them under the S2 symmetries.
  static SeparationStructure from_tuples(std::vector<NodeId> leaves,
                                         const std::vector<std::array<NodeId, 4>>& tuples);

  std::size_t size() const noexcept { return leaves_.size(); }
  const std::vector<NodeId>& leaves() const noexcept { return leaves_; }
  const NodeId& name(std::size_t i) const { return leaves_.at(i); }
  std::optional<std::size_t> find(const NodeId& id) const;
  std::size_t index(const NodeId& id) const;

  bool S(std::size_t x, std::size_t y, std::size_t z, std::size_t u) const noexcept {
    return has(sep_[(x * n_ + y) * n_ + z], u);
  }
  bool E(std::size_t x, std::size_t y, std::size_t z, std::size_t u) const noexcept;
  /// {u | Sxyzu}
  Mask sep_mask(std::size_t x, std::size_t y, std::size_t z) const noexcept {
    return sep_[(x * n_ + y) * n_ + z];
  }
  /// Sets one tuple, no closure.
  void set(std::size_t x, std::size_t y, std::size_t z, std::size_t u, bool v = true) noexcept;
  /// Adds the eight images of every tuple under Sxyzu ⟺ Szuxy ⟺ Syxzu.
  void close_symmetric();

  std::vector<Quad> tuples() const;
  bool empty() const noexcept;
  /// S[X]
  SeparationStructure restrict_to(const std::vector<NodeId>& keep) const;

  friend bool operator==(const SeparationStructure&, const SeparationStructure&) = default;

 private:
  std::vector<NodeId> leaves_;
  std::size_t n_ = 0;
  std::vector<Mask> sep_;
};

/// Sxyzu iff [x,y] ∩ [z,u] = ∅, over the leaves of q. Throws
/// PreconditionError if q is not leafy.
SeparationStructure separation_structure(const QuasiTree& q);
/// Same relation without the leafiness check (partial or non-leafy inputs).
SeparationStructure separation_relation(const QuasiTree& q);

/// S1, S2, S3, S4, S''4, S5 and EQ. E is derived, so S'4 holds by
/// construction. EQ: the closure of the triple relation below relates no
/// two sets sharing two leaves that were not related directly.
AxiomReport check_S_axioms(const SeparationStructure& ss);
inline const std::vector<std::string> kSeparationAxioms = {"S1", "S2", "S3", "S4", "S5"};

/// Leaf-triple classes of the c54 construction, one per median. Sets
/// {x,y,z} and {x,y,w} are merged when Exyzw or Sxyzw; classes are the
/// closure of that relation.
struct TripleClasses {
  /// Index of the sorted triple x<y<z in `sets`.
  std::vector<std::array<std::size_t, 3>> sets;
  std::vector<std::size_t> class_of;
  std::size_t count = 0;
  /// First pair of sets sharing two leaves, same class, not directly related.
  std::optional<std::array<std::size_t, 2>> eq_failure;
};
TripleClasses triple_classes(const SeparationStructure& ss);

/// Leaf classes keep the leaf names; an internal class is named "[x,y,z]"
/// after its least triple. Throws PreconditionError if EQ fails, or if the
/// result is not a leafy quasi-tree whose separation structure is ss.
QuasiTree reconstruct_c54(const SeparationStructure& ss);

/// Roots at the least leaf r, builds the leaf structure of the remaining
/// join-tree (R'xyz iff not Sxryz), reconstructs it and re-attaches r.
/// Fewer than three leaves give the bare leaf set.
QuasiTree reconstruct_via_rooting(const SeparationStructure& ss);
/// R' on L - {r} as derived from ss.
LeafStructure rooted_leaf_structure(const SeparationStructure& ss, const NodeId& r);

struct Validity {
  bool valid = false;
  std::string reason;
};
/// Decides whether ss is the separation structure of a leafy quasi-tree.
Validity is_separation_structure(const SeparationStructure& ss);

/// SAB: Sxyzu for all distinct x,y in A and distinct z,u in B.
bool set_separation(const SeparationStructure& ss, const std::vector<NodeId>& a,
                    const std::vector<NodeId>& b);
/// EA: Exyzu for all distinct x,y,z,u in A.
bool set_E(const SeparationStructure& ss, const std::vector<NodeId>& a);

/// S_q[X] equals the separation structure of the leafy closure of X.
bool heredity_check(const QuasiTree& q, const std::vector<NodeId>& xs);

/// Reserved name of the synthesized star center (primed until unused).
inline const NodeId kCenterName = "*center";

/// Unique quasi-tree Q' with Q' -> partial, the same leaves and S_Q' = s.
///
/// The leafy core is rebuilt from s (a star when s is empty and there are at
/// least three leaves). Internal nodes of the partial structure are matched
/// to core nodes by the set of leaf pairs they lie between; a node matching
/// a core edge instead is kept as a subdivision of that edge. Cases: 1 when
/// s is non-empty, 2 when s is empty and B is not, 3 when both are empty.
/// Throws PreconditionError naming the case when no Q' exists.
QuasiTree complete_partial(const QuasiTree& partial, const SeparationStructure& s);
/// Same, with core = reconstruct_c54(s) already computed.
QuasiTree complete_partial(const QuasiTree& partial, const SeparationStructure& s,
                           const QuasiTree& core);

}  // namespace leafbridge
