#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leafbridge/bits.hpp"
#include "leafbridge/gf2.hpp"
#include "leafbridge/quasi_tree.hpp"
#include "leafbridge/separation.hpp"

namespace leafbridge {

/// Undirected simple graph on at most 64 named vertices.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  /// Throws InputError on loops, repeated edges or unknown endpoints.
  static SimpleGraph from_edges(std::vector<NodeId> vertices,
                                const std::vector<std::pair<NodeId, NodeId>>& edges);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<NodeId>& names() const noexcept { return names_; }
  const NodeId& name(std::size_t i) const { return names_.at(i); }
  std::size_t index(const NodeId& id) const;
  bool adjacent(std::size_t u, std::size_t v) const noexcept { return has(adj_[u], v); }
  Mask neighbors(std::size_t u) const noexcept { return adj_[u]; }
  std::vector<std::pair<NodeId, NodeId>> edge_names() const;
  bool has_edges() const noexcept;

  /// M_G[rows, cols] with rows and columns in ascending index order.
  gf2::BitMatrix submatrix(Mask rows, Mask cols) const;
  /// Subgraph induced by `keep`.
  SimpleGraph induced(Mask keep) const;

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  std::vector<NodeId> names_;
  std::vector<Mask> adj_;
};

SimpleGraph complete_graph(std::size_t n);
SimpleGraph path_graph(std::size_t n);
SimpleGraph cycle_graph(std::size_t n);

/// Layouts are unrooted trees whose leaves are the vertices and whose other
/// nodes have degree 3.
using Layout = UnrootedTree;

bool is_cubic_layout(const Layout& t);
/// Throws PreconditionError unless t is cubic with leaf set = vertices of g.
void require_layout(const SimpleGraph& g, const Layout& t);

/// Bipartition of the layout's nodes at edge x-y: C_x = {z | z=x or Bzxy}.
struct Cut {
  std::size_t x = 0, y = 0;
  Mask cx = 0, cy = 0;
};
/// One cut per edge, in edge order.
std::vector<Cut> cuts_of_layout(const Layout& t);

/// Rank of M_G[V∩C_x, V∩C_y] for each cut, in cut order.
std::vector<std::size_t> cut_ranks(const SimpleGraph& g, const Layout& t);
/// Maximum cut rank (0 when there are no cuts).
std::size_t rwd_relative(const SimpleGraph& g, const Layout& t);

/// Calls visit once per cubic layout on `labels`; internal nodes are named
/// "#1", "#2", ... (primed when a label clashes). (2n-5)!! layouts for n ≥ 3.
void for_each_cubic_layout(const std::vector<NodeId>& labels,
                           const std::function<void(const Layout&)>& visit);

inline constexpr std::size_t kDefaultExactBound = 8;

struct RankWidth {
  std::size_t rwd = 0;
  Layout layout;
};
/// Exact minimum over all cubic layouts. Ties go to the least canonical
/// encoding. Throws PreconditionError beyond `bound` vertices or on an empty
/// graph.
RankWidth rank_width(const SimpleGraph& g, std::size_t bound = kDefaultExactBound);

/// Pairs (A,B) of disjoint leaf sets, |A|,|B| ≥ 2, with SAB, maximal under
/// inclusion. Leaf masks over ss's leaf order.
std::vector<std::pair<Mask, Mask>> maximal_separated_pairs(const SeparationStructure& ss);

/// Max rank of M_G[A,B] over maximal S-separated pairs of the layout, and 1
/// for the pendant cuts when g has an edge. Also spot-checks `spot_checks`
/// random sub-pairs for rank monotonicity (Error if violated).
std::size_t rwd_relative_via_S(const SimpleGraph& g, const Layout& t, std::uint64_t seed = 0,
                               std::size_t spot_checks = 8);

/// Edge x-y of t with A ⊆ C_x and B ⊆ C_y (leaf names), if any.
std::optional<std::pair<std::size_t, std::size_t>> separating_edge(const Layout& t,
                                                                   const std::vector<NodeId>& a,
                                                                   const std::vector<NodeId>& b);

/// rwd(G,Q) ≤ k for the layout Q described by ss. Throws PreconditionError
/// when the leaves differ from V, when E is non-empty (not cubic) or when ss
/// is not a separation structure.
bool check_rwd_leq(const SimpleGraph& g, const SeparationStructure& ss, std::size_t k);

}  // namespace leafbridge
