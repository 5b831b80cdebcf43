#include "leafbridge/weights.hpp"

#include <algorithm>

#include "leafbridge/error.hpp"

namespace leafbridge {

int weight_of_set(const WeightAssignment& w, const std::vector<NodeId>& ys) {
  int s = 0;
  for (const auto& y : ys) {
    auto it = w.sigma.find(y);
    if (it == w.sigma.end()) throw InputError("no weight for leaf '" + y + "'");
    s += it->second;
  }
  return s % 3;
}

int node_weight(const RootedTree& t, const WeightAssignment& w, std::size_t u) {
  std::vector<NodeId> ys;
  for (auto l : leaves_below(t, u)) ys.push_back(t.name(l));
  return weight_of_set(w, ys);
}

GoodCheck is_good(const RootedTree& t, const WeightAssignment& w) {
  GoodCheck out;
  std::vector<int> weight(t.size());
  for (std::size_t u = 0; u < t.size(); ++u) weight[u] = node_weight(t, w, u);
  for (std::size_t u = 0; u < t.size(); ++u) {
    if (t.is_leaf(u)) continue;
    int best = -1;
    std::size_t who = npos, ties = 0;
    for (auto c : t.children(u)) {
      if (weight[c] > best) {
        best = weight[c];
        who = c;
        ties = 1;
      } else if (weight[c] == best) {
        ++ties;
      }
    }
    if (ties != 1) {
      out.son.clear();
      out.tie_at = t.name(u);
      return out;
    }
    out.son.emplace(t.name(u), t.name(who));
  }
  out.good = true;
  return out;
}

namespace {

void assign(const RootedTree& t, std::size_t u, int target,
            const std::vector<std::size_t>& pref, WeightAssignment& w) {
  if (t.is_leaf(u)) {
    w.sigma[t.name(u)] = target;
    return;
  }
  const std::size_t b1 = pref[u];
  std::size_t b2 = npos;
  for (auto c : t.children(u))
    if (c != b1) {
      b2 = c;
      break;
    }
  for (auto c : t.children(u)) {
    int v = 0;
    if (c == b1) v = target == 1 ? 1 : 2;
    else if (c == b2 && target == 0) v = 1;
    assign(t, c, v, pref, w);
  }
}

std::vector<std::size_t> resolve_preferred(const RootedTree& t,
                                           const std::map<NodeId, NodeId>& preferred) {
  std::vector<std::size_t> pref(t.size(), npos);
  for (const auto& [u, c] : preferred) {
    const auto ui = t.index(u);
    const auto ci = t.index(c);
    if (t.parent(ci) != ui)
      throw PreconditionError("preferred son '" + c + "' is not a child of '" + u + "'");
    pref[ui] = ci;
  }
  for (std::size_t u = 0; u < t.size(); ++u)
    if (!t.is_leaf(u) && pref[u] == npos)
      throw PreconditionError("no preferred son for '" + t.name(u) + "'");
  return pref;
}

}  // namespace

WeightAssignment build_good_weights(const RootedTree& t,
                                    const std::map<NodeId, NodeId>& preferred, int i) {
  if (i < 0 || i > 2) throw PreconditionError("root weight must be 0, 1 or 2");
  require_leafy_tree(t);
  const auto pref = resolve_preferred(t, preferred);
  WeightAssignment w;
  assign(t, t.root(), i, pref, w);
  return w;
}

WeightPair build_weight_pair(const RootedTree& t) {
  require_leafy_tree(t);
  if (t.leaves().size() < 2) throw PreconditionError("weight pair needs at least two leaves");
  std::map<NodeId, NodeId> first, second;
  for (std::size_t u = 0; u < t.size(); ++u) {
    if (t.is_leaf(u)) continue;
    const auto& kids = t.children(u);
    const std::size_t a = *std::min_element(kids.begin(), kids.end());
    std::size_t b = npos;
    for (auto c : kids)
      if (c != a && (b == npos || c < b)) b = c;
    first.emplace(t.name(u), t.name(a));
    second.emplace(t.name(u), t.name(b));
  }
  WeightPair p;
  p.sigma = build_good_weights(t, first, 0);
  p.sigma_prime = build_good_weights(t, second, 0);
  p.son = is_good(t, p.sigma).son;
  p.son_prime = is_good(t, p.sigma_prime).son;
  return p;
}

NodeId rep(const RootedTree& t, const WeightPair& p, const NodeId& u) {
  if (t.is_leaf(t.index(u))) throw PreconditionError("rep of leaf '" + u + "'");
  NodeId a = p.son.at(u);
  std::size_t steps = 0;
  while (!t.is_leaf(t.index(a))) {
    a = p.son_prime.at(a);
    if (++steps > t.size()) throw PreconditionError("σ′ walk does not terminate");
  }
  return a;
}

std::map<NodeId, NodeId> rep_table(const RootedTree& t, const WeightPair& p) {
  std::map<NodeId, NodeId> out;
  for (std::size_t u = 0; u < t.size(); ++u)
    if (!t.is_leaf(u)) out.emplace(t.name(u), rep(t, p, t.name(u)));
  return out;
}

std::vector<NodeId> rep_chain_witnesses(const RootedTree& t, const WeightPair& p,
                                        const NodeId& u) {
  const NodeId z = rep(t, p, u);
  std::vector<NodeId> chain;  // a1 .. a(p-1), the internal nodes of the walk
  for (NodeId a = p.son.at(u); !t.is_leaf(t.index(a)); a = p.son_prime.at(a)) chain.push_back(a);
  std::vector<NodeId> out;
  for (const auto& a : chain) {
    // A leaf below a but outside the σ′-son's subtree joins z exactly at a.
    const auto next = t.index(p.son_prime.at(a));
    for (auto l : leaves_below(t, t.index(a)))
      if (!t.leq(l, next)) {
        out.push_back(t.name(l));
        break;
      }
  }
  return out;
}

NodeId pair_name(const NodeId& x, int k) { return "(" + x + "," + std::to_string(k) + ")"; }

RepReconstruction reconstruct_rep(const LeafStructure& ls) {
  // Lf(x⊔y) = {z | Rzxy}; the quotient identifies equal leaf sets.
  const auto q = quotient_tree(ls);
  const RootedTree& t = q.tree;
  RepReconstruction out;
  if (t.size() == 1) {
    out.tree = RootedTree::single(pair_name(t.name(0), 1));
    return out;
  }
  const auto pair = build_weight_pair(t);
  out.rep = rep_table(t, pair);
  out.tree = t.relabel([&](const NodeId& v) {
    auto it = out.rep.find(v);
    return it == out.rep.end() ? pair_name(v, 1) : pair_name(it->second, 2);
  });
  return out;
}

}  // namespace leafbridge
