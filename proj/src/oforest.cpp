#include "leafbridge/oforest.hpp"

#include <algorithm>
#include <set>

#include "leafbridge/error.hpp"

namespace leafbridge {

OForest OForest::from_pairs(std::vector<NodeId> nodes,
                            const std::vector<std::pair<NodeId, NodeId>>& lt) {
  std::sort(nodes.begin(), nodes.end());
  if (auto it = std::adjacent_find(nodes.begin(), nodes.end()); it != nodes.end())
    throw InputError("duplicate node '" + *it + "'");
  OForest f;
  f.names_ = std::move(nodes);
  const std::size_t n = f.names_.size();
  f.lt_.assign(n, std::vector<bool>(n, false));
  for (const auto& [x, y] : lt) f.lt_[f.index(x)][f.index(y)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (f.lt_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (f.lt_[k][j]) f.lt_[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (f.lt_[i][i]) throw InputError("order has a cycle through '" + f.names_[i] + "'");
  return f;
}

OForest OForest::from_trees(const std::vector<RootedTree>& trees) {
  std::vector<NodeId> nodes;
  std::vector<std::pair<NodeId, NodeId>> lt;
  for (const auto& t : trees) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      nodes.push_back(t.name(i));
      if (t.parent(i) != npos) lt.emplace_back(t.name(i), t.name(t.parent(i)));
    }
  }
  return from_pairs(std::move(nodes), lt);
}

std::size_t OForest::index(const NodeId& id) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), id);
  if (it == names_.end() || *it != id) throw InputError("unknown node '" + id + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

std::vector<std::size_t> OForest::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < size(); ++y) {
    bool minimal = true;
    for (std::size_t x = 0; x < size(); ++x)
      if (lt_[x][y]) minimal = false;
    if (minimal) out.push_back(y);
  }
  return out;
}

std::vector<std::pair<NodeId, NodeId>> OForest::lt_pairs() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y = 0; y < size(); ++y)
      if (lt_[x][y]) out.emplace_back(names_[x], names_[y]);
  return out;
}

ValidationReport OForest::validate() const {
  ValidationReport report;
  const std::size_t n = size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = y + 1; z < n; ++z)
        if (lt_[x][y] && lt_[x][z] && !lt_[y][z] && !lt_[z][y]) {
          report.violations.push_back({names_[x], "hierarchical",
                                       "incomparable upper bounds " + names_[y] + " and " +
                                           names_[z] + " of " + names_[x]});
          return report;
        }
  // Lower covers per node.
  for (std::size_t y = 0; y < n; ++y) {
    std::size_t covers = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (!lt_[x][y]) continue;
      bool cover = true;
      for (std::size_t m = 0; m < n && cover; ++m)
        if (lt_[x][m] && lt_[m][y]) cover = false;
      covers += cover;
    }
    if (covers == 1)
      report.violations.push_back({names_[y], "leafy", "unique son at " + names_[y]});
  }
  return report;
}

std::vector<RootedTree> OForest::components() const {
  auto report = validate();
  if (!report.ok()) throw PreconditionError("invalid O-forest: " + report.violations[0].message);
  const std::size_t n = size();
  std::vector<std::size_t> parent(n, npos);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (lt_[x][y] && (parent[x] == npos || lt_[y][parent[x]])) parent[x] = y;
  std::map<std::size_t, std::vector<std::size_t>> members;
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t r = x;
    while (parent[r] != npos) r = parent[r];
    members[r].push_back(x);
  }
  std::vector<RootedTree> out;
  for (const auto& [r, xs] : members) {
    std::vector<NodeId> nodes;
    std::map<NodeId, NodeId> pm;
    for (auto x : xs) {
      nodes.push_back(names_[x]);
      if (parent[x] != npos) pm.emplace(names_[x], names_[parent[x]]);
    }
    out.push_back(RootedTree::from_parents(std::move(nodes), pm));
  }
  return out;
}

std::string canonical_encoding(const OForest& f) {
  std::vector<std::string> parts;
  for (const auto& t : f.components()) parts.push_back(canonical_encoding(t));
  std::sort(parts.begin(), parts.end());
  std::string s = "{";
  for (const auto& p : parts) s += p;
  return s + "}";
}

namespace {

// N≥(y,z) as a node membership vector.
std::vector<bool> upper_bounds(const OForest& f, std::size_t y, std::size_t z) {
  std::vector<bool> s(f.size(), false);
  for (std::size_t u = 0; u < f.size(); ++u) s[u] = f.leq(y, u) && f.leq(z, u);
  return s;
}

bool subset(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

}  // namespace

JoinCompletion join_completion(const OForest& f) {
  auto report = f.validate();
  if (!report.ok()) throw PreconditionError("invalid O-forest: " + report.violations[0].message);
  const auto L = f.leaves();
  std::vector<std::vector<bool>> sets;
  for (auto y : L)
    for (auto z : L) {
      auto s = upper_bounds(f, y, z);
      if (std::find(sets.begin(), sets.end(), s) == sets.end()) sets.push_back(std::move(s));
    }
  std::set<NodeId> taken(f.names().begin(), f.names().end());
  NodeId empty_name = "∅";
  while (taken.contains(empty_name)) empty_name += "'";

  auto name_of = [&](const std::vector<bool>& s) -> NodeId {
    // The least element of a nonempty upper-bound set lies below all others.
    for (std::size_t u = 0; u < f.size(); ++u) {
      if (!s[u]) continue;
      bool least = true;
      for (std::size_t v = 0; v < f.size(); ++v)
        if (s[v] && !f.leq(u, v)) least = false;
      if (least) return f.name(u);
    }
    return empty_name;
  };
  std::vector<NodeId> nodes;
  std::map<NodeId, NodeId> parent;
  for (std::size_t a = 0; a < sets.size(); ++a) {
    nodes.push_back(name_of(sets[a]));
    // Father: the largest proper subset.
    std::size_t best = npos;
    for (std::size_t b = 0; b < sets.size(); ++b)
      if (b != a && subset(sets[b], sets[a]) &&
          (best == npos || subset(sets[best], sets[b])))
        best = b;
    if (best != npos) parent.emplace(nodes.back(), name_of(sets[best]));
  }
  JoinCompletion out;
  out.tree = RootedTree::from_parents(std::move(nodes), parent);
  for (std::size_t x = 0; x < f.size(); ++x) out.embedding.emplace(f.name(x), name_of(upper_bounds(f, x, x)));
  return out;
}

ExtendedLeafStructure extended_structure(const OForest& f) {
  auto report = f.validate();
  if (!report.ok()) throw PreconditionError("invalid O-forest: " + report.violations[0].message);
  const auto L = f.leaves();
  std::vector<NodeId> names;
  for (auto x : L) names.push_back(f.name(x));
  ExtendedLeafStructure e{LeafStructure(names), {}};
  const std::size_t n = L.size();
  e.u.assign(n, std::vector<bool>(n, false));
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t z = 0; z < n; ++z) {
      const auto s = upper_bounds(f, L[y], L[z]);
      e.u[y][z] = std::find(s.begin(), s.end(), true) != s.end();
      // Rxyz: x lies below every element of N≥(y,z).
      for (std::size_t x = 0; x < n; ++x) {
        bool below_all = true;
        for (std::size_t u = 0; u < f.size(); ++u)
          if (s[u] && !f.leq(L[x], u)) below_all = false;
        if (below_all) e.ls.set(x, y, z);
      }
    }
  return e;
}

OForest reconstruct_forest(const ExtendedLeafStructure& e) {
  const auto q = quotient_tree(e.ls);
  const std::size_t n = e.ls.size();
  if (e.u.size() != n) throw InputError("U has the wrong size");
  std::vector<int> keep(q.tree.size(), -1);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (e.u[x].size() != n) throw InputError("U has the wrong size");
      int& k = keep[q.node(x, y)];
      const int v = e.u[x][y] ? 1 : 0;
      if (k != -1 && k != v)
        throw InputError("U is not constant on the class of (" + e.ls.name(x) + "," +
                         e.ls.name(y) + ")");
      k = v;
    }
  std::vector<NodeId> nodes;
  std::vector<std::pair<NodeId, NodeId>> lt;
  for (std::size_t u = 0; u < q.tree.size(); ++u) {
    if (keep[u] != 1) continue;
    nodes.push_back(q.tree.name(u));
    for (std::size_t v = q.tree.parent(u); v != npos; v = q.tree.parent(v))
      if (keep[v] == 1) lt.emplace_back(q.tree.name(u), q.tree.name(v));
  }
  return OForest::from_pairs(std::move(nodes), lt);
}

namespace {

void partitions(const std::vector<NodeId>& labels, std::size_t i,
                std::vector<std::vector<NodeId>>& blocks,
                const std::function<void(const std::vector<std::vector<NodeId>>&)>& visit) {
  if (i == labels.size()) {
    visit(blocks);
    return;
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b].push_back(labels[i]);
    partitions(labels, i + 1, blocks, visit);
    blocks[b].pop_back();
  }
  blocks.push_back({labels[i]});
  partitions(labels, i + 1, blocks, visit);
  blocks.pop_back();
}

void product(const std::vector<std::vector<NodeId>>& blocks, std::size_t i,
             std::vector<RootedTree>& chosen, const std::function<void(const OForest&)>& visit) {
  if (i == blocks.size()) {
    visit(OForest::from_trees(chosen));
    return;
  }
  for_each_leafy_tree(blocks[i], [&](const RootedTree& t) {
    chosen.push_back(t);
    product(blocks, i + 1, chosen, visit);
    chosen.pop_back();
  });
}

}  // namespace

void for_each_leafy_oforest(const std::vector<NodeId>& labels,
                            const std::function<void(const OForest&)>& visit) {
  std::vector<NodeId> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<NodeId>> blocks;
  partitions(sorted, 0, blocks, [&](const std::vector<std::vector<NodeId>>& bs) {
    std::vector<RootedTree> chosen;
    product(bs, 0, chosen, visit);
  });
}

}  // namespace leafbridge
