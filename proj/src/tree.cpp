#include "leafbridge/tree.hpp"

#include <algorithm>
#include <set>

#include "leafbridge/error.hpp"

namespace leafbridge {

// ---------------------------------------------------------------------------
// RootedTree

void RootedTree::build(std::vector<NodeId> nodes, const std::map<NodeId, NodeId>& parent) {
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
    throw InputError("duplicate node identifier '" +
                     *std::adjacent_find(nodes.begin(), nodes.end()) + "'");
  names_ = std::move(nodes);
  const std::size_t n = names_.size();
  parent_.assign(n, npos);
  children_.assign(n, {});
  for (const auto& [child, father] : parent) {
    const std::size_t c = index(child);
    const std::size_t f = index(father);
    parent_[c] = f;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (parent_[i] != npos) children_[parent_[i]].push_back(i);

  root_ = npos;
  tree_ok_ = false;
  depth_.assign(n, npos);
  std::size_t roots = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (parent_[i] == npos) {
      ++roots;
      root_ = i;
    }
  if (roots != 1) {
    root_ = npos;
    return;
  }
  std::vector<std::size_t> stack{root_};
  depth_[root_] = 0;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    ++reached;
    for (std::size_t c : children_[u]) {
      depth_[c] = depth_[u] + 1;
      stack.push_back(c);
    }
  }
  tree_ok_ = reached == n;
}

RootedTree RootedTree::from_parents(std::vector<NodeId> nodes,
                                    const std::map<NodeId, NodeId>& parent) {
  RootedTree t;
  t.build(std::move(nodes), parent);
  return t;
}

RootedTree RootedTree::from_children(const NodeId& root,
                                     const std::map<NodeId, std::vector<NodeId>>& children) {
  std::set<NodeId> nodes{root};
  std::map<NodeId, NodeId> parent;
  for (const auto& [u, kids] : children) {
    nodes.insert(u);
    for (const auto& k : kids) {
      nodes.insert(k);
      if (!parent.emplace(k, u).second)
        throw InputError("node '" + k + "' listed under two parents");
    }
  }
  if (parent.contains(root)) throw InputError("root '" + root + "' has a parent");
  RootedTree t;
  t.build({nodes.begin(), nodes.end()}, parent);
  return t;
}

RootedTree RootedTree::single(NodeId node) {
  return from_parents({std::move(node)}, {});
}

std::optional<std::size_t> RootedTree::find(const NodeId& id) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), id);
  if (it == names_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t RootedTree::index(const NodeId& id) const {
  if (auto i = find(id)) return *i;
  throw InputError("unknown node '" + id + "'");
}

std::vector<std::size_t> RootedTree::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (children_[i].empty()) out.push_back(i);
  return out;
}

std::vector<NodeId> RootedTree::leaf_names() const {
  std::vector<NodeId> out;
  for (std::size_t i : leaves()) out.push_back(names_[i]);
  return out;
}

std::size_t RootedTree::root() const {
  if (!tree_ok_) throw PreconditionError("not a rooted tree");
  return root_;
}

std::size_t RootedTree::depth(std::size_t i) const {
  if (!tree_ok_) throw PreconditionError("not a rooted tree");
  return depth_.at(i);
}

std::size_t RootedTree::height() const {
  if (!tree_ok_) throw PreconditionError("not a rooted tree");
  return *std::max_element(depth_.begin(), depth_.end());
}

bool RootedTree::leq(std::size_t x, std::size_t y) const {
  if (!tree_ok_) throw PreconditionError("not a rooted tree");
  while (depth_[x] > depth_[y]) x = parent_[x];
  return x == y;
}

std::map<NodeId, NodeId> RootedTree::parent_map() const {
  std::map<NodeId, NodeId> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (parent_[i] != npos) out.emplace(names_[i], names_[parent_[i]]);
  return out;
}

RootedTree RootedTree::relabel(const std::function<NodeId(const NodeId&)>& f) const {
  std::vector<NodeId> nodes;
  std::map<NodeId, NodeId> parent;
  for (std::size_t i = 0; i < size(); ++i) {
    nodes.push_back(f(names_[i]));
    if (parent_[i] != npos) parent.emplace(f(names_[i]), f(names_[parent_[i]]));
  }
  return from_parents(std::move(nodes), parent);
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate_tree(const RootedTree& t) {
  ValidationReport report;
  if (t.size() == 0) {
    report.violations.push_back({"", "nonempty", "tree has no nodes"});
    return report;
  }
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t.parent(i) == npos) roots.push_back(i);
  if (roots.empty()) report.violations.push_back({"", "single root", "no root (cycle)"});
  for (std::size_t k = 1; k < roots.size(); ++k)
    report.violations.push_back(
        {t.name(roots[k]), "single root", "second root " + t.name(roots[k])});
  if (roots.size() == 1 && !t.is_tree()) {
    // Nodes not reachable from the root sit on a parent cycle.
    std::vector<bool> seen(t.size(), false);
    std::vector<std::size_t> stack{roots[0]};
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      seen[u] = true;
      for (auto c : t.children(u)) stack.push_back(c);
    }
    for (std::size_t i = 0; i < t.size(); ++i)
      if (!seen[i])
        report.violations.push_back({t.name(i), "acyclic", "cycle through " + t.name(i)});
  }
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t.children(i).size() == 1)
      report.violations.push_back({t.name(i), "leafy", "unique son at " + t.name(i)});
  return report;
}

void require_leafy_tree(const RootedTree& t) {
  auto report = validate_tree(t);
  if (!report.ok())
    throw PreconditionError("invalid tree: " + report.violations.front().message);
}

// ---------------------------------------------------------------------------
// Joins and leaves

std::size_t join(const RootedTree& t, std::size_t x, std::size_t y) {
  if (!t.is_tree()) throw PreconditionError("join on a structure that is not a tree");
  while (t.depth(x) > t.depth(y)) x = t.parent(x);
  while (t.depth(y) > t.depth(x)) y = t.parent(y);
  while (x != y) {
    x = t.parent(x);
    y = t.parent(y);
  }
  return x;
}

NodeId join(const RootedTree& t, const NodeId& x, const NodeId& y) {
  return t.name(join(t, t.index(x), t.index(y)));
}

std::vector<std::size_t> leaves_below(const RootedTree& t, std::size_t u) {
  std::vector<std::size_t> out;
  std::vector<std::size_t> stack{u};
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    if (t.is_leaf(v)) out.push_back(v);
    for (auto c : t.children(v)) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> leaves_below(const RootedTree& t, const NodeId& u) {
  std::vector<NodeId> out;
  for (auto i : leaves_below(t, t.index(u))) out.push_back(t.name(i));
  return out;
}

RootedTree subtree(const RootedTree& t, std::size_t u) {
  std::vector<NodeId> nodes;
  std::map<NodeId, NodeId> parent;
  std::vector<std::size_t> stack{u};
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    nodes.push_back(t.name(v));
    if (v != u) parent.emplace(t.name(v), t.name(t.parent(v)));
    for (auto c : t.children(v)) stack.push_back(c);
  }
  return RootedTree::from_parents(std::move(nodes), parent);
}

RootedTree join_closure(const RootedTree& t, const std::vector<NodeId>& xs) {
  if (xs.empty()) throw PreconditionError("join_closure: empty set");
  std::vector<bool> keep(t.size(), false);
  std::vector<std::size_t> idx;
  for (const auto& x : xs) idx.push_back(t.index(x));
  for (auto a : idx)
    for (auto b : idx) keep[join(t, a, b)] = true;
  std::vector<NodeId> nodes;
  std::map<NodeId, NodeId> parent;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!keep[i]) continue;
    nodes.push_back(t.name(i));
    std::size_t p = t.parent(i);
    while (p != npos && !keep[p]) p = t.parent(p);
    if (p != npos) parent.emplace(t.name(i), t.name(p));
  }
  return RootedTree::from_parents(std::move(nodes), parent);
}

// ---------------------------------------------------------------------------
// Substitution and contraction

RootedTree substitute(const RootedTree& t, const std::map<NodeId, RootedTree>& sub) {
  if (!t.is_tree()) throw PreconditionError("substitute: host is not a tree");
  std::set<NodeId> used;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!(t.is_leaf(i) && sub.contains(t.name(i)))) used.insert(t.name(i));

  std::vector<NodeId> nodes(used.begin(), used.end());
  std::map<NodeId, NodeId> parent;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.parent(i) != npos && used.contains(t.name(i)))
      parent.emplace(t.name(i), t.name(t.parent(i)));
  }
  for (const auto& [x, u] : sub) {
    const auto xi = t.find(x);
    if (!xi) throw InputError("substitute: unknown leaf '" + x + "'");
    if (!t.is_leaf(*xi)) throw PreconditionError("substitute: '" + x + "' is not a leaf");
    if (!u.is_tree()) throw PreconditionError("substitute: tree for '" + x + "' is not a tree");
    if (auto own = u.find(x); own && !u.is_leaf(*own))
      throw PreconditionError("substitute: '" + x + "' occurs as an internal node of its tree");
    for (const auto& name : u.names()) {
      if (name != x && !used.insert(name).second)
        throw InputError("substitute: identifier collision on '" + name + "'");
      if (name == x) used.insert(name);
      nodes.push_back(name);
    }
    for (const auto& [c, f] : u.parent_map()) parent.emplace(c, f);
    if (t.parent(*xi) != npos) parent.emplace(u.name(u.root()), t.name(t.parent(*xi)));
  }
  return RootedTree::from_parents(std::move(nodes), parent);
}

Contraction contract(const RootedTree& s, const std::vector<NodeId>& roots) {
  if (!s.is_tree()) throw PreconditionError("contract: not a tree");
  std::vector<std::size_t> idx;
  for (const auto& r : roots) idx.push_back(s.index(r));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b)
      if (a != b && s.leq(idx[a], idx[b]))
        throw PreconditionError("contract: roots '" + s.name(idx[a]) + "' and '" +
                                s.name(idx[b]) + "' are comparable");

  std::vector<bool> removed(s.size(), false);
  std::map<NodeId, NodeId> parent = s.parent_map();
  Contraction out;
  for (std::size_t u : idx) {
    if (s.is_leaf(u)) continue;
    const auto below = leaves_below(s, u);
    const std::size_t z = below.front();
    out.parts.emplace(s.name(z), subtree(s, u));
    std::vector<std::size_t> stack{u};
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      if (v != z) removed[v] = true;
      for (auto c : s.children(v)) stack.push_back(c);
    }
    if (s.parent(u) != npos)
      parent[s.name(z)] = s.name(s.parent(u));
    else
      parent.erase(s.name(z));
  }
  std::vector<NodeId> nodes;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!removed[i]) nodes.push_back(s.name(i));
  std::erase_if(parent, [&](const auto& kv) {
    return removed[s.index(kv.first)] || removed[s.index(kv.second)];
  });
  out.tree = RootedTree::from_parents(std::move(nodes), parent);
  return out;
}

// ---------------------------------------------------------------------------
// Canonical forms

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '(' || c == ')' || c == '\\' || c == '\'') out += '\\';
    out += c;
  }
  return out;
}

std::string encode(const RootedTree& t, std::size_t u, LabelMode mode) {
  if (t.is_leaf(u)) return mode == LabelMode::kLeafLabels ? "'" + escape(t.name(u)) : "*";
  std::vector<std::string> parts;
  for (auto c : t.children(u)) parts.push_back(encode(t, c, mode));
  std::sort(parts.begin(), parts.end());
  std::string s = "(";
  for (const auto& p : parts) s += p;
  return s + ")";
}

}  // namespace

std::string canonical_encoding(const RootedTree& t, LabelMode mode) {
  if (!t.is_tree()) throw PreconditionError("canonical_encoding: not a tree");
  return encode(t, t.root(), mode);
}

bool isomorphic(const RootedTree& a, const RootedTree& b, LabelMode mode) {
  return a.size() == b.size() && canonical_encoding(a, mode) == canonical_encoding(b, mode);
}

NodeId cluster_name(std::span<const NodeId> leaves) {
  NodeId s = "[";
  for (std::size_t i = 0; i < leaves.size(); ++i) s += (i ? "," : "") + leaves[i];
  return s + "]";
}

RootedTree with_cluster_names(const RootedTree& t) {
  std::map<NodeId, NodeId> rename;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.is_leaf(i)) {
      rename[t.name(i)] = t.name(i);
    } else {
      auto below = leaves_below(t, t.name(i));
      rename[t.name(i)] = cluster_name(below);
    }
  }
  return t.relabel([&](const NodeId& n) { return rename.at(n); });
}

// ---------------------------------------------------------------------------
// Laminar families

LaminarFamily to_laminar(const RootedTree& t) {
  if (!t.is_tree()) throw PreconditionError("to_laminar: not a tree");
  LaminarFamily f;
  f.ground = t.leaf_names();
  std::set<std::vector<NodeId>> members;
  for (std::size_t i = 0; i < t.size(); ++i) members.insert(leaves_below(t, t.name(i)));
  f.members.assign(members.begin(), members.end());
  return f;
}

RootedTree from_laminar(const LaminarFamily& f) {
  std::set<NodeId> ground(f.ground.begin(), f.ground.end());
  if (ground.empty()) throw InputError("laminar family: empty ground set");
  if (ground.size() != f.ground.size()) throw InputError("laminar family: repeated ground element");
  std::set<std::set<NodeId>> members;
  for (const auto& m : f.members) {
    std::set<NodeId> s(m.begin(), m.end());
    if (s.empty()) throw InputError("laminar family: empty member");
    for (const auto& x : s)
      if (!ground.contains(x)) throw InputError("laminar family: '" + x + "' not in ground set");
    members.insert(std::move(s));
  }
  if (!members.contains(ground)) throw InputError("laminar family: ground set is not a member");
  for (const auto& x : ground)
    if (!members.contains({x})) throw InputError("laminar family: missing singleton {" + x + "}");
  std::vector<std::set<NodeId>> ms(members.begin(), members.end());
  auto subset = [](const std::set<NodeId>& a, const std::set<NodeId>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      bool meet = std::any_of(ms[i].begin(), ms[i].end(),
                              [&](const NodeId& x) { return ms[j].contains(x); });
      if (meet && !subset(ms[i], ms[j]) && !subset(ms[j], ms[i]))
        throw InputError("laminar family: overlapping members " +
                         cluster_name(std::vector<NodeId>(ms[i].begin(), ms[i].end())) + " and " +
                         cluster_name(std::vector<NodeId>(ms[j].begin(), ms[j].end())));
    }
  auto node_name = [](const std::set<NodeId>& s) {
    if (s.size() == 1) return *s.begin();
    std::vector<NodeId> v(s.begin(), s.end());
    return cluster_name(v);
  };
  std::vector<NodeId> nodes;
  std::map<NodeId, NodeId> parent;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    nodes.push_back(node_name(ms[i]));
    std::size_t best = npos;
    for (std::size_t j = 0; j < ms.size(); ++j)
      if (j != i && ms[j].size() > ms[i].size() && subset(ms[i], ms[j]) &&
          (best == npos || ms[j].size() < ms[best].size()))
        best = j;
    if (best != npos) parent.emplace(node_name(ms[i]), node_name(ms[best]));
  }
  return RootedTree::from_parents(std::move(nodes), parent);
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

// Working shape: nodes 0..n-1 are leaves (label order), internal nodes follow.
struct Shape {
  std::vector<std::size_t> parent;
  std::vector<std::size_t> nchildren;
  std::size_t n_leaves = 0;
};

RootedTree materialize(const Shape& s, const std::vector<NodeId>& labels, std::size_t used) {
  const std::size_t total = s.parent.size();
  // Leaf sets per node, bottom-up by repeated propagation.
  std::vector<std::vector<NodeId>> below(total);
  for (std::size_t i = 0; i < used; ++i) {
    for (std::size_t v = i; v != npos; v = s.parent[v]) below[v].push_back(labels[i]);
  }
  std::vector<NodeId> names(total);
  std::vector<bool> alive(total, false);
  for (std::size_t v = 0; v < total; ++v) {
    if (below[v].empty()) continue;
    alive[v] = true;
    if (v < s.n_leaves) {
      names[v] = labels[v];
    } else {
      std::sort(below[v].begin(), below[v].end());
      names[v] = cluster_name(below[v]);
    }
  }
  std::vector<NodeId> nodes;
  std::map<NodeId, NodeId> parent;
  for (std::size_t v = 0; v < total; ++v) {
    if (!alive[v]) continue;
    nodes.push_back(names[v]);
    if (s.parent[v] != npos) parent.emplace(names[v], names[s.parent[v]]);
  }
  return RootedTree::from_parents(std::move(nodes), parent);
}

void grow(Shape& s, std::vector<std::size_t>& live, std::size_t k, const std::vector<NodeId>& labels,
          const std::function<void(const RootedTree&)>& visit) {
  const std::size_t n = labels.size();
  if (k == n) {
    visit(materialize(s, labels, n));
    return;
  }
  const std::vector<std::size_t> snapshot = live;
  // (a) hang leaf k under an existing internal node
  for (std::size_t v : snapshot) {
    if (v < n) continue;
    s.parent[k] = v;
    ++s.nchildren[v];
    live.push_back(k);
    grow(s, live, k + 1, labels, visit);
    live.pop_back();
    --s.nchildren[v];
    s.parent[k] = npos;
  }
  // (b) subdivide the edge above u (or put a new root above the root)
  for (std::size_t u : snapshot) {
    const std::size_t w = s.parent.size();
    s.parent.push_back(s.parent[u]);
    s.nchildren.push_back(2);
    const std::size_t old = s.parent[u];
    s.parent[u] = w;
    s.parent[k] = w;
    live.push_back(w);
    live.push_back(k);
    grow(s, live, k + 1, labels, visit);
    live.pop_back();
    live.pop_back();
    s.parent[k] = npos;
    s.parent[u] = old;
    s.parent.pop_back();
    s.nchildren.pop_back();
  }
}

std::vector<NodeId> checked_labels(const std::vector<NodeId>& labels) {
  if (labels.empty()) throw PreconditionError("enumeration needs at least one label");
  std::vector<NodeId> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("duplicate leaf label");
  return sorted;
}

}  // namespace

void for_each_leafy_tree(const std::vector<NodeId>& labels,
                         const std::function<void(const RootedTree&)>& visit) {
  const auto sorted = checked_labels(labels);
  Shape s;
  s.n_leaves = sorted.size();
  s.parent.assign(sorted.size(), npos);
  s.nchildren.assign(sorted.size(), 0);
  std::vector<std::size_t> live{0};
  grow(s, live, 1, sorted, visit);
}

std::vector<RootedTree> enumerate_leafy_trees(const std::vector<NodeId>& labels) {
  std::vector<RootedTree> out;
  for_each_leafy_tree(labels, [&](const RootedTree& t) { out.push_back(t); });
  return out;
}

RootedTree random_leafy_tree(const std::vector<NodeId>& labels, std::mt19937_64& rng) {
  const auto sorted = checked_labels(labels);
  const std::size_t n = sorted.size();
  Shape s;
  s.n_leaves = n;
  s.parent.assign(n, npos);
  s.nchildren.assign(n, 0);
  std::vector<std::size_t> live{0};
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::size_t> internal;
    for (auto v : live)
      if (v >= n) internal.push_back(v);
    std::uniform_int_distribution<std::size_t> pick(0, internal.size() + live.size() - 1);
    const std::size_t choice = pick(rng);
    if (choice < internal.size()) {
      s.parent[k] = internal[choice];
      ++s.nchildren[internal[choice]];
      live.push_back(k);
    } else {
      const std::size_t u = live[choice - internal.size()];
      const std::size_t w = s.parent.size();
      s.parent.push_back(s.parent[u]);
      s.nchildren.push_back(2);
      s.parent[u] = w;
      s.parent[k] = w;
      live.push_back(w);
      live.push_back(k);
    }
  }
  return materialize(s, sorted, n);
}

std::vector<NodeId> default_labels(std::size_t n) {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (n <= 26) {
      out.push_back(NodeId(1, static_cast<char>('a' + i)));
    } else {
      std::string digits = std::to_string(i);
      out.push_back("v" + std::string(4 - std::min<std::size_t>(4, digits.size()), '0') + digits);
    }
  }
  return out;
}

}  // namespace leafbridge
