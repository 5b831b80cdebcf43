#include "leafbridge/quasi_tree.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "leafbridge/error.hpp"

namespace leafbridge {

namespace {

template <typename Names>
std::optional<std::size_t> find_sorted(const Names& names, const NodeId& id) {
  auto it = std::lower_bound(names.begin(), names.end(), id);
  if (it == names.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

std::vector<NodeId> sorted_unique(std::vector<NodeId> v) {
  std::sort(v.begin(), v.end());
  if (auto it = std::adjacent_find(v.begin(), v.end()); it != v.end())
    throw InputError("duplicate node '" + *it + "'");
  return v;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '(' || c == ')' || c == '<' || c == '>' || c == '\\' || c == '\'') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// UnrootedTree

UnrootedTree UnrootedTree::from_edges(std::vector<NodeId> nodes,
                                      const std::vector<std::pair<NodeId, NodeId>>& edges) {
  UnrootedTree t;
  t.names_ = sorted_unique(std::move(nodes));
  const std::size_t n = t.names_.size();
  if (n == 0) throw InputError("tree has no nodes");
  t.adj_.assign(n, {});
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& [a, b] : edges) {
    const auto u = t.index(a), v = t.index(b);
    if (u == v) throw InputError("loop at '" + a + "'");
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second)
      throw InputError("parallel edge " + a + "-" + b);
    t.adj_[u].push_back(v);
    t.adj_[v].push_back(u);
  }
  for (auto& a : t.adj_) std::sort(a.begin(), a.end());
  std::vector<bool> reached(n, false);
  std::vector<std::size_t> stack{0};
  reached[0] = true;
  std::size_t count = 0;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    ++count;
    for (auto v : t.adj_[u])
      if (!reached[v]) {
        reached[v] = true;
        stack.push_back(v);
      }
  }
  if (count != n) throw InputError("graph is disconnected");
  if (edges.size() != n - 1) throw InputError("graph has a cycle");
  return t;
}

UnrootedTree UnrootedTree::from_rooted(const RootedTree& t) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& [c, p] : t.parent_map()) edges.emplace_back(c, p);
  return from_edges(t.names(), edges);
}

std::optional<std::size_t> UnrootedTree::find(const NodeId& id) const {
  return find_sorted(names_, id);
}

std::size_t UnrootedTree::index(const NodeId& id) const {
  if (auto i = find(id)) return *i;
  throw InputError("unknown node '" + id + "'");
}

std::vector<std::size_t> UnrootedTree::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (adj_[i].size() <= 1) out.push_back(i);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> UnrootedTree::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < size(); ++u)
    for (auto v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::vector<std::pair<NodeId, NodeId>> UnrootedTree::edge_names() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (auto [u, v] : edges()) out.emplace_back(names_[u], names_[v]);
  return out;
}

std::vector<std::size_t> UnrootedTree::path(std::size_t u, std::size_t v) const {
  std::vector<std::size_t> parent(size(), npos);
  std::vector<std::size_t> stack{v};
  parent[v] = v;
  while (!stack.empty()) {
    auto w = stack.back();
    stack.pop_back();
    for (auto x : adj_[w])
      if (parent[x] == npos) {
        parent[x] = w;
        stack.push_back(x);
      }
  }
  std::vector<std::size_t> out{u};
  while (out.back() != v) out.push_back(parent[out.back()]);
  return out;
}

RootedTree UnrootedTree::rooted_at(std::size_t r) const {
  std::map<NodeId, NodeId> parent;
  std::vector<std::size_t> stack{r};
  std::vector<bool> seen(size(), false);
  seen[r] = true;
  while (!stack.empty()) {
    auto w = stack.back();
    stack.pop_back();
    for (auto x : adj_[w])
      if (!seen[x]) {
        seen[x] = true;
        parent.emplace(names_[x], names_[w]);
        stack.push_back(x);
      }
  }
  return RootedTree::from_parents(names_, parent);
}

namespace {

std::string encode_from(const UnrootedTree& t, std::size_t u, std::size_t from) {
  if (t.degree(u) <= 1 && from != npos) return "'" + escape(t.name(u));
  if (t.degree(u) == 0) return "'" + escape(t.name(u));
  std::vector<std::string> parts;
  for (auto v : t.neighbors(u))
    if (v != from) parts.push_back(encode_from(t, v, u));
  std::sort(parts.begin(), parts.end());
  std::string s = "(";
  for (const auto& p : parts) s += p;
  return s + ")";
}

}  // namespace

std::string canonical_encoding(const UnrootedTree& t) {
  const std::size_t n = t.size();
  if (n == 1) return "'" + escape(t.name(0));
  // Peel leaves layer by layer; the last one or two nodes are the center.
  std::vector<std::size_t> deg(n);
  std::vector<std::size_t> layer;
  for (std::size_t i = 0; i < n; ++i) {
    deg[i] = t.degree(i);
    if (deg[i] <= 1) layer.push_back(i);
  }
  std::size_t remaining = n;
  while (remaining > 2) {
    std::vector<std::size_t> next;
    for (auto u : layer) {
      --remaining;
      for (auto v : t.neighbors(u))
        if (--deg[v] == 1) next.push_back(v);
    }
    layer = std::move(next);
  }
  if (layer.size() == 1) return encode_from(t, layer[0], npos);
  const auto a = encode_from(t, layer[0], layer[1]);
  const auto b = encode_from(t, layer[1], layer[0]);
  return "<" + std::min(a, b) + std::max(a, b) + ">";
}

// ---------------------------------------------------------------------------
// QuasiTree

QuasiTree::QuasiTree(std::vector<NodeId> nodes) {
  names_ = sorted_unique(std::move(nodes));
  if (names_.size() > kMaxMaskElements) throw InputError("quasi-trees are limited to 64 nodes");
  n_ = names_.size();
  mid_.assign(n_ * n_, 0);
}

QuasiTree QuasiTree::from_triples(std::vector<NodeId> nodes,
                                  const std::vector<std::array<NodeId, 3>>& triples) {
  QuasiTree q(std::move(nodes));
  for (const auto& [x, y, z] : triples) q.set(q.index(x), q.index(y), q.index(z));
  return q;
}

std::optional<std::size_t> QuasiTree::find(const NodeId& id) const {
  return find_sorted(names_, id);
}

std::size_t QuasiTree::index(const NodeId& id) const {
  if (auto i = find(id)) return *i;
  throw InputError("unknown node '" + id + "'");
}

void QuasiTree::set(std::size_t x, std::size_t y, std::size_t z, bool v) noexcept {
  Mask& m = mid_[x * n_ + z];
  m = v ? (m | bit(y)) : (m & ~bit(y));
}

Mask QuasiTree::leaf_mask() const noexcept {
  Mask inner = 0;
  for (Mask m : mid_) inner |= m;
  return low_bits(n_) & ~inner;
}

std::vector<NodeId> QuasiTree::leaf_names() const {
  std::vector<NodeId> out;
  for (auto i : leaves()) out.push_back(names_[i]);
  return out;
}

std::vector<std::array<std::size_t, 3>> QuasiTree::triples() const {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t y = 0; y < n_; ++y)
      for (std::size_t z = 0; z < n_; ++z)
        if (between(x, y, z)) out.push_back({x, y, z});
  return out;
}

bool QuasiTree::empty() const noexcept {
  return std::all_of(mid_.begin(), mid_.end(), [](Mask m) { return m == 0; });
}

QuasiTree betweenness_of_tree(const UnrootedTree& t) {
  QuasiTree q(t.names());
  const std::size_t n = t.size();
  for (std::size_t x = 0; x < n; ++x) {
    // Parent pointers towards x.
    std::vector<std::size_t> parent(n, npos);
    std::vector<std::size_t> order{x};
    parent[x] = x;
    for (std::size_t k = 0; k < order.size(); ++k)
      for (auto v : t.neighbors(order[k]))
        if (parent[v] == npos) {
          parent[v] = order[k];
          order.push_back(v);
        }
    for (std::size_t z = 0; z < n; ++z)
      for (std::size_t y = parent[z]; z != x && y != x; y = parent[y]) q.set(x, y, z);
  }
  return q;
}

// ---------------------------------------------------------------------------
// Axioms

namespace {

class BChecker {
 public:
  explicit BChecker(const QuasiTree& q) : q_(q), n_(q.size()) {}

  static AxiomResult ok(const char* a) { return {a, true, {}}; }
  AxiomResult fail(const char* a, std::initializer_list<std::size_t> w) const {
    AxiomResult r{a, false, {}};
    for (auto i : w) r.witness.push_back(q_.name(i));
    return r;
  }

  AxiomResult b1() const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t z = 0; z < n_; ++z) {
        const Mask m = q_.middles(x, z);
        if (m == 0) continue;
        const std::size_t y = lowest(m);
        if (x == z) return fail("B1", {x, y, z});
        if (has(m, x)) return fail("B1", {x, x, z});
        if (has(m, z)) return fail("B1", {x, z, z});
      }
    return ok("B1");
  }
  AxiomResult b2() const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t z = 0; z < n_; ++z)
        if (Mask bad = q_.middles(x, z) & ~q_.middles(z, x)) return fail("B2", {x, lowest(bad), z});
    return ok("B2");
  }
  AxiomResult b3() const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t z = 0; z < n_; ++z)
        for (Mask my = q_.middles(x, z); my; my &= my - 1)
          if (const auto y = lowest(my); B(x, z, y)) return fail("B3", {x, y, z});
    return ok("B3");
  }
  // Bxyz ∧ Byzu ⇒ Bxyu ∧ Bxzu
  AxiomResult b4() const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t z = 0; z < n_; ++z)
        for (Mask my = q_.middles(x, z); my; my &= my - 1) {
          const auto y = lowest(my);
          for (std::size_t u = 0; u < n_; ++u)
            if (B(y, z, u) && !(B(x, y, u) && B(x, z, u))) return fail("B4", {x, y, z, u});
        }
    return ok("B4");
  }
  // Bxyz ∧ Bxuy ⇒ Bxuz ∧ Buyz
  AxiomResult b5() const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t z = 0; z < n_; ++z)
        for (Mask my = q_.middles(x, z); my; my &= my - 1) {
          const auto y = lowest(my);
          for (Mask mu = q_.middles(x, y); mu; mu &= mu - 1)
            if (const auto u = lowest(mu); !(B(x, u, z) && B(u, y, z))) return fail("B5", {x, y, z, u});
        }
    return ok("B5");
  }
  // Bxyz ∧ Bxuz ⇒ y=u ∨ B⁺xyuz ∨ B⁺xuyz
  AxiomResult b6() const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t z = 0; z < n_; ++z) {
        const Mask m = q_.middles(x, z);
        for (Mask my = m; my; my &= my - 1)
          for (Mask mu = m; mu; mu &= mu - 1) {
            const std::size_t y = lowest(my), u = lowest(mu);
            if (y == u) continue;
            if (B(x, y, u) && B(y, u, z)) continue;
            if (B(x, u, y) && B(u, y, z)) continue;
            return fail("B6", {x, y, z, u});
          }
      }
    return ok("B6");
  }
  AxiomResult b7() const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        for (std::size_t z = 0; z < n_; ++z) {
          if (x == y || y == z || x == z || q_.aligned(x, y, z)) continue;
          if ((q_.middles(x, y) & q_.middles(y, z) & q_.middles(x, z)) == 0)
            return fail("B7", {x, y, z});
        }
    return ok("B7");
  }
  // ≠xyzu ∧ Bxyz ∧ ¬Ayzu ⇒ Bxyu
  AxiomResult b8() const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t z = 0; z < n_; ++z)
        for (Mask my = q_.middles(x, z); my; my &= my - 1)
          for (std::size_t u = 0, y = lowest(my); u < n_; ++u) {
            if (u == x || u == y || u == z || x == y || y == z || x == z) continue;
            if (!q_.aligned(y, z, u) && !B(x, y, u)) return fail("B8", {x, y, z, u});
          }
    return ok("B8");
  }

 private:
  bool B(std::size_t x, std::size_t y, std::size_t z) const { return q_.between(x, y, z); }
  static std::size_t lowest(Mask m) { return static_cast<std::size_t>(std::countr_zero(m)); }

  const QuasiTree& q_;
  std::size_t n_;
};

}  // namespace

AxiomReport check_B_axioms(const QuasiTree& q, BMode mode) {
  BChecker c(q);
  AxiomReport r{{c.b1(), c.b2(), c.b3(), c.b4(), c.b5(), c.b6()}};
  r.results.push_back(mode == BMode::kFull ? c.b7() : c.b8());
  return r;
}

// ---------------------------------------------------------------------------
// Medians, intervals, leafiness

Median median(const QuasiTree& q, std::size_t x, std::size_t y, std::size_t z) {
  if (x == y || y == z || x == z) throw PreconditionError("median needs three distinct nodes");
  if (q.between(x, y, z)) return {Median::Kind::kAligned, y};
  if (q.between(y, x, z)) return {Median::Kind::kAligned, x};
  if (q.between(x, z, y)) return {Median::Kind::kAligned, z};
  const Mask w = q.middles(x, y) & q.middles(y, z) & q.middles(x, z);
  if (popcount(w) != 1) return {Median::Kind::kNone, npos};
  return {Median::Kind::kMedian, static_cast<std::size_t>(std::countr_zero(w))};
}

std::size_t median_node(const QuasiTree& q, std::size_t x, std::size_t y, std::size_t z) {
  auto m = median(q, x, y, z);
  if (m.kind != Median::Kind::kMedian)
    throw PreconditionError("no median for (" + q.name(x) + "," + q.name(y) + "," + q.name(z) + ")");
  return m.node;
}

std::vector<NodeId> interval(const QuasiTree& q, const NodeId& x, const NodeId& y) {
  std::vector<NodeId> out;
  for (auto i : bits_of(q.interval_mask(q.index(x), q.index(y)))) out.push_back(q.name(i));
  return out;
}

bool is_leafy(const QuasiTree& q) {
  const auto L = q.leaves();
  Mask medians = 0;
  for (std::size_t a = 0; a < L.size(); ++a)
    for (std::size_t b = a + 1; b < L.size(); ++b)
      for (std::size_t c = b + 1; c < L.size(); ++c) {
        auto m = median(q, L[a], L[b], L[c]);
        if (m.kind == Median::Kind::kMedian) medians |= bit(m.node);
      }
  const Mask internal = low_bits(q.size()) & ~q.leaf_mask();
  return (internal & ~medians) == 0;
}

bool is_leafy_quasi_tree(const QuasiTree& q) {
  return check_B_axioms(q, BMode::kFull).all_pass() && is_leafy(q);
}

// ---------------------------------------------------------------------------
// Rooting

RootedTree root_at(const QuasiTree& q, const NodeId& r) {
  const std::size_t ri = q.index(r);
  std::map<NodeId, NodeId> parent;
  for (std::size_t x = 0; x < q.size(); ++x) {
    if (x == ri) continue;
    const Mask up = q.middles(x, ri) | bit(ri);
    // The father is the strict upper bound with nothing of `up` before it.
    std::size_t father = npos;
    for (auto y : bits_of(up))
      if ((q.middles(x, y) & up) == 0) father = y;
    if (father == npos) throw PreconditionError("root_at: no father for '" + q.name(x) + "'");
    parent.emplace(q.name(x), q.name(father));
  }
  auto t = RootedTree::from_parents(q.names(), parent);
  if (!t.is_tree()) throw PreconditionError("root_at: ≤r is not a tree order");
  return t;
}

QuasiTree unroot(const RootedTree& t) {
  if (!t.is_tree()) throw PreconditionError("unroot: not a tree");
  if (t.size() < 3) throw PreconditionError("unroot needs at least three nodes");
  const std::size_t n = t.size();
  QuasiTree q(t.names());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t z = 0; z < n; ++z) {
      if (x == z) continue;
      const std::size_t j = join(t, x, z);
      for (std::size_t y = 0; y < n; ++y) {
        if (y == x || y == z) continue;
        const bool from_x = t.leq(x, y) && t.leq(y, j);
        const bool from_z = t.leq(z, y) && t.leq(y, j);
        if (from_x || from_z) q.set(x, y, z);
      }
    }
  return q;
}

QuasiTree induced(const QuasiTree& q, const std::vector<NodeId>& keep) {
  QuasiTree out(keep);
  std::vector<std::size_t> map;
  for (const auto& k : out.names()) map.push_back(q.index(k));
  const std::size_t m = out.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t c = 0; c < m; ++c) {
      const Mask mids = q.middles(map[a], map[c]);
      if (mids == 0) continue;
      for (std::size_t b = 0; b < m; ++b)
        if (has(mids, map[b])) out.set(a, b, c);
    }
  return out;
}

QuasiTree leafy_closure(const QuasiTree& q, const std::vector<NodeId>& xs) {
  const Mask leaves = q.leaf_mask();
  std::vector<std::size_t> idx;
  for (const auto& x : xs) {
    const auto i = q.index(x);
    if (!has(leaves, i)) throw PreconditionError("leafy_closure: '" + x + "' is not a leaf");
    idx.push_back(i);
  }
  Mask y = 0;
  for (auto i : idx) y |= bit(i);
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      for (std::size_t c = b + 1; c < idx.size(); ++c)
        y |= bit(median_node(q, idx[a], idx[b], idx[c]));
  std::vector<NodeId> keep;
  for (auto i : bits_of(y)) keep.push_back(q.name(i));
  return induced(q, keep);
}

UnrootedTree underlying_tree(const QuasiTree& q) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t x = 0; x < q.size(); ++x)
    for (std::size_t z = x + 1; z < q.size(); ++z)
      if (q.middles(x, z) == 0) edges.emplace_back(q.name(x), q.name(z));
  try {
    return UnrootedTree::from_edges(q.names(), edges);
  } catch (const InputError& e) {
    throw PreconditionError(std::string("no underlying tree: ") + e.what());
  }
}

std::string canonical_encoding(const QuasiTree& q) {
  const auto t = underlying_tree(q);
  if (!(betweenness_of_tree(t) == q))
    throw PreconditionError("structure is not the betweenness of a tree");
  return canonical_encoding(t);
}

bool isomorphic(const QuasiTree& a, const QuasiTree& b) {
  return a.size() == b.size() && canonical_encoding(a) == canonical_encoding(b);
}

// ---------------------------------------------------------------------------
// Enumeration

void for_each_leafy_unrooted_tree(const std::vector<NodeId>& labels,
                                  const std::function<void(const UnrootedTree&)>& visit) {
  std::vector<NodeId> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty()) throw PreconditionError("enumeration needs at least one label");
  if (sorted.size() == 1) {
    visit(UnrootedTree::from_edges(sorted, {}));
    return;
  }
  const NodeId last = sorted.back();
  sorted.pop_back();
  for_each_leafy_tree(sorted, [&](const RootedTree& t) {
    std::vector<NodeId> nodes = t.names();
    nodes.push_back(last);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const auto& [c, p] : t.parent_map()) edges.emplace_back(c, p);
    edges.emplace_back(t.name(t.root()), last);
    visit(UnrootedTree::from_edges(std::move(nodes), edges));
  });
}

void for_each_labelled_tree(const std::vector<NodeId>& nodes,
                            const std::function<void(const UnrootedTree&)>& visit) {
  const std::size_t n = nodes.size();
  if (n == 0) throw PreconditionError("enumeration needs at least one node");
  if (n == 1) {
    visit(UnrootedTree::from_edges(nodes, {}));
    return;
  }
  if (n == 2) {
    visit(UnrootedTree::from_edges(nodes, {{nodes[0], nodes[1]}}));
    return;
  }
  std::vector<std::size_t> seq(n - 2, 0);
  while (true) {
    std::vector<std::size_t> degree(n, 1);
    for (auto s : seq) ++degree[s];
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (auto s : seq) {
      std::size_t leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      edges.emplace_back(nodes[leaf], nodes[s]);
      --degree[leaf];
      --degree[s];
    }
    std::size_t u = npos, v = npos;
    for (std::size_t i = 0; i < n; ++i)
      if (degree[i] == 1) (u == npos ? u : v) = i;
    edges.emplace_back(nodes[u], nodes[v]);
    visit(UnrootedTree::from_edges(nodes, edges));
    std::size_t k = 0;
    while (k < seq.size() && ++seq[k] == n) seq[k++] = 0;
    if (k == seq.size()) break;
  }
}

}  // namespace leafbridge
