#include "leafbridge/rankwidth.hpp"

#include <algorithm>
#include <random>

#include "leafbridge/error.hpp"

namespace leafbridge {

// ---------------------------------------------------------------------------
// SimpleGraph

SimpleGraph SimpleGraph::from_edges(std::vector<NodeId> vertices,
                                    const std::vector<std::pair<NodeId, NodeId>>& edges) {
  SimpleGraph g;
  std::sort(vertices.begin(), vertices.end());
  if (auto it = std::adjacent_find(vertices.begin(), vertices.end()); it != vertices.end())
    throw InputError("duplicate vertex '" + *it + "'");
  if (vertices.size() > kMaxMaskElements) throw InputError("graphs are limited to 64 vertices");
  g.names_ = std::move(vertices);
  g.adj_.assign(g.names_.size(), 0);
  for (const auto& [a, b] : edges) {
    const auto u = g.index(a), v = g.index(b);
    if (u == v) throw InputError("loop at '" + a + "'");
    if (g.adjacent(u, v)) throw InputError("repeated edge " + a + "-" + b);
    g.adj_[u] |= bit(v);
    g.adj_[v] |= bit(u);
  }
  return g;
}

std::size_t SimpleGraph::index(const NodeId& id) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), id);
  if (it == names_.end() || *it != id) throw InputError("unknown vertex '" + id + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

std::vector<std::pair<NodeId, NodeId>> SimpleGraph::edge_names() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (std::size_t u = 0; u < size(); ++u)
    for_each_bit(adj_[u] & ~low_bits(u + 1), [&](std::size_t v) { out.emplace_back(names_[u], names_[v]); });
  return out;
}

bool SimpleGraph::has_edges() const noexcept {
  return std::any_of(adj_.begin(), adj_.end(), [](Mask m) { return m != 0; });
}

gf2::BitMatrix SimpleGraph::submatrix(Mask rows, Mask cols) const {
  gf2::BitMatrix m(static_cast<std::size_t>(popcount(rows)), static_cast<std::size_t>(popcount(cols)));
  std::size_t r = 0;
  for_each_bit(rows, [&](std::size_t u) {
    std::size_t c = 0;
    for_each_bit(cols, [&](std::size_t v) { m.set(r, c++, adjacent(u, v)); });
    ++r;
  });
  return m;
}

SimpleGraph SimpleGraph::induced(Mask keep) const {
  std::vector<NodeId> vs;
  for_each_bit(keep, [&](std::size_t u) { vs.push_back(names_[u]); });
  std::vector<std::pair<NodeId, NodeId>> es;
  for (const auto& [a, b] : edge_names())
    if (has(keep, index(a)) && has(keep, index(b))) es.emplace_back(a, b);
  return from_edges(vs, es);
}

SimpleGraph complete_graph(std::size_t n) {
  auto vs = default_labels(n);
  std::vector<std::pair<NodeId, NodeId>> es;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) es.emplace_back(vs[i], vs[j]);
  return SimpleGraph::from_edges(vs, es);
}

SimpleGraph path_graph(std::size_t n) {
  auto vs = default_labels(n);
  std::vector<std::pair<NodeId, NodeId>> es;
  for (std::size_t i = 0; i + 1 < n; ++i) es.emplace_back(vs[i], vs[i + 1]);
  return SimpleGraph::from_edges(vs, es);
}

SimpleGraph cycle_graph(std::size_t n) {
  if (n < 3) throw PreconditionError("a cycle needs at least three vertices");
  auto vs = default_labels(n);
  std::vector<std::pair<NodeId, NodeId>> es;
  for (std::size_t i = 0; i < n; ++i) es.emplace_back(vs[i], vs[(i + 1) % n]);
  return SimpleGraph::from_edges(vs, es);
}

// ---------------------------------------------------------------------------
// Layouts and cuts

bool is_cubic_layout(const Layout& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t.degree(i) != 1 && t.degree(i) != 3 && !(t.size() == 1 && t.degree(i) == 0)) return false;
  return true;
}

void require_layout(const SimpleGraph& g, const Layout& t) {
  if (!is_cubic_layout(t)) throw PreconditionError("layout is not cubic");
  std::vector<NodeId> leaves;
  for (auto i : t.leaves()) leaves.push_back(t.name(i));
  if (leaves != g.names()) throw PreconditionError("layout leaves differ from the graph's vertices");
}

std::vector<Cut> cuts_of_layout(const Layout& t) {
  if (t.size() > kMaxMaskElements) throw InputError("layouts are limited to 64 nodes");
  const auto q = betweenness_of_tree(t);
  const Mask all = low_bits(t.size());
  std::vector<Cut> out;
  for (auto [x, y] : t.edges()) {
    Mask cx = bit(x);
    for (std::size_t z = 0; z < t.size(); ++z)
      if (q.between(z, x, y)) cx |= bit(z);
    out.push_back({x, y, cx, all & ~cx});
  }
  return out;
}

namespace {

// Layout leaf mask -> graph vertex mask.
Mask to_vertices(const SimpleGraph& g, const Layout& t, Mask nodes) {
  Mask out = 0;
  for_each_bit(nodes, [&](std::size_t i) {
    if (t.degree(i) <= 1) out |= bit(g.index(t.name(i)));
  });
  return out;
}

std::size_t rank_of(const SimpleGraph& g, Mask a, Mask b) {
  if (a == 0 || b == 0) return 0;
  return gf2::rank(g.submatrix(a, b));
}

// Stops early once a cut exceeds `limit`, returning that cut's rank.
std::size_t rwd_capped(const SimpleGraph& g, const Layout& t, std::size_t limit) {
  std::size_t best = 0;
  for (const auto& c : cuts_of_layout(t)) {
    best = std::max(best, rank_of(g, to_vertices(g, t, c.cx), to_vertices(g, t, c.cy)));
    if (best > limit) break;
  }
  return best;
}

}  // namespace

std::vector<std::size_t> cut_ranks(const SimpleGraph& g, const Layout& t) {
  require_layout(g, t);
  std::vector<std::size_t> out;
  for (const auto& c : cuts_of_layout(t))
    out.push_back(rank_of(g, to_vertices(g, t, c.cx), to_vertices(g, t, c.cy)));
  return out;
}

std::size_t rwd_relative(const SimpleGraph& g, const Layout& t) {
  const auto r = cut_ranks(g, t);
  return r.empty() ? 0 : *std::max_element(r.begin(), r.end());
}

void for_each_cubic_layout(const std::vector<NodeId>& labels,
                           const std::function<void(const Layout&)>& visit) {
  std::vector<NodeId> leaves = labels;
  std::sort(leaves.begin(), leaves.end());
  const std::size_t n = leaves.size();
  if (n == 0) throw PreconditionError("layouts need at least one leaf");
  if (n == 1) return visit(UnrootedTree::from_edges(leaves, {}));
  if (n == 2) return visit(UnrootedTree::from_edges(leaves, {{leaves[0], leaves[1]}}));

  auto internal = [&](std::size_t i) {
    NodeId name = "#" + std::to_string(i);
    while (std::binary_search(leaves.begin(), leaves.end(), name)) name += "'";
    return name;
  };
  std::vector<NodeId> names = {leaves[0], leaves[1], leaves[2], internal(1)};
  std::vector<std::pair<std::size_t, std::size_t>> edges = {{3, 0}, {3, 1}, {3, 2}};

  std::function<void(std::size_t)> grow = [&](std::size_t k) {
    if (k == n) {
      std::vector<std::pair<NodeId, NodeId>> named;
      for (auto [u, v] : edges) named.emplace_back(names[u], names[v]);
      visit(UnrootedTree::from_edges(names, named));
      return;
    }
    const std::size_t leaf = names.size(), mid = leaf + 1;
    names.push_back(leaves[k]);
    names.push_back(internal(k - 1));
    const std::size_t m = edges.size();
    for (std::size_t e = 0; e < m; ++e) {
      const auto [u, v] = edges[e];
      edges[e] = {u, mid};
      edges.push_back({mid, v});
      edges.push_back({mid, leaf});
      grow(k + 1);
      edges.pop_back();
      edges.pop_back();
      edges[e] = {u, v};
    }
    names.pop_back();
    names.pop_back();
  };
  grow(3);
}

RankWidth rank_width(const SimpleGraph& g, std::size_t bound) {
  if (g.size() == 0) throw PreconditionError("rank_width of an empty graph");
  if (g.size() > bound)
    throw PreconditionError("rank_width: " + std::to_string(g.size()) + " vertices exceed the exact bound " +
                            std::to_string(bound));
  std::optional<RankWidth> best;
  std::string best_code;
  for_each_cubic_layout(g.names(), [&](const Layout& t) {
    const std::size_t limit = best ? best->rwd : g.size();
    const std::size_t r = rwd_capped(g, t, limit);
    if (best && r > best->rwd) return;
    auto code = canonical_encoding(t);
    if (!best || r < best->rwd || code < best_code) {
      best = RankWidth{r, t};
      best_code = std::move(code);
    }
  });
  return *best;
}

// ---------------------------------------------------------------------------
// Separation-structure formulation

std::vector<std::pair<Mask, Mask>> maximal_separated_pairs(const SeparationStructure& ss) {
  const std::size_t n = ss.size();
  if (n > 20) throw PreconditionError("maximal_separated_pairs: too many leaves");
  const Mask all = low_bits(n);
  auto separated = [&](Mask a, Mask b) {
    bool ok = true;
    for_each_bit(a, [&](std::size_t x) {
      for_each_bit(a & ~low_bits(x + 1), [&](std::size_t y) {
        for_each_bit(b, [&](std::size_t z) {
          ok = ok && ((b & ~bit(z)) & ~ss.sep_mask(x, y, z)) == 0;
        });
      });
    });
    return ok;
  };
  std::vector<std::pair<Mask, Mask>> pairs;
  for (Mask a = 1; a <= all; ++a) {
    if (popcount(a) < 2) continue;
    const Mask rest = all & ~a;
    for (Mask b = rest; b != 0; b = (b - 1) & rest)
      if (popcount(b) >= 2 && separated(a, b)) pairs.emplace_back(a, b);
  }
  std::vector<std::pair<Mask, Mask>> out;
  for (const auto& [a, b] : pairs) {
    bool maximal = true;
    for (const auto& [c, d] : pairs)
      if ((a & ~c) == 0 && (b & ~d) == 0 && (a != c || b != d)) {
        maximal = false;
        break;
      }
    if (maximal) out.emplace_back(a, b);
  }
  return out;
}

namespace {

// Leaf order of ss and vertex order of g coincide (both sorted).
std::size_t rwd_from_pairs(const SimpleGraph& g, const std::vector<std::pair<Mask, Mask>>& pairs) {
  std::size_t best = g.has_edges() ? 1 : 0;
  for (const auto& [a, b] : pairs) best = std::max(best, rank_of(g, a, b));
  return best;
}

}  // namespace

std::size_t rwd_relative_via_S(const SimpleGraph& g, const Layout& t, std::uint64_t seed,
                               std::size_t spot_checks) {
  require_layout(g, t);
  const auto ss = separation_structure(betweenness_of_tree(t));
  const auto pairs = maximal_separated_pairs(ss);
  const std::size_t value = rwd_from_pairs(g, pairs);
  if (!pairs.empty()) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < spot_checks; ++i) {
      const auto& [a, b] = pairs[rng() % pairs.size()];
      const Mask a2 = a & rng(), b2 = b & rng();
      if (rank_of(g, a2, b2) > rank_of(g, a, b))
        throw Error("rank of a sub-pair exceeds the rank of its maximal pair");
    }
  }
  return value;
}

std::optional<std::pair<std::size_t, std::size_t>> separating_edge(const Layout& t,
                                                                   const std::vector<NodeId>& a,
                                                                   const std::vector<NodeId>& b) {
  Mask ma = 0, mb = 0;
  for (const auto& x : a) ma |= bit(t.index(x));
  for (const auto& x : b) mb |= bit(t.index(x));
  for (const auto& c : cuts_of_layout(t)) {
    if ((ma & ~c.cx) == 0 && (mb & ~c.cy) == 0) return std::pair{c.x, c.y};
    if ((ma & ~c.cy) == 0 && (mb & ~c.cx) == 0) return std::pair{c.y, c.x};
  }
  return std::nullopt;
}

bool check_rwd_leq(const SimpleGraph& g, const SeparationStructure& ss, std::size_t k) {
  if (ss.leaves() != g.names()) throw PreconditionError("leaves of S differ from the graph's vertices");
  const std::size_t n = ss.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t z = y + 1; z < n; ++z)
        for (std::size_t u = z + 1; u < n; ++u)
          if (ss.E(x, y, z, u))
            throw PreconditionError("layout is not cubic: E holds at (" + ss.name(x) + "," + ss.name(y) + "," +
                                    ss.name(z) + "," + ss.name(u) + ")");
  if (auto v = is_separation_structure(ss); !v.valid)
    throw PreconditionError("not a separation structure: " + v.reason);
  return rwd_from_pairs(g, maximal_separated_pairs(ss)) <= k;
}

}  // namespace leafbridge
