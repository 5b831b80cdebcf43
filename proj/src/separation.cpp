#include "leafbridge/separation.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "leafbridge/error.hpp"

namespace leafbridge {

namespace {

std::vector<NodeId> sorted_unique(std::vector<NodeId> v) {
  std::sort(v.begin(), v.end());
  if (auto it = std::adjacent_find(v.begin(), v.end()); it != v.end())
    throw InputError("duplicate leaf '" + *it + "'");
  return v;
}

bool distinct4(std::size_t x, std::size_t y, std::size_t z, std::size_t u) {
  return x != y && x != z && x != u && y != z && y != u && z != u;
}

NodeId fresh_name(NodeId name, const std::vector<NodeId>& taken) {
  while (std::binary_search(taken.begin(), taken.end(), name)) name += "'";
  return name;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// SeparationStructure

SeparationStructure::SeparationStructure(std::vector<NodeId> leaves) {
  leaves_ = sorted_unique(std::move(leaves));
  if (leaves_.size() > kMaxMaskElements) throw InputError("separation structures are limited to 64 leaves");
  n_ = leaves_.size();
  sep_.assign(n_ * n_ * n_, 0);
}

SeparationStructure SeparationStructure::from_tuples(
    std::vector<NodeId> leaves, const std::vector<std::array<NodeId, 4>>& tuples) {
  SeparationStructure ss(std::move(leaves));
  for (const auto& [x, y, z, u] : tuples) ss.set(ss.index(x), ss.index(y), ss.index(z), ss.index(u));
  ss.close_symmetric();
  return ss;
}

std::optional<std::size_t> SeparationStructure::find(const NodeId& id) const {
  auto it = std::lower_bound(leaves_.begin(), leaves_.end(), id);
  if (it == leaves_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - leaves_.begin());
}

std::size_t SeparationStructure::index(const NodeId& id) const {
  if (auto i = find(id)) return *i;
  throw InputError("unknown leaf '" + id + "'");
}

bool SeparationStructure::E(std::size_t x, std::size_t y, std::size_t z,
                            std::size_t u) const noexcept {
  return distinct4(x, y, z, u) && !S(x, y, z, u) && !S(x, z, y, u) && !S(x, u, y, z);
}

void SeparationStructure::set(std::size_t x, std::size_t y, std::size_t z, std::size_t u,
                              bool v) noexcept {
  Mask& m = sep_[(x * n_ + y) * n_ + z];
  m = v ? (m | bit(u)) : (m & ~bit(u));
}

void SeparationStructure::close_symmetric() {
  for (const auto& [x, y, z, u] : tuples())
    for (const Quad& t : {Quad{x, y, z, u}, Quad{y, x, z, u}, Quad{x, y, u, z}, Quad{y, x, u, z},
                          Quad{z, u, x, y}, Quad{u, z, x, y}, Quad{z, u, y, x}, Quad{u, z, y, x}})
      set(t[0], t[1], t[2], t[3]);
}

std::vector<Quad> SeparationStructure::tuples() const {
  std::vector<Quad> out;
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t y = 0; y < n_; ++y)
      for (std::size_t z = 0; z < n_; ++z)
        for_each_bit(sep_mask(x, y, z), [&](std::size_t u) { out.push_back({x, y, z, u}); });
  return out;
}

bool SeparationStructure::empty() const noexcept {
  return std::all_of(sep_.begin(), sep_.end(), [](Mask m) { return m == 0; });
}

SeparationStructure SeparationStructure::restrict_to(const std::vector<NodeId>& keep) const {
  SeparationStructure out(keep);
  std::vector<std::size_t> map;
  for (const auto& k : out.leaves()) map.push_back(index(k));
  const std::size_t m = out.size();
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t z = 0; z < m; ++z) {
        const Mask s = sep_mask(map[x], map[y], map[z]);
        if (s == 0) continue;
        for (std::size_t u = 0; u < m; ++u)
          if (has(s, map[u])) out.set(x, y, z, u);
      }
  return out;
}

SeparationStructure separation_relation(const QuasiTree& q) {
  SeparationStructure ss(q.leaf_names());
  const auto L = q.leaves();
  const std::size_t n = L.size();
  std::vector<Mask> iv(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) iv[a * n + b] = q.interval_mask(L[a], L[b]);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      for (std::size_t z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        for (std::size_t u = 0; u < n; ++u)
          if (u != x && u != y && u != z && (iv[x * n + y] & iv[z * n + u]) == 0) ss.set(x, y, z, u);
      }
    }
  return ss;
}

SeparationStructure separation_structure(const QuasiTree& q) {
  if (!is_leafy(q)) throw PreconditionError("separation_structure: quasi-tree is not leafy");
  return separation_relation(q);
}

// ---------------------------------------------------------------------------
// Triple classes

TripleClasses triple_classes(const SeparationStructure& ss) {
  const std::size_t n = ss.size();
  TripleClasses tc;
  std::vector<std::size_t> id(n * n * n, npos);
  auto key = [n](std::size_t a, std::size_t b, std::size_t c) {
    std::size_t t[3] = {a, b, c};
    std::sort(t, t + 3);
    return (t[0] * n + t[1]) * n + t[2];
  };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t z = y + 1; z < n; ++z) {
        id[(x * n + y) * n + z] = tc.sets.size();
        tc.sets.push_back({x, y, z});
      }
  // {x,y,z} ~ {x,y,w} iff Exyzw or Sxyzw: w meets [x,y] where z does.
  auto related = [&](std::size_t x, std::size_t y, std::size_t z, std::size_t w) {
    return ss.E(x, y, z, w) || ss.S(x, y, z, w);
  };
  UnionFind uf(tc.sets.size());
  for (std::size_t s = 0; s < tc.sets.size(); ++s) {
    const auto [a, b, c] = tc.sets[s];
    for (const auto& [x, y, z] : {Triple{a, b, c}, Triple{a, c, b}, Triple{b, c, a}})
      for (std::size_t w = z + 1; w < n; ++w)
        if (w != x && w != y && related(x, y, z, w)) uf.unite(s, id[key(x, y, w)]);
  }
  std::map<std::size_t, std::size_t> dense;
  tc.class_of.resize(tc.sets.size());
  for (std::size_t s = 0; s < tc.sets.size(); ++s) {
    auto [it, fresh] = dense.emplace(uf.find(s), dense.size());
    tc.class_of[s] = it->second;
  }
  tc.count = dense.size();
  for (std::size_t s = 0; s < tc.sets.size() && !tc.eq_failure; ++s) {
    const auto [a, b, c] = tc.sets[s];
    for (const auto& [x, y, z] : {Triple{a, b, c}, Triple{a, c, b}, Triple{b, c, a}}) {
      for (std::size_t w = z + 1; w < n; ++w) {
        if (w == x || w == y) continue;
        const std::size_t t = id[key(x, y, w)];
        if (tc.class_of[s] == tc.class_of[t] && !related(x, y, z, w)) {
          tc.eq_failure = std::array<std::size_t, 2>{s, t};
          break;
        }
      }
      if (tc.eq_failure) break;
    }
  }
  return tc;
}

// ---------------------------------------------------------------------------
// Axioms

namespace {

class SChecker {
 public:
  explicit SChecker(const SeparationStructure& ss) : ss_(ss), n_(ss.size()) {}

  static AxiomResult ok(const char* a) { return {a, true, {}}; }
  AxiomResult fail(const char* a, std::initializer_list<std::size_t> w) const {
    AxiomResult r{a, false, {}};
    for (auto i : w) r.witness.push_back(ss_.name(i));
    return r;
  }

  AxiomResult s1() const {
    for (const auto& [x, y, z, u] : ss_.tuples())
      if (!distinct4(x, y, z, u)) return fail("S1", {x, y, z, u});
    return ok("S1");
  }
  AxiomResult s2() const {
    for (const auto& [x, y, z, u] : ss_.tuples())
      if (!ss_.S(z, u, x, y) || !ss_.S(y, x, z, u)) return fail("S2", {x, y, z, u});
    return ok("S2");
  }
  AxiomResult s3() const {
    bool bad = false;
    Quad w{};
    for_distinct([&](std::size_t x, std::size_t y, std::size_t z, std::size_t u) {
      const bool e = ss_.E(x, y, z, u);
      if (e != ss_.E(y, x, z, u) || e != ss_.E(y, z, u, x)) {
        w = {x, y, z, u};
        bad = true;
      }
      return bad;
    });
    return bad ? fail("S3", {w[0], w[1], w[2], w[3]}) : ok("S3");
  }
  // Given the derived E, exactly-one reduces to at most one S alternative.
  AxiomResult s4() const {
    bool bad = false;
    Quad w{};
    for_distinct([&](std::size_t x, std::size_t y, std::size_t z, std::size_t u) {
      const int k = int(ss_.S(x, y, z, u)) + int(ss_.S(x, z, y, u)) + int(ss_.S(x, u, y, z));
      if (k > 1) {
        w = {x, y, z, u};
        bad = true;
      }
      return bad;
    });
    return bad ? fail("S4", {w[0], w[1], w[2], w[3]}) : ok("S4");
  }
  AxiomResult s4pp() const {
    for (const auto& [x, y, z, u] : ss_.tuples())
      if (!distinct4(x, y, z, u) || ss_.S(x, z, y, u) || ss_.S(x, u, y, z))
        return fail("S''4", {x, y, z, u});
    return ok("S''4");
  }
  // Exyzu ∧ Sxyuv ∧ z≠v ⇒ Sxzuv
  AxiomResult s5() const {
    bool bad = false;
    std::array<std::size_t, 5> w{};
    for_distinct([&](std::size_t x, std::size_t y, std::size_t z, std::size_t u) {
      if (!ss_.E(x, y, z, u)) return false;
      const Mask miss = ss_.sep_mask(x, y, u) & ~bit(z) & ~ss_.sep_mask(x, z, u);
      if (miss != 0) {
        w = {x, y, z, u, static_cast<std::size_t>(std::countr_zero(miss))};
        bad = true;
      }
      return bad;
    });
    return bad ? fail("S5", {w[0], w[1], w[2], w[3], w[4]}) : ok("S5");
  }
  AxiomResult eq() const {
    const auto tc = triple_classes(ss_);
    if (!tc.eq_failure) return ok("EQ");
    const auto& a = tc.sets[(*tc.eq_failure)[0]];
    const auto& b = tc.sets[(*tc.eq_failure)[1]];
    return fail("EQ", {a[0], a[1], a[2], b[0], b[1], b[2]});
  }

 private:
  // Stops at the first call returning true.
  template <typename F>
  void for_distinct(F&& f) const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        for (std::size_t z = 0; z < n_; ++z)
          for (std::size_t u = 0; u < n_; ++u)
            if (distinct4(x, y, z, u) && f(x, y, z, u)) return;
  }

  const SeparationStructure& ss_;
  std::size_t n_;
};

}  // namespace

AxiomReport check_S_axioms(const SeparationStructure& ss) {
  SChecker c(ss);
  return AxiomReport{{c.s1(), c.s2(), c.s3(), c.s4(), c.s4pp(), c.s5(), c.eq()}};
}

// ---------------------------------------------------------------------------
// Construction from S

namespace {

QuasiTree c54_unchecked(const SeparationStructure& ss) {
  const std::size_t n = ss.size();
  if (n < 3) return QuasiTree(ss.leaves());
  const auto tc = triple_classes(ss);
  if (tc.eq_failure) {
    const auto& a = tc.sets[(*tc.eq_failure)[0]];
    const auto& b = tc.sets[(*tc.eq_failure)[1]];
    throw PreconditionError("EQ fails at (" + ss.name(a[0]) + "," + ss.name(a[1]) + "," +
                            ss.name(a[2]) + "),(" + ss.name(b[0]) + "," + ss.name(b[1]) + "," +
                            ss.name(b[2]) + ")");
  }
  const std::size_t total = n + tc.count;
  if (total > kMaxMaskElements) throw PreconditionError("too many triple classes for a quasi-tree");

  // Class ids: leaves 0..n-1, internal classes n.. in order of least set.
  std::vector<std::size_t> cls(n * n * n, npos);
  std::vector<std::array<Mask, 64>> pairs(tc.count);  // pairs[c][x]: {z | c ∋ {x,?,z}}
  for (auto& p : pairs) p.fill(0);
  for (std::size_t s = 0; s < tc.sets.size(); ++s) {
    const auto [a, b, c] = tc.sets[s];
    const std::size_t k = tc.class_of[s];
    for (const auto& [x, y, z] : {Triple{a, b, c}, Triple{a, c, b}, Triple{b, a, c},
                                  Triple{b, c, a}, Triple{c, a, b}, Triple{c, b, a}}) {
      cls[(x * n + y) * n + z] = n + k;
      pairs[k][x] |= bit(y);
    }
  }

  // b0[x][k]: classes q with B'0(xxx, k, q).
  std::vector<Mask> b0(n * tc.count, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t k = 0; k < tc.count; ++k) b0[x * tc.count + k] = pairs[k][x] & ~bit(x);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        if (u == x || v == x || u == v) continue;
        const std::size_t p = cls[(x * n + u) * n + v];
        for_each_bit(ss.sep_mask(x, u, v), [&](std::size_t w) {
          const std::size_t q = cls[(x * n + v) * n + w];
          if (q != p) b0[x * tc.count + (p - n)] |= bit(q);
        });
      }
  }
  auto B0 = [&](std::size_t x, std::size_t p, std::size_t q) {
    return has(b0[x * tc.count + (p - n)], q);
  };

  std::vector<NodeId> names = ss.leaves();
  std::vector<NodeId> internal(tc.count);
  for (std::size_t s = 0; s < tc.sets.size(); ++s) {
    auto& nm = internal[tc.class_of[s]];
    if (!nm.empty()) continue;
    const auto [a, b, c] = tc.sets[s];
    nm = fresh_name("[" + ss.name(a) + "," + ss.name(b) + "," + ss.name(c) + "]", ss.leaves());
  }
  names.insert(names.end(), internal.begin(), internal.end());
  QuasiTree q(names);
  std::vector<std::size_t> qi(total);
  for (std::size_t c = 0; c < total; ++c) qi[c] = q.index(c < n ? ss.name(c) : internal[c - n]);

  for (std::size_t m = 0; m < total; ++m)
    for (std::size_t p = n; p < total; ++p) {
      if (p == m) continue;
      for (std::size_t r = 0; r < total; ++r) {
        if (r == m || r == p) continue;
        bool b = false;
        if (m < n) b = B0(m, p, r);
        if (!b && r < n) b = B0(r, p, m);
        if (!b && m >= n && r >= n)
          for (std::size_t u = 0; u < n && !b; ++u) b = B0(u, m, p) && B0(u, p, r) && B0(u, m, r);
        if (b) q.set(qi[m], qi[p], qi[r]);
      }
    }
  return q;
}

// Empty string when q is a leafy quasi-tree with leaves L and S_q = ss.
std::string c54_mismatch(const QuasiTree& q, const SeparationStructure& ss) {
  if (const auto* f = check_B_axioms(q).first_failure(kQuasiTreeAxioms)) {
    std::string w;
    for (const auto& s : f->witness) w += (w.empty() ? "" : ",") + s;
    return "reconstruction violates " + f->axiom + " at (" + w + ")";
  }
  if (!is_leafy(q)) return "reconstruction is not leafy";
  if (q.leaf_names() != ss.leaves()) return "reconstruction has different leaves";
  if (!(separation_relation(q) == ss)) return "separation structure does not round-trip";
  return {};
}

}  // namespace

QuasiTree reconstruct_c54(const SeparationStructure& ss) {
  auto q = c54_unchecked(ss);
  if (auto why = c54_mismatch(q, ss); !why.empty()) throw PreconditionError(why);
  return q;
}

Validity is_separation_structure(const SeparationStructure& ss) {
  try {
    reconstruct_c54(ss);
    return {true, {}};
  } catch (const PreconditionError& e) {
    return {false, e.what()};
  }
}

LeafStructure rooted_leaf_structure(const SeparationStructure& ss, const NodeId& r) {
  const std::size_t ri = ss.index(r);
  std::vector<NodeId> rest;
  for (const auto& l : ss.leaves())
    if (l != r) rest.push_back(l);
  LeafStructure ls(rest);
  std::vector<std::size_t> map;
  for (const auto& l : rest) map.push_back(ss.index(l));
  const std::size_t m = rest.size();
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t z = 0; z < m; ++z) {
        bool r_xyz;
        if (x == y || x == z) r_xyz = true;
        else if (y == z) r_xyz = false;
        else r_xyz = !ss.S(map[x], ri, map[y], map[z]);
        if (r_xyz) ls.set(x, y, z);
      }
  return ls;
}

QuasiTree reconstruct_via_rooting(const SeparationStructure& ss) {
  if (ss.size() < 3) return QuasiTree(ss.leaves());
  const NodeId& r = ss.name(0);
  const auto ls = rooted_leaf_structure(ss, r);
  require_leaf_axioms(ls);
  auto t = reconstruct_quotient(ls);
  if (t.find(r)) {
    const NodeId moved = fresh_name(r, t.names());
    t = t.relabel([&](const NodeId& id) { return id == r ? moved : id; });
  }
  auto names = t.names();
  names.push_back(r);
  auto parent = t.parent_map();
  parent.emplace(t.name(t.root()), r);
  return unroot(RootedTree::from_parents(names, parent));
}

// ---------------------------------------------------------------------------
// Set predicates and heredity

bool set_separation(const SeparationStructure& ss, const std::vector<NodeId>& a,
                    const std::vector<NodeId>& b) {
  if (a.size() < 2 || b.size() < 2) throw PreconditionError("SAB needs |A|,|B| >= 2");
  std::vector<std::size_t> ai, bi;
  for (const auto& x : a) ai.push_back(ss.index(x));
  for (const auto& x : b) bi.push_back(ss.index(x));
  for (auto x : ai)
    if (std::find(bi.begin(), bi.end(), x) != bi.end()) throw PreconditionError("SAB needs disjoint sets");
  for (auto x : ai)
    for (auto y : ai)
      for (auto z : bi)
        for (auto u : bi)
          if (x != y && z != u && !ss.S(x, y, z, u)) return false;
  return true;
}

bool set_E(const SeparationStructure& ss, const std::vector<NodeId>& a) {
  if (a.size() < 4) throw PreconditionError("EA needs |A| >= 4");
  std::vector<std::size_t> ai;
  for (const auto& x : a) ai.push_back(ss.index(x));
  for (auto x : ai)
    for (auto y : ai)
      for (auto z : ai)
        for (auto u : ai)
          if (distinct4(x, y, z, u) && !ss.E(x, y, z, u)) return false;
  return true;
}

bool heredity_check(const QuasiTree& q, const std::vector<NodeId>& xs) {
  return separation_relation(q).restrict_to(xs) == separation_structure(leafy_closure(q, xs));
}

// ---------------------------------------------------------------------------
// Completion of partial quasi-trees

namespace {

// sig[x] = {z leaf | Bxyz}, indexed by leaf position.
std::vector<Mask> pair_signature(const QuasiTree& q, std::size_t y, const std::vector<std::size_t>& L) {
  std::vector<Mask> sig(L.size(), 0);
  for (std::size_t a = 0; a < L.size(); ++a)
    for (std::size_t b = 0; b < L.size(); ++b)
      if (q.between(L[a], y, L[b])) sig[a] |= bit(b);
  return sig;
}

void require_partial(const QuasiTree& partial, const std::string& which) {
  if (const auto* f = check_B_axioms(partial, BMode::kPartial).first_failure(kPartialAxioms))
    throw PreconditionError(which + ": input is not a partial quasi-tree (" + f->axiom + " fails)");
}

void require_same_leaves(const QuasiTree& partial, const SeparationStructure& s, const char* which) {
  if (!s.leaves().empty() && s.leaves() != partial.leaf_names())
    throw PreconditionError(std::string(which) + ": leaves of S differ from the leaves of the input");
}

const char* completion_case(const QuasiTree& partial, const SeparationStructure& s) {
  if (!s.empty()) return "case 1";
  return partial.empty() ? "case 3" : "case 2";
}

}  // namespace

QuasiTree complete_partial(const QuasiTree& partial, const SeparationStructure& s) {
  const char* which = completion_case(partial, s);
  require_same_leaves(partial, s, which);
  const SeparationStructure& base = s.leaves().empty() ? SeparationStructure(partial.leaf_names()) : s;
  QuasiTree core;
  try {
    core = reconstruct_c54(base);
  } catch (const PreconditionError& e) {
    throw PreconditionError(std::string(which) + ": S is not a separation structure: " + e.what());
  }
  return complete_partial(partial, base, core);
}

QuasiTree complete_partial(const QuasiTree& partial, const SeparationStructure& s,
                           const QuasiTree& core) {
  const std::string which = completion_case(partial, s);
  require_partial(partial, which);
  require_same_leaves(partial, s, which.c_str());
  if (partial.leaf_names() != core.leaf_names())
    throw PreconditionError(which + ": reconstruction has different leaves");

  const auto PL = partial.leaves();
  const auto CL = core.leaves();
  const std::size_t nl = PL.size();
  const Mask core_leaves = core.leaf_mask();
  const Mask partial_leaves = partial.leaf_mask();
  const auto tree = underlying_tree(core);

  // Internal nodes of the core and the two sides of each core edge.
  std::map<std::vector<Mask>, std::size_t> node_of_sig;
  for (std::size_t c = 0; c < core.size(); ++c)
    if (!has(core_leaves, c)) node_of_sig.emplace(pair_signature(core, c, CL), c);
  struct Slot {
    std::size_t from, to;
  };
  std::map<std::vector<Mask>, Slot> edge_of_sig;
  std::map<std::pair<std::size_t, std::size_t>, Mask> side_of;
  for (auto [a, b] : tree.edges()) {
    Mask side_a = 0;  // leaves closer to a than to b
    for (std::size_t i = 0; i < nl; ++i)
      if (core.between(CL[i], a, b) || CL[i] == a) side_a |= bit(i);
    std::vector<Mask> sig(nl);
    for (std::size_t i = 0; i < nl; ++i) sig[i] = has(side_a, i) ? low_bits(nl) & ~side_a : side_a;
    edge_of_sig.emplace(sig, Slot{a, b});
    side_of[{a, b}] = side_a;
  }

  std::map<std::size_t, std::size_t> match;  // core node -> partial node
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> subdivisions;
  for (std::size_t y = 0; y < partial.size(); ++y) {
    if (has(partial_leaves, y)) continue;
    const auto sig = pair_signature(partial, y, PL);
    if (auto it = node_of_sig.find(sig); it != node_of_sig.end()) {
      if (!match.emplace(it->second, y).second)
        throw PreconditionError(which + ": two nodes of the input match one node");
    } else if (auto e = edge_of_sig.find(sig); e != edge_of_sig.end()) {
      subdivisions[{e->second.from, e->second.to}].push_back(y);
    } else {
      throw PreconditionError(which + ": node '" + partial.name(y) + "' fits no position");
    }
  }

  std::vector<NodeId> names = partial.names();
  std::vector<NodeId> core_name(core.size());
  for (std::size_t c = 0; c < core.size(); ++c) {
    if (has(core_leaves, c)) core_name[c] = core.name(c);
    else if (auto it = match.find(c); it != match.end()) core_name[c] = partial.name(it->second);
  }
  for (std::size_t c = 0; c < core.size(); ++c)
    if (core_name[c].empty()) {
      std::vector<NodeId> taken = names;
      std::sort(taken.begin(), taken.end());
      // With S empty the only core node is the synthesized star center.
      core_name[c] = fresh_name(s.empty() ? kCenterName : core.name(c), taken);
      names.push_back(core_name[c]);
    }

  std::vector<std::pair<NodeId, NodeId>> edges;
  for (auto [a, b] : tree.edges()) {
    auto it = subdivisions.find({a, b});
    if (it == subdivisions.end()) {
      edges.emplace_back(core_name[a], core_name[b]);
      continue;
    }
    // Order subdivision nodes from a to b using a leaf on a's side.
    auto& ys = it->second;
    const std::size_t xa = PL[static_cast<std::size_t>(std::countr_zero(side_of.at({a, b})))];
    std::sort(ys.begin(), ys.end(), [&](std::size_t p, std::size_t q) {
      return partial.between(xa, p, q);
    });
    NodeId prev = core_name[a];
    for (auto y : ys) {
      edges.emplace_back(prev, partial.name(y));
      prev = partial.name(y);
    }
    edges.emplace_back(prev, core_name[b]);
  }
  auto out = betweenness_of_tree(UnrootedTree::from_edges(names, edges));
  if (!(induced(out, partial.names()) == partial))
    throw PreconditionError(which + ": deleting the added nodes does not give the input");
  if (!(separation_relation(out) == s)) throw PreconditionError(which + ": separation differs from S");
  return out;
}

}  // namespace leafbridge
