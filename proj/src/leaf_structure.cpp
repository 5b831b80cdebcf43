#include "leafbridge/leaf_structure.hpp"

#include <algorithm>
#include <set>

#include "leafbridge/error.hpp"

namespace leafbridge {

LeafStructure::LeafStructure(std::vector<NodeId> leaves) {
  std::sort(leaves.begin(), leaves.end());
  if (auto it = std::adjacent_find(leaves.begin(), leaves.end()); it != leaves.end())
    throw InputError("duplicate leaf '" + *it + "'");
  if (leaves.size() > kMaxMaskElements)
    throw InputError("leaf structures are limited to 64 leaves");
  leaves_ = std::move(leaves);
  n_ = leaves_.size();
  in_.assign(n_ * n_, 0);
}

LeafStructure LeafStructure::from_triples(std::vector<NodeId> leaves,
                                          const std::vector<std::array<NodeId, 3>>& triples) {
  LeafStructure ls(std::move(leaves));
  for (const auto& [x, y, z] : triples) ls.set(ls.index(x), ls.index(y), ls.index(z));
  return ls;
}

std::optional<std::size_t> LeafStructure::find(const NodeId& id) const {
  auto it = std::lower_bound(leaves_.begin(), leaves_.end(), id);
  if (it == leaves_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - leaves_.begin());
}

std::size_t LeafStructure::index(const NodeId& id) const {
  if (auto i = find(id)) return *i;
  throw InputError("unknown leaf '" + id + "'");
}

void LeafStructure::set(std::size_t x, std::size_t y, std::size_t z, bool v) noexcept {
  Mask& m = in_[y * n_ + z];
  m = v ? (m | bit(x)) : (m & ~bit(x));
}

std::vector<Triple> LeafStructure::triples() const {
  std::vector<Triple> out;
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t y = 0; y < n_; ++y)
      for (std::size_t z = 0; z < n_; ++z)
        if (holds(x, y, z)) out.push_back({x, y, z});
  return out;
}

std::size_t LeafStructure::triple_count() const {
  std::size_t c = 0;
  for (Mask m : in_) c += static_cast<std::size_t>(popcount(m));
  return c;
}

void LeafStructure::close_a1_a2() {
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t y = 0; y < n_; ++y) {
      set(x, x, y);
      set(x, y, x);
    }
  for (std::size_t y = 0; y < n_; ++y)
    for (std::size_t z = y + 1; z < n_; ++z) {
      const Mask m = in_[y * n_ + z] | in_[z * n_ + y];
      in_[y * n_ + z] = in_[z * n_ + y] = m;
    }
}

LeafStructure LeafStructure::induced(const std::vector<NodeId>& keep) const {
  LeafStructure out(keep);
  std::vector<std::size_t> map;
  for (const auto& k : out.leaves()) map.push_back(index(k));
  const std::size_t m = out.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        if (holds(map[a], map[b], map[c])) out.set(a, b, c);
  return out;
}

LeafStructure leaf_structure(const RootedTree& t) {
  require_leafy_tree(t);
  const auto leaves = t.leaves();
  std::vector<NodeId> names;
  for (auto i : leaves) names.push_back(t.name(i));
  LeafStructure ls(names);
  const std::size_t n = leaves.size();
  // below[u] as a leaf mask, accumulated upwards.
  std::vector<Mask> below(t.size(), 0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t u = leaves[k]; u != npos; u = t.parent(u)) below[u] |= bit(k);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t z = 0; z < n; ++z) {
      const Mask m = below[join(t, leaves[y], leaves[z])];
      for_each_bit(m, [&](std::size_t x) { ls.set(x, y, z); });
    }
  return ls;
}

// ---------------------------------------------------------------------------
// Axioms

namespace {

class Checker {
 public:
  explicit Checker(const LeafStructure& ls) : ls_(ls), n_(ls.size()) {}

  AxiomResult fail(const char* axiom, std::initializer_list<std::size_t> w) const {
    AxiomResult r{axiom, false, {}};
    for (auto i : w) r.witness.push_back(ls_.name(i));
    return r;
  }

  static AxiomResult ok(const char* axiom) { return {axiom, true, {}}; }

  AxiomResult a1() const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        if (!R(x, x, y)) return fail("A1", {x, y});
    return ok("A1");
  }
  AxiomResult a2() const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        for (std::size_t z = 0; z < n_; ++z)
          if (R(x, y, z) && !R(x, z, y)) return fail("A2", {x, y, z});
    return ok("A2");
  }
  AxiomResult a3() const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        if (x != y && R(x, y, y)) return fail("A3", {x, y});
    return ok("A3");
  }
  // Rxyz ∧ Ryuv ∧ Rzuv ⇒ Rxuv
  AxiomResult a4() const {
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = 0; v < n_; ++v) {
        const Mask s = M(u, v);
        for (std::size_t y : bits_of(s))
          for (std::size_t z : bits_of(s))
            if (Mask bad = M(y, z) & ~s)
              return fail("A4", {lowest(bad), y, z, u, v});
      }
    return ok("A4");
  }
  // Rxyz ∧ Rxuv ⇒ (Ryuv ∧ Rzuv) ∨ (Ruyz ∧ Rvyz)
  AxiomResult a5() const {
    for (std::size_t y = 0; y < n_; ++y)
      for (std::size_t z = 0; z < n_; ++z)
        for (std::size_t u = 0; u < n_; ++u)
          for (std::size_t v = 0; v < n_; ++v) {
            const Mask common = M(y, z) & M(u, v);
            if (common == 0) continue;
            if (R(y, u, v) && R(z, u, v)) continue;
            if (R(u, y, z) && R(v, y, z)) continue;
            return fail("A5", {lowest(common), y, z, u, v});
          }
    return ok("A5");
  }
  // Rxyz ∧ Ruxy ⇒ Ruyz
  AxiomResult a6() const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        for (std::size_t z = 0; z < n_; ++z)
          if (R(x, y, z))
            if (Mask bad = M(x, y) & ~M(y, z)) return fail("A6", {x, y, z, lowest(bad)});
    return ok("A6");
  }
  AxiomResult a7() const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        for (std::size_t z = 0; z < n_; ++z)
          if (!R(x, y, z) && !R(z, x, y)) return fail("A7", {x, y, z});
    return ok("A7");
  }
  AxiomResult a8() const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        for (std::size_t z = 0; z < n_; ++z)
          if (!R(x, y, z) && !(R(y, x, z) && R(z, x, y))) return fail("A8", {x, y, z});
    return ok("A8");
  }
  AxiomResult a9() const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        for (std::size_t z = 0; z < n_; ++z)
          if (R(x, y, z) && !R(y, x, z) && !R(z, x, y)) return fail("A9", {x, y, z});
    return ok("A9");
  }
  // R0xyz ⊕ R1xyz ⊕ R1yzx ⊕ R1zxy: one R1 term per leaf left out of the
  // smallest join.
  AxiomResult a10() const {
    auto r0 = [&](auto x, auto y, auto z) { return R(x, y, z) && R(y, x, z) && R(z, x, y); };
    auto r1 = [&](auto x, auto y, auto z) { return R(x, y, z) && R(y, x, z) && !R(z, x, y); };
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        for (std::size_t z = 0; z < n_; ++z) {
          const int k = r0(x, y, z) + r1(x, y, z) + r1(y, z, x) + r1(z, x, y);
          if (k != 1) return fail("A10", {x, y, z});
        }
    return ok("A10");
  }

 private:
  bool R(std::size_t x, std::size_t y, std::size_t z) const { return ls_.holds(x, y, z); }
  Mask M(std::size_t y, std::size_t z) const { return ls_.middle(y, z); }
  static std::size_t lowest(Mask m) { return static_cast<std::size_t>(std::countr_zero(m)); }

  const LeafStructure& ls_;
  std::size_t n_;
};

}  // namespace

AxiomReport check_axioms(const LeafStructure& ls) {
  Checker c(ls);
  return {{c.a1(), c.a2(), c.a3(), c.a4(), c.a5(), c.a6(), c.a7(), c.a8(), c.a9(), c.a10()}};
}

bool derivations_consistent(const AxiomReport& report) {
  return !report.passes(kLeafAxiomsCore) || report.passes(kLeafAxiomsDerived);
}

void require_leaf_axioms(const LeafStructure& ls) {
  Checker c(ls);
  for (auto r : {c.a1(), c.a2(), c.a3(), c.a4(), c.a5()})
    if (!r.pass) throw AxiomViolation(r.axiom, r.witness);
}

// ---------------------------------------------------------------------------
// Quotient construction

QuotientTree quotient_tree(const LeafStructure& ls) {
  require_leaf_axioms(ls);
  const std::size_t n = ls.size();
  if (n == 0) throw PreconditionError("empty leaf structure");
  // xy ⊑ zu  iff  Rxzu ∧ Ryzu
  auto below = [&](std::size_t p, std::size_t q) {
    const Mask m = ls.middle(q / n, q % n);
    return has(m, p / n) && has(m, p % n);
  };
  std::vector<std::size_t> reps;  // least pair of each class, in order of discovery
  std::vector<std::size_t> cls(n * n);
  for (std::size_t p = 0; p < n * n; ++p) {
    std::size_t c = 0;
    while (c < reps.size() && !(below(p, reps[c]) && below(reps[c], p))) ++c;
    if (c == reps.size()) reps.push_back(p);
    cls[p] = c;
  }
  const std::size_t k = reps.size();
  std::vector<std::size_t> ups(k, 0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (a != b && below(reps[a], reps[b])) ++ups[a];

  std::set<NodeId> taken(ls.leaves().begin(), ls.leaves().end());
  std::vector<NodeId> name(k);
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t x = reps[c] / n, y = reps[c] % n;
    if (x == y) {
      name[c] = ls.name(x);
      continue;
    }
    NodeId base = "[" + ls.name(x) + "," + ls.name(y) + "]";
    while (taken.contains(base)) base += "'";
    taken.insert(base);
    name[c] = base;
  }
  std::map<NodeId, NodeId> parent;
  for (std::size_t a = 0; a < k; ++a) {
    std::size_t best = npos;
    for (std::size_t b = 0; b < k; ++b)
      if (a != b && below(reps[a], reps[b]) && !below(reps[b], reps[a]) &&
          (best == npos || ups[b] > ups[best]))
        best = b;
    if (best != npos) parent.emplace(name[a], name[best]);
  }
  QuotientTree q;
  q.tree = RootedTree::from_parents(name, parent);
  if (!q.tree.is_tree()) throw PreconditionError("quotient is not a tree");
  q.n = n;
  q.class_of.resize(n * n);
  q.representative.resize(k);
  for (std::size_t c = 0; c < k; ++c)
    q.representative[q.tree.index(name[c])] = {reps[c] / n, reps[c] % n};
  for (std::size_t p = 0; p < n * n; ++p) q.class_of[p] = q.tree.index(name[cls[p]]);
  return q;
}

RootedTree reconstruct_quotient(const LeafStructure& ls) { return quotient_tree(ls).tree; }

std::size_t join_depth(const LeafStructure& ls, const NodeId& x, const NodeId& y) {
  const auto q = quotient_tree(ls);
  return q.tree.depth(q.node(ls.index(x), ls.index(y)));
}

bool is_son(const LeafStructure& ls, const NodeId& x, const NodeId& y, const NodeId& z,
            const NodeId& u) {
  const auto q = quotient_tree(ls);
  return q.tree.parent(q.node(ls.index(x), ls.index(y))) == q.node(ls.index(z), ls.index(u));
}

bool is_root(const LeafStructure& ls, const NodeId& x, const NodeId& y) {
  return join_depth(ls, x, y) == 0;
}

}  // namespace leafbridge
