#include "leafbridge/model_search.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "leafbridge/error.hpp"
#include "leafbridge/sat.hpp"

namespace leafbridge {

// ---------------------------------------------------------------------------
// RelationalStructure

RelationalStructure::RelationalStructure(std::vector<NodeId> domain, std::size_t arity)
    : domain_(std::move(domain)), arity_(arity) {
  if (arity != 3 && arity != 4) throw InputError("relational structure: arity must be 3 or 4");
  if (domain_.size() > 64) throw InputError("relational structure: more than 64 elements");
  auto sorted = domain_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("relational structure: duplicate element");
  std::size_t cells = 1;
  for (std::size_t i = 0; i < arity; ++i) cells *= domain_.size();
  rel_.assign(cells, 0);
}

RelationalStructure::RelationalStructure(std::size_t n, std::size_t arity)
    : RelationalStructure(default_labels(n), arity) {}

std::size_t RelationalStructure::offset(const std::vector<std::size_t>& t) const {
  if (t.size() != arity_) throw PreconditionError("relational structure: tuple of wrong length");
  std::size_t off = 0;
  for (auto v : t) {
    if (v >= domain_.size()) throw PreconditionError("relational structure: element out of range");
    off = off * domain_.size() + v;
  }
  return off;
}

std::vector<std::vector<std::size_t>> RelationalStructure::tuples() const {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = domain_.size();
  for (std::size_t off = 0; off < rel_.size(); ++off) {
    if (!rel_[off]) continue;
    std::vector<std::size_t> t(arity_);
    std::size_t rest = off;
    for (std::size_t i = arity_; i-- > 0;) {
      t[i] = rest % n;
      rest /= n;
    }
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

void require_arity(const RelationalStructure& m, std::size_t arity, const char* what) {
  if (m.arity() != arity)
    throw PreconditionError(std::string(what) + ": needs arity " + std::to_string(arity) + ", got " +
                            std::to_string(m.arity()));
}

}  // namespace

RelationalStructure to_relational(const LeafStructure& ls) {
  RelationalStructure m(ls.leaves(), 3);
  for (const auto& [x, y, z] : ls.triples()) m.set({x, y, z});
  return m;
}

RelationalStructure to_relational(const QuasiTree& q) {
  RelationalStructure m(q.names(), 3);
  for (const auto& [x, y, z] : q.triples()) m.set({x, y, z});
  return m;
}

RelationalStructure to_relational(const SeparationStructure& ss) {
  RelationalStructure m(ss.leaves(), 4);
  for (const auto& [x, y, z, u] : ss.tuples()) m.set({x, y, z, u});
  return m;
}

LeafStructure to_leaf_structure(const RelationalStructure& m) {
  require_arity(m, 3, "to_leaf_structure");
  LeafStructure ls(m.domain());
  for (const auto& t : m.tuples()) ls.set(ls.index(m.name(t[0])), ls.index(m.name(t[1])), ls.index(m.name(t[2])));
  return ls;
}

QuasiTree to_quasi_tree(const RelationalStructure& m) {
  require_arity(m, 3, "to_quasi_tree");
  QuasiTree q(m.domain());
  for (const auto& t : m.tuples()) q.set(q.index(m.name(t[0])), q.index(m.name(t[1])), q.index(m.name(t[2])));
  return q;
}

SeparationStructure to_separation_structure(const RelationalStructure& m) {
  require_arity(m, 4, "to_separation_structure");
  SeparationStructure ss(m.domain());
  for (const auto& t : m.tuples())
    ss.set(ss.index(m.name(t[0])), ss.index(m.name(t[1])), ss.index(m.name(t[2])), ss.index(m.name(t[3])));
  return ss;
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

struct CatalogEntry {
  std::string text;
  bool exact = true;
};

const std::vector<std::pair<std::string, CatalogEntry>>& catalog_entries() {
  static const std::vector<std::pair<std::string, CatalogEntry>> c = {
      {"A1", {"forall x y. R(x,x,y)"}},
      {"A2", {"forall x y z. R(x,y,z) -> R(x,z,y)"}},
      {"A3", {"forall x y. R(x,y,y) -> x = y"}},
      {"A4", {"forall x y z u v. R(x,y,z) & R(y,u,v) & R(z,u,v) -> R(x,u,v)"}},
      {"A5", {"forall x y z u v. R(x,y,z) & R(x,u,v) -> (R(y,u,v) & R(z,u,v)) | (R(u,y,z) & R(v,y,z))"}},
      {"A6", {"forall x y z u. R(x,y,z) & R(u,x,y) -> R(u,y,z)"}},
      {"A7", {"forall x y z. R(x,y,z) | R(z,x,y)"}},
      {"A8", {"forall x y z. !R(x,y,z) -> R(y,x,z) & R(z,x,y)"}},
      {"A9", {"forall x y z. R(x,y,z) -> R(y,x,z) | R(z,x,y)"}},
      {"A10", {"forall x y z. one(R0(x,y,z), R1(x,y,z), R1(y,z,x), R1(z,x,y))"}},
      {"B1", {"forall x y z. B(x,y,z) -> distinct(x,y,z)"}},
      {"B2", {"forall x y z. B(x,y,z) -> B(z,y,x)"}},
      {"B3", {"forall x y z. B(x,y,z) -> !B(x,z,y)"}},
      {"B4", {"forall x y z u. B(x,y,z) & B(y,z,u) -> B(x,y,u) & B(x,z,u)"}},
      {"B5", {"forall x y z u. B(x,y,z) & B(x,u,y) -> B(x,u,z) & B(u,y,z)"}},
      {"B6", {"forall x y z u. B(x,y,z) & B(x,u,z) -> y = u | (B(x,y,u) & B(y,u,z)) | (B(x,u,y) & B(u,y,z))"}},
      {"B7", {"forall x y z. distinct(x,y,z) & !A(x,y,z) -> exists w. B(x,w,y) & B(y,w,z) & B(x,w,z)"}},
      {"B8", {"forall x y z u. distinct(x,y,z,u) & B(x,y,z) & !A(y,z,u) -> B(x,y,u)"}},
      {"S1", {"forall x y z u. S(x,y,z,u) | E(x,y,z,u) -> distinct(x,y,z,u)"}},
      {"S2", {"forall x y z u. S(x,y,z,u) -> S(z,u,x,y) & S(y,x,z,u)"}},
      {"S3", {"forall x y z u. E(x,y,z,u) -> E(y,x,z,u) & E(y,z,u,x)"}},
      {"S4", {"forall x y z u. distinct(x,y,z,u) -> one(E(x,y,z,u), S(x,y,z,u), S(x,z,y,u), S(x,u,y,z))"}},
      {"S''4", {"forall x y z u. S(x,y,z,u) -> distinct(x,y,z,u) & !S(x,z,y,u) & !S(x,u,y,z)"}},
      {"S5", {"forall x y z u v. E(x,y,z,u) & S(x,y,u,v) & z != v -> S(x,z,u,v)"}},
      {"EQ",
       {"forall x y z w v. "
        "(distinct(x,y,z,w,v) & (E(x,y,z,w) | S(x,y,z,w)) & (E(x,y,w,v) | S(x,y,w,v)) "
        "-> E(x,y,z,v) | S(x,y,z,v)) & "
        "(distinct(x,y,z,w) & (E(x,y,z,w) | S(x,y,z,w)) & (E(x,w,y,z) | S(x,w,y,z)) "
        "-> E(x,z,y,w) | S(x,z,y,w))",
        false}},
  };
  return c;
}

const CatalogEntry& entry(const std::string& name) {
  for (const auto& [n, e] : catalog_entries())
    if (n == name) return e;
  throw InputError("unknown axiom '" + name + "'");
}

}  // namespace

const std::vector<std::string>& axiom_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, e] : catalog_entries()) v.push_back(n);
    return v;
  }();
  return names;
}

const std::string& axiom_text(const std::string& name) { return entry(name).text; }

const ParsedFormula& axiom_formula(const std::string& name) {
  static const std::map<std::string, ParsedFormula> parsed = [] {
    std::map<std::string, ParsedFormula> m;
    for (const auto& [n, e] : catalog_entries()) m.emplace(n, parse_formula(e.text));
    return m;
  }();
  entry(name);
  return parsed.at(name);
}

std::size_t axiom_arity(const std::string& name) { return axiom_formula(name).arity; }

bool axiom_is_exact(const std::string& name) { return entry(name).exact; }

// ---------------------------------------------------------------------------
// Evaluation

namespace {

using Env = std::vector<std::size_t>;

bool eval(const Formula& f, const RelationalStructure& m, Env& env) {
  using Op = Formula::Op;
  switch (f.op) {
    case Op::kTrue: return true;
    case Op::kFalse: return false;
    case Op::kAtom: {
      std::vector<std::size_t> t;
      for (int v : f.vars) t.push_back(env[static_cast<std::size_t>(v)]);
      return m.holds(t);
    }
    case Op::kEq: return env[static_cast<std::size_t>(f.vars[0])] == env[static_cast<std::size_t>(f.vars[1])];
    case Op::kNot: return !eval(f.kids[0], m, env);
    case Op::kAnd:
      for (const auto& k : f.kids)
        if (!eval(k, m, env)) return false;
      return true;
    case Op::kOr:
      for (const auto& k : f.kids)
        if (eval(k, m, env)) return true;
      return false;
    case Op::kForall:
    case Op::kExists: {
      const bool want = f.op == Op::kForall;
      const std::size_t k = f.vars.size();
      const std::size_t n = m.size();
      std::vector<std::size_t> a(k, 0);
      if (n == 0) return want;
      for (;;) {
        for (std::size_t i = 0; i < k; ++i) env[static_cast<std::size_t>(f.vars[i])] = a[i];
        if (eval(f.kids[0], m, env) != want) return !want;
        std::size_t i = k;
        while (i > 0 && ++a[i - 1] == n) a[--i] = 0;
        if (i == 0) return want;
      }
    }
  }
  return false;
}

// Leading universal block: variables and the body below it.
std::pair<std::vector<int>, const Formula*> peel_forall(const Formula& f) {
  std::vector<int> vars;
  const Formula* body = &f;
  while (body->op == Formula::Op::kForall) {
    vars.insert(vars.end(), body->vars.begin(), body->vars.end());
    body = &body->kids[0];
  }
  return {vars, body};
}

}  // namespace

AxiomResult evaluate(const ParsedFormula& f, const RelationalStructure& m, const std::string& label) {
  if (f.arity != 0 && f.arity != m.arity())
    throw PreconditionError("evaluate: formula arity " + std::to_string(f.arity) + " on a structure of arity " +
                            std::to_string(m.arity()));
  AxiomResult r{label, true, {}};
  Env env(f.var_names.size(), 0);
  const auto [vars, body] = peel_forall(f.formula);
  const std::size_t n = m.size();
  if (vars.empty()) {
    r.pass = eval(*body, m, env);
    return r;
  }
  if (n == 0) return r;
  std::vector<std::size_t> a(vars.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < vars.size(); ++i) env[static_cast<std::size_t>(vars[i])] = a[i];
    if (!eval(*body, m, env)) {
      r.pass = false;
      for (auto v : a) r.witness.push_back(m.name(v));
      return r;
    }
    std::size_t i = vars.size();
    while (i > 0 && ++a[i - 1] == n) a[--i] = 0;
    if (i == 0) return r;
  }
}

AxiomResult evaluate_axiom(const std::string& name, const RelationalStructure& m) {
  return evaluate(axiom_formula(name), m, name);
}

AxiomReport check_named_axioms(const RelationalStructure& m, const AxiomSet& names) {
  std::optional<AxiomReport> a, b_full, b_partial, s;
  AxiomReport out;
  for (const auto& name : names) {
    const std::size_t arity = axiom_arity(name);
    if (arity != m.arity())
      throw InputError("axiom " + name + " has arity " + std::to_string(arity) + ", structure has " +
                       std::to_string(m.arity()));
    const AxiomReport* rep = nullptr;
    if (name[0] == 'A') {
      if (!a) a = check_axioms(to_leaf_structure(m));
      rep = &*a;
    } else if (name == "B8") {
      if (!b_partial) b_partial = check_B_axioms(to_quasi_tree(m), BMode::kPartial);
      rep = &*b_partial;
    } else if (name[0] == 'B') {
      if (!b_full) b_full = check_B_axioms(to_quasi_tree(m), BMode::kFull);
      rep = &*b_full;
    } else {
      if (!s) s = check_S_axioms(to_separation_structure(m));
      rep = &*s;
    }
    const auto* r = rep->find(name);
    if (r == nullptr) throw Error("no checker result for " + name);
    out.results.push_back(*r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Grounding

namespace {

struct Ground {
  enum class Kind { kTrue, kFalse, kLit, kAnd, kOr };
  Kind kind = Kind::kTrue;
  int lit = 0;
  std::vector<Ground> kids;
};

Ground constant(bool v) { return Ground{v ? Ground::Kind::kTrue : Ground::Kind::kFalse, 0, {}}; }

// Flattening constructor for And/Or with constant folding.
Ground combine(Ground::Kind kind, std::vector<Ground> parts) {
  const bool is_and = kind == Ground::Kind::kAnd;
  const auto absorbing = is_and ? Ground::Kind::kFalse : Ground::Kind::kTrue;
  const auto neutral = is_and ? Ground::Kind::kTrue : Ground::Kind::kFalse;
  Ground g{kind, 0, {}};
  for (auto& p : parts) {
    if (p.kind == absorbing) return p;
    if (p.kind == neutral) continue;
    if (p.kind == kind) {
      for (auto& k : p.kids) g.kids.push_back(std::move(k));
    } else {
      g.kids.push_back(std::move(p));
    }
  }
  if (g.kids.empty()) return constant(is_and);
  if (g.kids.size() == 1) return std::move(g.kids[0]);
  return g;
}

class Grounder {
 public:
  Grounder(std::size_t n, std::size_t arity) : n_(n), arity_(arity) {}

  // Negation normal form of f (or of ¬f when !positive) under env.
  Ground ground(const Formula& f, Env& env, bool positive) const {
    using Op = Formula::Op;
    switch (f.op) {
      case Op::kTrue: return constant(positive);
      case Op::kFalse: return constant(!positive);
      case Op::kAtom: {
        std::size_t off = 0;
        for (int v : f.vars) off = off * n_ + env[static_cast<std::size_t>(v)];
        const int var = static_cast<int>(off) + 1;
        return Ground{Ground::Kind::kLit, positive ? var : -var, {}};
      }
      case Op::kEq:
        return constant((env[static_cast<std::size_t>(f.vars[0])] == env[static_cast<std::size_t>(f.vars[1])]) ==
                        positive);
      case Op::kNot: return ground(f.kids[0], env, !positive);
      case Op::kAnd:
      case Op::kOr: {
        const bool conj = (f.op == Op::kAnd) == positive;
        std::vector<Ground> parts;
        for (const auto& k : f.kids) {
          auto g = ground(k, env, positive);
          if (g.kind == (conj ? Ground::Kind::kFalse : Ground::Kind::kTrue)) return g;
          parts.push_back(std::move(g));
        }
        return combine(conj ? Ground::Kind::kAnd : Ground::Kind::kOr, std::move(parts));
      }
      case Op::kForall:
      case Op::kExists: {
        const bool conj = (f.op == Op::kForall) == positive;
        const std::size_t k = f.vars.size();
        std::vector<std::size_t> a(k, 0);
        std::vector<Ground> parts;
        for (;;) {
          for (std::size_t i = 0; i < k; ++i) env[static_cast<std::size_t>(f.vars[i])] = a[i];
          auto g = ground(f.kids[0], env, positive);
          if (g.kind == (conj ? Ground::Kind::kFalse : Ground::Kind::kTrue)) return g;
          parts.push_back(std::move(g));
          std::size_t i = k;
          while (i > 0 && ++a[i - 1] == n_) a[--i] = 0;
          if (i == 0) break;
        }
        return combine(conj ? Ground::Kind::kAnd : Ground::Kind::kOr, std::move(parts));
      }
    }
    return constant(false);
  }

  std::size_t relation_vars() const {
    std::size_t cells = 1;
    for (std::size_t i = 0; i < arity_; ++i) cells *= n_;
    return cells;
  }

 private:
  std::size_t n_;
  std::size_t arity_;
};

using Clause = std::vector<int>;

// CNF of g; disjunctions whose expansion would grow past a small bound get a
// fresh variable a with a → (clauses of the disjunct) added to the solver.
std::vector<Clause> to_cnf(const Ground& g, SatSolver& s) {
  constexpr std::size_t kMaxProduct = 32;
  switch (g.kind) {
    case Ground::Kind::kTrue: return {};
    case Ground::Kind::kFalse: return {Clause{}};
    case Ground::Kind::kLit: return {Clause{g.lit}};
    case Ground::Kind::kAnd: {
      std::vector<Clause> out;
      for (const auto& k : g.kids) {
        auto c = to_cnf(k, s);
        out.insert(out.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
      }
      return out;
    }
    case Ground::Kind::kOr: {
      std::vector<Clause> acc{Clause{}};
      for (const auto& k : g.kids) {
        auto c = to_cnf(k, s);
        if (c.empty()) return {};
        if (c.size() > 1 && acc.size() * c.size() > kMaxProduct) {
          const int a = s.new_var();
          for (auto& cl : c) {
            cl.push_back(-a);
            s.add_clause(cl);
          }
          c = {Clause{a}};
        }
        std::vector<Clause> next;
        next.reserve(acc.size() * c.size());
        for (const auto& x : acc)
          for (const auto& y : c) {
            Clause z = x;
            z.insert(z.end(), y.begin(), y.end());
            next.push_back(std::move(z));
          }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return {};
}

void assert_ground(const Ground& g, SatSolver& s, int guard = 0) {
  for (auto& c : to_cnf(g, s)) {
    if (guard != 0) c.push_back(-guard);
    s.add_clause(std::move(c));
  }
}

// Restricted growth strings of length k over at most n values.
void for_each_pattern(std::size_t k, std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> p(k, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == k) {
      f(p);
      return;
    }
    for (std::size_t v = 0; v <= used && v < n; ++v) {
      p[i] = v;
      rec(i + 1, std::max(used, v + 1));
    }
  };
  rec(0, 0);
}

std::size_t check_arity(const AxiomSet& satisfy, const std::string& violate) {
  const std::size_t arity = axiom_arity(violate);
  for (const auto& a : satisfy)
    if (axiom_arity(a) != arity)
      throw InputError("axioms of different arities: " + a + " and " + violate);
  return arity;
}

bool contains(const AxiomSet& s, const std::string& a) { return std::find(s.begin(), s.end(), a) != s.end(); }

class Search {
 public:
  Search(std::size_t n, const AxiomSet& satisfy, const std::string& violate, std::size_t arity)
      : n_(n), satisfy_(satisfy), violate_(violate), arity_(arity), grounder_(n, arity) {
    // The EQ formula is a necessary condition only when S is S2-symmetric.
    shadow_sound_ = contains(satisfy, "S2");
  }

  std::optional<Countermodel> run() {
    if (axiom_is_exact(violate_) || shadow_sound_) {
      if (auto m = solve_phase(true)) return m;
      if (axiom_is_exact(violate_)) return std::nullopt;
    }
    return solve_phase(false);
  }

 private:
  // encode_violation: add ¬violate with canonical witness placement; otherwise
  // enumerate models of `satisfy` (plus the EQ shadow when sound) until the
  // checker reports the violation.
  std::optional<Countermodel> solve_phase(bool encode_violation) {
    SatSolver s;
    const std::size_t cells = grounder_.relation_vars();
    for (std::size_t i = 0; i < cells; ++i) s.new_var();
    for (const auto& a : satisfy_) {
      if (!axiom_is_exact(a) && !shadow_sound_) continue;
      Env env(axiom_formula(a).var_names.size(), 0);
      assert_ground(grounder_.ground(axiom_formula(a).formula, env, true), s);
    }
    if (encode_violation) {
      const auto& pf = axiom_formula(violate_);
      const auto [vars, body] = peel_forall(pf.formula);
      std::vector<int> selectors;
      for_each_pattern(vars.size(), n_, [&](const std::vector<std::size_t>& p) {
        Env env(pf.var_names.size(), 0);
        for (std::size_t i = 0; i < vars.size(); ++i) env[static_cast<std::size_t>(vars[i])] = p[i];
        auto g = grounder_.ground(*body, env, false);
        if (g.kind == Ground::Kind::kFalse) return;
        const int sel = s.new_var();
        selectors.push_back(sel);
        assert_ground(g, s, sel);
      });
      if (selectors.empty()) return std::nullopt;
      s.add_clause(selectors);
    } else if (!axiom_is_exact(violate_) && shadow_sound_) {
      Env env(axiom_formula(violate_).var_names.size(), 0);
      assert_ground(grounder_.ground(axiom_formula(violate_).formula, env, true), s);
    }
    AxiomSet names = satisfy_;
    names.push_back(violate_);
    while (s.solve()) {
      RelationalStructure m(n_, arity_);
      for (std::size_t i = 0; i < cells; ++i) m.set_at(i, s.model_value(static_cast<int>(i) + 1));
      auto table = check_named_axioms(m, names);
      bool ok = true;
      for (std::size_t i = 0; i < names.size(); ++i) {
        const bool expected = i + 1 < names.size();
        if (table.results[i].pass == expected) continue;
        ok = false;
        if (axiom_is_exact(names[i]) && (encode_violation || expected))
          throw Error("model search: formula and checker disagree on " + names[i]);
      }
      if (ok) return Countermodel{std::move(m), std::move(table)};
      Clause block;
      for (std::size_t i = 0; i < cells; ++i) {
        const int v = static_cast<int>(i) + 1;
        block.push_back(s.model_value(v) ? -v : v);
      }
      s.add_clause(std::move(block));
    }
    return std::nullopt;
  }

  std::size_t n_;
  const AxiomSet& satisfy_;
  const std::string& violate_;
  std::size_t arity_;
  Grounder grounder_;
  bool shadow_sound_ = false;
};

}  // namespace

std::optional<Countermodel> find_countermodel(std::size_t domain_size, const AxiomSet& satisfy,
                                              const std::string& violate, std::size_t arity) {
  const std::size_t actual = check_arity(satisfy, violate);
  if (arity != actual)
    throw InputError("find_countermodel: axioms have arity " + std::to_string(actual) + ", requested " +
                     std::to_string(arity));
  if (domain_size == 0 || domain_size > kMaxSearchDomain)
    throw PreconditionError("find_countermodel: domain size must be in 1.." + std::to_string(kMaxSearchDomain) +
                            ", got " + std::to_string(domain_size));
  return Search(domain_size, satisfy, violate, arity).run();
}

SearchOutcome find_minimal_countermodel(const AxiomSet& satisfy, const std::string& violate,
                                        std::size_t max_domain) {
  const std::size_t arity = check_arity(satisfy, violate);
  if (max_domain > kMaxSearchDomain)
    throw PreconditionError("domain bound " + std::to_string(max_domain) + " exceeds " +
                            std::to_string(kMaxSearchDomain));
  SearchOutcome out;
  for (std::size_t n = 1; n <= max_domain; ++n) {
    out.searched_up_to = n;
    if (auto m = find_countermodel(n, satisfy, violate, arity)) {
      out.countermodel = std::move(m);
      return out;
    }
  }
  return out;
}

ImplicationResult verify_implication(const AxiomSet& satisfy, const std::string& conclude, std::size_t max_domain) {
  auto s = find_minimal_countermodel(satisfy, conclude, max_domain);
  ImplicationResult r;
  r.bound = s.searched_up_to;
  r.verified_up_to_bound = !s.countermodel;
  r.countermodel = std::move(s.countermodel);
  return r;
}

LeafStructure interval_model(std::vector<double> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<NodeId> names;
  for (double p : points) {
    std::ostringstream os;
    os << p;
    names.push_back(os.str());
  }
  LeafStructure ls(names);
  const std::size_t n = points.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (std::min(points[y], points[z]) <= points[x] && points[x] <= std::max(points[y], points[z]))
          ls.set(ls.index(names[x]), ls.index(names[y]), ls.index(names[z]));
  return ls;
}

}  // namespace leafbridge
