#include "leafbridge/formula.hpp"

#include <cctype>
#include <set>

#include "leafbridge/error.hpp"

namespace leafbridge {

namespace {

struct Macro {
  std::vector<std::string> params;
  std::string body;
};

const std::map<std::string, Macro>& macros() {
  static const std::map<std::string, Macro> m = {
      {"E", {{"x", "y", "z", "u"}, "distinct(x,y,z,u) & !S(x,y,z,u) & !S(x,z,y,u) & !S(x,u,y,z)"}},
      {"A", {{"x", "y", "z"}, "B(x,y,z) | B(y,x,z) | B(x,z,y)"}},
      {"R0", {{"x", "y", "z"}, "R(x,y,z) & R(y,x,z) & R(z,x,y)"}},
      {"R1", {{"x", "y", "z"}, "R(x,y,z) & R(y,x,z) & !R(z,x,y)"}},
  };
  return m;
}

std::size_t relation_arity(const std::string& name) {
  if (name == "R" || name == "B") return 3;
  if (name == "S") return 4;
  return 0;
}

Formula make(Formula::Op op, std::vector<Formula> kids = {}, std::vector<int> vars = {}) {
  Formula f;
  f.op = op;
  f.kids = std::move(kids);
  f.vars = std::move(vars);
  return f;
}

class Parser {
 public:
  Parser(const std::string& text, ParsedFormula& out) : s_(text), out_(out) {}

  Formula parse_top() {
    auto f = formula();
    skip();
    if (pos_ != s_.size()) error("unexpected input");
    return f;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    throw InputError("formula: " + what + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(const std::string& tok) {
    skip();
    if (s_.compare(pos_, tok.size(), tok) != 0) return false;
    // Keywords must not run into an identifier.
    if (std::isalpha(static_cast<unsigned char>(tok.back())) && pos_ + tok.size() < s_.size() &&
        (std::isalnum(static_cast<unsigned char>(s_[pos_ + tok.size()])) || s_[pos_ + tok.size()] == '_'))
      return false;
    pos_ += tok.size();
    return true;
  }
  void expect(const std::string& tok) {
    if (!eat(tok)) error("expected '" + tok + "'");
  }
  std::string ident() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                s_[pos_] == '\''))
      ++pos_;
    if (start == pos_) error("expected identifier");
    return s_.substr(start, pos_ - start);
  }
  int var(const std::string& name) {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == name) return it->second;
    error("free variable '" + name + "'");
  }
  std::vector<int> var_list() {
    std::vector<int> vs{var(ident())};
    while (eat(",")) vs.push_back(var(ident()));
    return vs;
  }

  Formula formula() {
    if (eat("forall")) return quantified(Formula::Op::kForall);
    if (eat("exists")) return quantified(Formula::Op::kExists);
    return iff();
  }
  Formula quantified(Formula::Op op) {
    std::vector<int> bound;
    const std::size_t depth = scope_.size();
    do {
      const auto name = ident();
      const int id = static_cast<int>(out_.var_names.size());
      out_.var_names.push_back(name);
      scope_.emplace_back(name, id);
      bound.push_back(id);
      skip();
    } while (pos_ < s_.size() && s_[pos_] != '.');
    expect(".");
    auto body = formula();
    scope_.resize(depth);
    return make(op, {std::move(body)}, bound);
  }
  Formula iff() {
    auto f = implication();
    while (eat("<->")) {
      auto g = implication();
      f = make(Formula::Op::kAnd, {make(Formula::Op::kOr, {make(Formula::Op::kNot, {f}), g}),
                                   make(Formula::Op::kOr, {f, make(Formula::Op::kNot, {g})})});
    }
    return f;
  }
  Formula implication() {
    auto f = disjunction();
    if (eat("->")) return make(Formula::Op::kOr, {make(Formula::Op::kNot, {std::move(f)}), implication()});
    return f;
  }
  Formula disjunction() {
    std::vector<Formula> kids{conjunction()};
    while (eat("|")) kids.push_back(conjunction());
    return kids.size() == 1 ? std::move(kids[0]) : make(Formula::Op::kOr, std::move(kids));
  }
  Formula conjunction() {
    std::vector<Formula> kids{unary()};
    while (eat("&")) kids.push_back(unary());
    return kids.size() == 1 ? std::move(kids[0]) : make(Formula::Op::kAnd, std::move(kids));
  }
  Formula unary() {
    if (eat("!")) return make(Formula::Op::kNot, {unary()});
    if (eat("(")) {
      auto f = formula();
      expect(")");
      return f;
    }
    skip();
    if (s_.compare(pos_, 6, "forall") == 0 || s_.compare(pos_, 6, "exists") == 0) return formula();
    if (eat("true")) return make(Formula::Op::kTrue);
    if (eat("false")) return make(Formula::Op::kFalse);
    if (eat("distinct")) {
      expect("(");
      auto vs = var_list();
      expect(")");
      std::vector<Formula> kids;
      for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
          kids.push_back(make(Formula::Op::kNot, {make(Formula::Op::kEq, {}, {vs[i], vs[j]})}));
      return kids.empty() ? make(Formula::Op::kTrue) : make(Formula::Op::kAnd, std::move(kids));
    }
    if (eat("one")) {
      expect("(");
      std::vector<Formula> fs{formula()};
      while (eat(",")) fs.push_back(formula());
      expect(")");
      std::vector<Formula> kids{make(Formula::Op::kOr, fs)};
      for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = i + 1; j < fs.size(); ++j)
          kids.push_back(make(Formula::Op::kNot, {make(Formula::Op::kAnd, {fs[i], fs[j]})}));
      return make(Formula::Op::kAnd, std::move(kids));
    }
    const auto name = ident();
    if (eat("(")) {
      auto vs = var_list();
      expect(")");
      if (auto m = macros().find(name); m != macros().end()) return expand(m->second, vs);
      const std::size_t arity = relation_arity(name);
      if (arity == 0) error("unknown relation '" + name + "'");
      if (vs.size() != arity) error("wrong number of arguments for '" + name + "'");
      if (out_.arity != 0 && out_.arity != arity) error("mixed relation arities");
      out_.arity = arity;
      return make(Formula::Op::kAtom, {}, vs);
    }
    const int a = var(name);
    if (eat("!=")) return make(Formula::Op::kNot, {make(Formula::Op::kEq, {}, {a, var(ident())})});
    expect("=");
    return make(Formula::Op::kEq, {}, {a, var(ident())});
  }
  Formula expand(const Macro& m, const std::vector<int>& args) {
    if (args.size() != m.params.size()) error("wrong number of macro arguments");
    // Parse the body with parameters bound to the argument ids.
    ParsedFormula inner;
    inner.var_names = out_.var_names;
    inner.arity = out_.arity;
    Parser p(m.body, inner);
    for (std::size_t i = 0; i < args.size(); ++i) p.scope_.emplace_back(m.params[i], args[i]);
    auto f = p.parse_top();
    out_.var_names = std::move(inner.var_names);
    if (out_.arity != 0 && inner.arity != 0 && out_.arity != inner.arity) error("mixed relation arities");
    out_.arity = std::max(out_.arity, inner.arity);
    return f;
  }

  const std::string& s_;
  ParsedFormula& out_;
  std::size_t pos_ = 0;
  std::vector<std::pair<std::string, int>> scope_;
};

void render(const Formula& f, const ParsedFormula& p, std::string& out) {
  auto var = [&](int v) { return p.var_names.at(static_cast<std::size_t>(v)); };
  auto join = [&](const char* sep) {
    out += "(";
    for (std::size_t i = 0; i < f.kids.size(); ++i) {
      if (i) out += sep;
      render(f.kids[i], p, out);
    }
    out += ")";
  };
  switch (f.op) {
    case Formula::Op::kTrue: out += "true"; break;
    case Formula::Op::kFalse: out += "false"; break;
    case Formula::Op::kAtom:
      out += p.arity == 4 ? "S(" : "R(";
      for (std::size_t i = 0; i < f.vars.size(); ++i) out += (i ? "," : "") + var(f.vars[i]);
      out += ")";
      break;
    case Formula::Op::kEq: out += var(f.vars[0]) + "=" + var(f.vars[1]); break;
    case Formula::Op::kNot:
      out += "!";
      render(f.kids[0], p, out);
      break;
    case Formula::Op::kAnd: join(" & "); break;
    case Formula::Op::kOr: join(" | "); break;
    case Formula::Op::kForall:
    case Formula::Op::kExists:
      out += f.op == Formula::Op::kForall ? "forall" : "exists";
      for (int v : f.vars) out += " " + var(v);
      out += ". ";
      render(f.kids[0], p, out);
      break;
  }
}

}  // namespace

ParsedFormula parse_formula(const std::string& text) {
  ParsedFormula out;
  Parser p(text, out);
  out.formula = p.parse_top();
  return out;
}

std::string to_string(const ParsedFormula& f) {
  std::string out;
  render(f.formula, f, out);
  return out;
}

}  // namespace leafbridge
