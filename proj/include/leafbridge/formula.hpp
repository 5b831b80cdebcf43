#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace leafbridge {

/// First-order formula over one relation symbol and equality.
///
/// Text syntax:
///   forall x y. f     exists w. f     f -> g     f <-> g     f | g     f & g
///   !f     x = y     x != y     distinct(x,y,z)     one(f, g, ...)
///   R(x,y,z)  B(x,y,z)  S(x,y,z,u)   (all name the structure's relation)
/// Macros (expanded while parsing): E(x,y,z,u) from S; A(x,y,z) from B;
/// R0(x,y,z) and R1(x,y,z) from R.
struct Formula {
  enum class Op { kTrue, kFalse, kAtom, kEq, kNot, kAnd, kOr, kForall, kExists };
  Op op = Op::kTrue;
  /// Variable ids: atom arguments, the two sides of kEq, or bound variables.
  std::vector<int> vars;
  std::vector<Formula> kids;
};

struct ParsedFormula {
  Formula formula;
  /// Arity of the relation used (0 if none).
  std::size_t arity = 0;
  std::vector<std::string> var_names;
};

/// Throws InputError with the offending position on syntax errors, unknown
/// macros, free variables or mixed arities.
ParsedFormula parse_formula(const std::string& text);

/// Canonical text of a formula (for diagnostics and tests).
std::string to_string(const ParsedFormula& f);

}  // namespace leafbridge
