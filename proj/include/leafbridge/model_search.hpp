#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "leafbridge/formula.hpp"
#include "leafbridge/leaf_structure.hpp"
#include "leafbridge/quasi_tree.hpp"
#include "leafbridge/report.hpp"
#include "leafbridge/separation.hpp"

namespace leafbridge {

/// Domain with one relation of arity 3 or 4, stored as a dense table.
class RelationalStructure {
 public:
  RelationalStructure() = default;
  /// Empty relation on `domain` (distinct names, at most 64).
  RelationalStructure(std::vector<NodeId> domain, std::size_t arity);
  /// Domain a, b, c, ...
  RelationalStructure(std::size_t n, std::size_t arity);

  std::size_t size() const noexcept { return domain_.size(); }
  std::size_t arity() const noexcept { return arity_; }
  const std::vector<NodeId>& domain() const noexcept { return domain_; }
  const NodeId& name(std::size_t i) const { return domain_.at(i); }

  bool holds(const std::vector<std::size_t>& t) const { return rel_.at(offset(t)) != 0; }
  void set(const std::vector<std::size_t>& t, bool v = true) { rel_.at(offset(t)) = v ? 1 : 0; }
  /// Index of tuple t in the table (first coordinate most significant).
  std::size_t offset(const std::vector<std::size_t>& t) const;
  std::size_t table_size() const noexcept { return rel_.size(); }
  bool at(std::size_t offset) const { return rel_.at(offset) != 0; }
  void set_at(std::size_t offset, bool v) { rel_.at(offset) = v ? 1 : 0; }

  std::vector<std::vector<std::size_t>> tuples() const;

  friend bool operator==(const RelationalStructure&, const RelationalStructure&) = default;

 private:
  std::vector<NodeId> domain_;
  std::size_t arity_ = 3;
  std::vector<char> rel_;
};

RelationalStructure to_relational(const LeafStructure& ls);
RelationalStructure to_relational(const QuasiTree& q);
RelationalStructure to_relational(const SeparationStructure& ss);
/// Exact copies of the relation; throw PreconditionError on an arity mismatch.
LeafStructure to_leaf_structure(const RelationalStructure& m);
QuasiTree to_quasi_tree(const RelationalStructure& m);
SeparationStructure to_separation_structure(const RelationalStructure& m);

using AxiomSet = std::vector<std::string>;

/// A1..A10, B1..B8, S1..S5, S''4, EQ.
const std::vector<std::string>& axiom_names();
/// Source text of a named axiom in the formula syntax; InputError if unknown.
const std::string& axiom_text(const std::string& name);
const ParsedFormula& axiom_formula(const std::string& name);
std::size_t axiom_arity(const std::string& name);
/// False for EQ: its formula is a necessary first-order condition (local
/// transitivity of the triple relation), the exact test is check_S_axioms.
bool axiom_is_exact(const std::string& name);

/// Direct evaluation of a formula. On failure of a formula of the form
/// "forall v1..vk. body", the witness is the first failing (v1..vk).
AxiomResult evaluate(const ParsedFormula& f, const RelationalStructure& m, const std::string& label = "");
AxiomResult evaluate_axiom(const std::string& name, const RelationalStructure& m);

/// Pass/fail of each named axiom computed by the dedicated checkers of
/// leaf structures (A*), quasi-trees (B*) and separation structures (S*, EQ).
AxiomReport check_named_axioms(const RelationalStructure& m, const AxiomSet& names);

struct Countermodel {
  RelationalStructure model;
  /// Checker results for every axiom of `satisfy` followed by `violate`.
  AxiomReport table;
};

/// Largest searchable domain: 5 for either arity.
inline constexpr std::size_t kMaxSearchDomain = 5;

/// A structure on `domain_size` elements satisfying `satisfy` and violating
/// `violate`, or nullopt when none exists (the search is complete). The
/// violated axiom's leading universal variables are placed canonically
/// (first occurrence order), which removes domain permutations.
/// Throws InputError on unknown axioms or arity mismatch, PreconditionError
/// when domain_size is 0 or above kMaxSearchDomain.
std::optional<Countermodel> find_countermodel(std::size_t domain_size, const AxiomSet& satisfy,
                                              const std::string& violate, std::size_t arity);

struct SearchOutcome {
  std::optional<Countermodel> countermodel;
  /// Largest domain size exhausted (or the size of the countermodel).
  std::size_t searched_up_to = 0;
};

/// Smallest countermodel with 1..max_domain elements.
SearchOutcome find_minimal_countermodel(const AxiomSet& satisfy, const std::string& violate,
                                        std::size_t max_domain);

struct ImplicationResult {
  /// True iff no countermodel up to `bound`; says nothing beyond it.
  bool verified_up_to_bound = false;
  std::size_t bound = 0;
  std::optional<Countermodel> countermodel;
};

ImplicationResult verify_implication(const AxiomSet& satisfy, const std::string& conclude,
                                     std::size_t max_domain);

/// Rxyz iff min(y,z) ≤ x ≤ max(y,z) on the given reals (duplicates removed).
/// Leaves are named by the shortest decimal form of each point.
LeafStructure interval_model(std::vector<double> points);

}  // namespace leafbridge
