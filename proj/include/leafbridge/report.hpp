#pragma once

#include <string>
#include <vector>

namespace leafbridge {

/// Outcome of one named axiom on a finite structure.
struct AxiomResult {
  std::string axiom;
  bool pass = true;
  /// Counterexample tuple, empty on pass.
  std::vector<std::string> witness;
};

struct AxiomReport {
  std::vector<AxiomResult> results;

  const AxiomResult* find(const std::string& axiom) const {
    for (const auto& r : results)
      if (r.axiom == axiom) return &r;
    return nullptr;
  }
  /// True iff every listed axiom is present and passes.
  bool passes(const std::vector<std::string>& axioms) const {
    for (const auto& a : axioms) {
      const auto* r = find(a);
      if (r == nullptr || !r->pass) return false;
    }
    return true;
  }
  bool all_pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }
  /// First failing axiom among `axioms`, or nullptr.
  const AxiomResult* first_failure(const std::vector<std::string>& axioms) const {
    for (const auto& a : axioms)
      if (const auto* r = find(a); r && !r->pass) return r;
    return nullptr;
  }
};

}  // namespace leafbridge
