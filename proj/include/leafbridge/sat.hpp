#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace leafbridge {

/// Small CDCL solver (two watched literals, first-UIP learning, activity
/// ordering). Literals are DIMACS style: +v / -v for variable v ≥ 1.
/// Clauses may be added between calls to solve().
class SatSolver {
 public:
  int new_var();
  std::size_t num_vars() const noexcept { return assign_.size(); }
  void add_clause(std::vector<int> lits);
  bool solve();
  /// Value of v in the last satisfying assignment.
  bool model_value(int v) const { return model_.at(static_cast<std::size_t>(v - 1)) != 0; }
  std::uint64_t conflicts() const noexcept { return conflicts_; }

 private:
  using Lit = std::uint32_t;  // 2*var + sign, var 0-based
  static Lit encode(int dimacs);
  int value(Lit l) const;  // 1 true, -1 false, 0 unassigned
  void enqueue(Lit l, int reason);
  int propagate();  // conflicting clause index or -1
  void backtrack(std::size_t level);
  void analyze(int confl, std::vector<Lit>& learnt, std::size_t& back_level);
  void bump(std::uint32_t var);
  int attach(std::vector<Lit> lits);

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> watches_;  // per literal: clause indices
  std::vector<std::int8_t> assign_;        // per var: 1, -1, 0
  std::vector<std::size_t> level_;
  std::vector<int> reason_;
  std::vector<double> activity_;
  std::vector<std::int8_t> phase_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  double inc_ = 1.0;
  bool unsat_ = false;
  std::vector<std::int8_t> model_;
  std::vector<std::int8_t> seen_;
  std::uint64_t conflicts_ = 0;
};

}  // namespace leafbridge
