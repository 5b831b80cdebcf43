#include "leafbridge/sat.hpp"

#include <algorithm>
#include <cstdlib>

#include "leafbridge/error.hpp"

namespace leafbridge {

namespace {
constexpr std::uint32_t var_of(std::uint32_t l) { return l >> 1; }
constexpr std::uint32_t neg(std::uint32_t l) { return l ^ 1U; }
}  // namespace

int SatSolver::new_var() {
  assign_.push_back(0);
  level_.push_back(0);
  reason_.push_back(-1);
  activity_.push_back(0.0);
  phase_.push_back(-1);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  return static_cast<int>(assign_.size());
}

SatSolver::Lit SatSolver::encode(int dimacs) {
  const auto v = static_cast<std::uint32_t>(std::abs(dimacs) - 1);
  return 2 * v + (dimacs < 0 ? 1U : 0U);
}

int SatSolver::value(Lit l) const {
  const int a = assign_[var_of(l)];
  return (l & 1U) ? -a : a;
}

void SatSolver::enqueue(Lit l, int reason) {
  const auto v = var_of(l);
  assign_[v] = (l & 1U) ? -1 : 1;
  level_[v] = trail_lim_.size();
  reason_[v] = reason;
  trail_.push_back(l);
}

void SatSolver::backtrack(std::size_t level) {
  if (trail_lim_.size() <= level) return;
  for (std::size_t i = trail_.size(); i > trail_lim_[level]; --i) {
    const auto v = var_of(trail_[i - 1]);
    phase_[v] = assign_[v];
    assign_[v] = 0;
    reason_[v] = -1;
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

int SatSolver::attach(std::vector<Lit> lits) {
  const int ci = static_cast<int>(clauses_.size());
  watches_[neg(lits[0])].push_back(ci);
  watches_[neg(lits[1])].push_back(ci);
  clauses_.push_back(std::move(lits));
  return ci;
}

void SatSolver::add_clause(std::vector<int> dimacs) {
  if (unsat_) return;
  backtrack(0);
  std::vector<Lit> lits;
  for (int d : dimacs) {
    if (d == 0 || static_cast<std::size_t>(std::abs(d)) > assign_.size())
      throw PreconditionError("sat: literal out of range");
    lits.push_back(encode(d));
  }
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && lits[i + 1] == neg(lits[i])) return;  // tautology
    const int val = value(lits[i]);
    if (val > 0) return;
    if (val == 0) kept.push_back(lits[i]);
  }
  if (kept.empty()) {
    unsat_ = true;
  } else if (kept.size() == 1) {
    enqueue(kept[0], -1);
    if (propagate() >= 0) unsat_ = true;
  } else {
    attach(std::move(kept));
  }
}

// Watch lists are indexed by the literal whose becoming true falsifies a watch.
int SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    auto& ws = watches_[p];
    std::size_t keep = 0;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      const int ci = ws[i];
      auto& c = clauses_[static_cast<std::size_t>(ci)];
      const Lit falsified = neg(p);
      if (c[0] == falsified) std::swap(c[0], c[1]);
      if (value(c[0]) > 0) {
        ws[keep++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k)
        if (value(c[k]) >= 0) {
          std::swap(c[1], c[k]);
          watches_[neg(c[1])].push_back(ci);
          moved = true;
          break;
        }
      if (moved) continue;
      ws[keep++] = ci;
      if (value(c[0]) < 0) {
        for (std::size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
        ws.resize(keep);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(keep);
  }
  return -1;
}

void SatSolver::bump(std::uint32_t v) {
  activity_[v] += inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    inc_ *= 1e-100;
  }
}

void SatSolver::analyze(int confl, std::vector<Lit>& learnt, std::size_t& back_level) {
  learnt.assign(1, 0);
  std::size_t open = 0;
  Lit p = 0;
  bool have_p = false;
  std::size_t idx = trail_.size();
  const std::size_t cur = trail_lim_.size();
  std::vector<std::uint32_t> touched;
  for (;;) {
    const auto& c = clauses_[static_cast<std::size_t>(confl)];
    for (const Lit q : c) {
      if (have_p && var_of(q) == var_of(p)) continue;
      const auto v = var_of(q);
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      touched.push_back(v);
      bump(v);
      if (level_[v] == cur)
        ++open;
      else
        learnt.push_back(q);
    }
    do {
      --idx;
    } while (!seen_[var_of(trail_[idx])]);
    p = trail_[idx];
    have_p = true;
    seen_[var_of(p)] = 0;
    confl = reason_[var_of(p)];
    if (--open == 0) break;
  }
  learnt[0] = neg(p);
  for (auto v : touched) seen_[v] = 0;
  back_level = 0;
  std::size_t best = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i)
    if (level_[var_of(learnt[i])] > back_level) {
      back_level = level_[var_of(learnt[i])];
      best = i;
    }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[best]);
  inc_ /= 0.95;
}

bool SatSolver::solve() {
  if (unsat_) return false;
  backtrack(0);
  if (propagate() >= 0) {
    unsat_ = true;
    return false;
  }
  std::vector<Lit> learnt;
  for (;;) {
    const int confl = propagate();
    if (confl >= 0) {
      ++conflicts_;
      if (trail_lim_.empty()) {
        unsat_ = true;
        return false;
      }
      std::size_t back_level = 0;
      analyze(confl, learnt, back_level);
      backtrack(back_level);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
      } else {
        const int ci = attach(learnt);
        enqueue(learnt[0], ci);
      }
      continue;
    }
    std::uint32_t pick = 0;
    double best = -1.0;
    bool found = false;
    for (std::uint32_t v = 0; v < assign_.size(); ++v)
      if (assign_[v] == 0 && activity_[v] > best) {
        best = activity_[v];
        pick = v;
        found = true;
      }
    if (!found) {
      model_.assign(assign_.begin(), assign_.end());
      for (auto& m : model_) m = m > 0 ? 1 : 0;
      return true;
    }
    trail_lim_.push_back(trail_.size());
    enqueue(2 * pick + (phase_[pick] > 0 ? 0U : 1U), -1);
  }
}

}  // namespace leafbridge
