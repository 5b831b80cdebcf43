#pragma once

// Rank-width by dynamic programming over vertex subsets: a rooted binary
// decomposition of X costs the worst cut rank inside it. Independent of the
// layout enumeration and of the bit-packed rank kernels.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "leafbridge/rankwidth.hpp"

namespace oracle {

inline std::size_t naive_rank(std::vector<std::vector<int>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rank && m[r][c] == 1)
        for (std::size_t k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
    ++rank;
  }
  return rank;
}

inline std::size_t cut_rank(const leafbridge::SimpleGraph& g, std::uint64_t a) {
  std::vector<std::vector<int>> m;
  for (std::size_t u = 0; u < g.size(); ++u) {
    if (!((a >> u) & 1U)) continue;
    std::vector<int> row;
    for (std::size_t v = 0; v < g.size(); ++v)
      if (!((a >> v) & 1U)) row.push_back(g.adjacent(u, v) ? 1 : 0);
    m.push_back(row);
  }
  return naive_rank(m);
}

inline std::size_t rank_width_dp(const leafbridge::SimpleGraph& g) {
  const std::size_t n = g.size();
  if (n <= 1) return 0;
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  std::vector<std::size_t> cr(all + 1), f(all + 1, 0);
  for (std::uint64_t s = 1; s <= all; ++s) cr[s] = cut_rank(g, s);
  for (std::uint64_t s = 1; s <= all; ++s) {
    if ((s & (s - 1)) == 0) continue;
    std::size_t best = n;
    // Split s into y and s-y, each side a subtree hanging below s.
    for (std::uint64_t y = (s - 1) & s; y != 0; y = (y - 1) & s) {
      const std::uint64_t z = s & ~y;
      if (y < z) continue;
      best = std::min(best, std::max({cr[y], cr[z], f[y], f[z]}));
    }
    f[s] = best;
  }
  // Unrooted: the top split's two sides share the same cut.
  std::size_t best = n;
  for (std::uint64_t y = (all - 1) & all; y != 0; y = (y - 1) & all) {
    const std::uint64_t z = all & ~y;
    if (y < z) continue;
    best = std::min(best, std::max({cr[y], f[y], f[z]}));
  }
  return best;
}

}  // namespace oracle
