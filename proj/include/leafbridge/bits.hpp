#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace leafbridge {

/// Node or leaf subset of a structure with at most 64 elements.
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxMaskElements = 64;

constexpr Mask bit(std::size_t i) noexcept { return Mask{1} << i; }
constexpr bool has(Mask m, std::size_t i) noexcept { return (m >> i) & 1U; }
constexpr int popcount(Mask m) noexcept { return std::popcount(m); }
constexpr Mask low_bits(std::size_t n) noexcept {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

/// Calls f(i) for each set bit, ascending.
template <typename F>
void for_each_bit(Mask m, F&& f) {
  while (m != 0) {
    f(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
}

inline std::vector<std::size_t> bits_of(Mask m) {
  std::vector<std::size_t> out;
  for_each_bit(m, [&](std::size_t i) { out.push_back(i); });
  return out;
}

}  // namespace leafbridge
