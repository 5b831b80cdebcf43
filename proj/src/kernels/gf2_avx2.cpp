#include "gf2_kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace leafbridge::gf2::detail {

__attribute__((target("avx2")))
void xor_row_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) noexcept {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst + i);
    const auto* s = reinterpret_cast<const __m256i*>(src + i);
    _mm256_storeu_si256(d, _mm256_xor_si256(_mm256_loadu_si256(d), _mm256_loadu_si256(s)));
  }
  for (; i < words; ++i) dst[i] ^= src[i];
}

bool cpu_has_avx2() noexcept { return __builtin_cpu_supports("avx2"); }

}  // namespace leafbridge::gf2::detail

#else

namespace leafbridge::gf2::detail {

void xor_row_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) noexcept {
  xor_row_scalar(dst, src, words);
}

bool cpu_has_avx2() noexcept { return false; }

}  // namespace leafbridge::gf2::detail

#endif
