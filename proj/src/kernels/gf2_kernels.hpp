#pragma once

#include <cstddef>
#include <cstdint>

namespace leafbridge::gf2::detail {

// dst[i] ^= src[i] for i in [0, words).
void xor_row_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) noexcept;
void xor_row_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) noexcept;

using XorRowFn = void (*)(std::uint64_t*, const std::uint64_t*, std::size_t) noexcept;

// In-place elimination; returns the rank. `data` holds rows*stride words.
std::size_t eliminate(std::uint64_t* data, std::size_t rows, std::size_t stride,
                      std::size_t cols, XorRowFn xor_row) noexcept;

bool cpu_has_avx2() noexcept;

}  // namespace leafbridge::gf2::detail
