#include "gf2_kernels.hpp"

#include <utility>

namespace leafbridge::gf2::detail {

void xor_row_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) noexcept {
  for (std::size_t i = 0; i < words; ++i) dst[i] ^= src[i];
}

std::size_t eliminate(std::uint64_t* data, std::size_t rows, std::size_t stride,
                      std::size_t cols, XorRowFn xor_row) noexcept {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t b = std::uint64_t{1} << (c % 64);
    std::size_t pivot = rank;
    while (pivot < rows && (data[pivot * stride + w] & b) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t i = 0; i < stride; ++i)
        std::swap(data[pivot * stride + i], data[rank * stride + i]);
    }
    // Rows below `rank` are zero in every column < c, so words before w can be skipped.
    const std::uint64_t* prow = data + rank * stride + w;
    for (std::size_t r = rank + 1; r < rows; ++r) {
      std::uint64_t* row = data + r * stride + w;
      if (*row & b) xor_row(row, prow, stride - w);
    }
    ++rank;
  }
  return rank;
}

}  // namespace leafbridge::gf2::detail
