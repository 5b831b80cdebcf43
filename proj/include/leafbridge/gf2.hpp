#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace leafbridge::gf2 {

/// Dense 0/1 matrix with bit-packed rows (64 columns per word).
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  /// Throws InputError on ragged rows or entries other than 0 and 1.
  static BitMatrix from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t stride() const noexcept { return stride_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (data_[r * stride_ + c / 64] >> (c % 64)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool v) noexcept {
    auto& w = data_[r * stride_ + c / 64];
    const std::uint64_t b = std::uint64_t{1} << (c % 64);
    w = v ? (w | b) : (w & ~b);
  }

  std::span<std::uint64_t> row(std::size_t r) noexcept {
    return {data_.data() + r * stride_, stride_};
  }
  std::span<const std::uint64_t> row(std::size_t r) const noexcept {
    return {data_.data() + r * stride_, stride_};
  }
  std::uint64_t* data() noexcept { return data_.data(); }

  BitMatrix transpose() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> data_;
};

enum class Kernel { kScalar, kAvx2 };

std::string_view kernel_name(Kernel k) noexcept;
bool kernel_available(Kernel k) noexcept;

/// Kernel used by rank(): AVX2 when the CPU supports it, unless the
/// environment variable LEAFBRIDGE_KERNEL=scalar forces the reference path.
Kernel active_kernel() noexcept;

/// Rank over GF(2) by Gaussian elimination on bit rows.
std::size_t rank(BitMatrix m);
std::size_t rank_with(Kernel k, BitMatrix m);

}  // namespace leafbridge::gf2
