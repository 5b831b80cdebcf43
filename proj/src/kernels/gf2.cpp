#include "leafbridge/gf2.hpp"

#include <cstdlib>
#include <string>

#include "gf2_kernels.hpp"
#include "leafbridge/error.hpp"

namespace leafbridge::gf2 {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), data_(rows * stride_, 0) {}

BitMatrix BitMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw InputError("ragged matrix: row " + std::to_string(r) + " has " +
                       std::to_string(rows[r].size()) + " entries, expected " +
                       std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) {
      const int v = rows[r][c];
      if (v != 0 && v != 1)
        throw InputError("matrix entry (" + std::to_string(r) + "," + std::to_string(c) +
                         ") is not 0/1");
      m.set(r, c, v == 1);
    }
  }
  return m;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

std::string_view kernel_name(Kernel k) noexcept {
  return k == Kernel::kAvx2 ? "avx2" : "scalar";
}

bool kernel_available(Kernel k) noexcept {
  return k == Kernel::kScalar || detail::cpu_has_avx2();
}

Kernel active_kernel() noexcept {
  static const Kernel chosen = [] {
    if (const char* env = std::getenv("LEAFBRIDGE_KERNEL"); env && std::string(env) == "scalar")
      return Kernel::kScalar;
    return detail::cpu_has_avx2() ? Kernel::kAvx2 : Kernel::kScalar;
  }();
  return chosen;
}

std::size_t rank_with(Kernel k, BitMatrix m) {
  if (!kernel_available(k)) throw PreconditionError("kernel not available on this CPU");
  const auto fn = k == Kernel::kAvx2 ? &detail::xor_row_avx2 : &detail::xor_row_scalar;
  return detail::eliminate(m.data(), m.rows(), m.stride(), m.cols(), fn);
}

std::size_t rank(BitMatrix m) { return rank_with(active_kernel(), std::move(m)); }

}  // namespace leafbridge::gf2
