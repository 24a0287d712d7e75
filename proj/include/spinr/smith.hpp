#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace spinr::abelian {

/// Dense row-major integer matrix. Arithmetic is overflow-checked.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& x) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// U * A * V == D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_rank, d_i > 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  std::size_t rank = 0;

  std::int64_t diagonal(std::size_t i) const { return D(i, i); }
};

SmithForm smith_normal_form(const IntMatrix& a);

namespace checked {
std::int64_t add(std::int64_t a, std::int64_t b);
std::int64_t mul(std::int64_t a, std::int64_t b);
/// Floor-style remainder in [0, m) for m > 0.
std::int64_t mod(std::int64_t a, std::int64_t m);
}  // namespace checked

}  // namespace spinr::abelian
