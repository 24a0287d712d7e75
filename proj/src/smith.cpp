#include "spinr/smith.hpp"

#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace spinr::abelian {

namespace checked {

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer overflow in addition");
  return out;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer overflow in multiplication");
  return out;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace checked

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<std::int64_t> IntMatrix::apply(const std::vector<std::int64_t>& x) const {
  if (x.size() != cols_) throw std::invalid_argument("IntMatrix::apply: dimension mismatch");
  std::vector<std::int64_t> y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) y[r] = checked::add(y[r], checked::mul((*this)(r, c), x[c]));
  return y;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix product: dimension mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = checked::add(out(i, j), checked::mul(aik, b(k, j)));
    }
  return out;
}

namespace {

// Elementary operations applied simultaneously to the working matrix and its transforms.
struct Reducer {
  IntMatrix D, U, V;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < D.cols(); ++c) std::swap(D(i, c), D(j, c));
    for (std::size_t c = 0; c < U.cols(); ++c) std::swap(U(i, c), U(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < D.rows(); ++r) std::swap(D(r, i), D(r, j));
    for (std::size_t r = 0; r < V.rows(); ++r) std::swap(V(r, i), V(r, j));
  }
  // row_dst += k * row_src
  void add_row(std::size_t dst, std::size_t src, std::int64_t k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < D.cols(); ++c) D(dst, c) = checked::add(D(dst, c), checked::mul(k, D(src, c)));
    for (std::size_t c = 0; c < U.cols(); ++c) U(dst, c) = checked::add(U(dst, c), checked::mul(k, U(src, c)));
  }
  // col_dst += k * col_src
  void add_col(std::size_t dst, std::size_t src, std::int64_t k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < D.rows(); ++r) D(r, dst) = checked::add(D(r, dst), checked::mul(k, D(r, src)));
    for (std::size_t r = 0; r < V.rows(); ++r) V(r, dst) = checked::add(V(r, dst), checked::mul(k, V(r, src)));
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < D.cols(); ++c) D(i, c) = -D(i, c);
    for (std::size_t c = 0; c < U.cols(); ++c) U(i, c) = -U(i, c);
  }

  // Moves the smallest nonzero |entry| of the trailing block to (t, t). False if the block is zero.
  bool bring_pivot(std::size_t t) {
    std::size_t pr = 0, pc = 0;
    std::int64_t best = 0;
    for (std::size_t r = t; r < D.rows(); ++r)
      for (std::size_t c = t; c < D.cols(); ++c) {
        const auto v = std::llabs(D(r, c));
        if (v != 0 && (best == 0 || v < best)) {
          best = v;
          pr = r;
          pc = c;
        }
      }
    if (best == 0) return false;
    swap_rows(t, pr);
    swap_cols(t, pc);
    return true;
  }

  // Clears row t and column t outside the pivot; the pivot ends dividing the rest of the block.
  void reduce_at(std::size_t t) {
    for (;;) {
      bool dirty = false;
      for (std::size_t r = t + 1; r < D.rows(); ++r) {
        if (D(r, t) == 0) continue;
        add_row(r, t, -(D(r, t) / D(t, t)));
        if (D(r, t) != 0) dirty = true;
      }
      for (std::size_t c = t + 1; c < D.cols(); ++c) {
        if (D(t, c) == 0) continue;
        add_col(c, t, -(D(t, c) / D(t, t)));
        if (D(t, c) != 0) dirty = true;
      }
      if (dirty) {
        bring_pivot(t);
        continue;
      }
      // Divisibility: fold any offending row into row t and go again.
      bool divides_all = true;
      for (std::size_t r = t + 1; r < D.rows() && divides_all; ++r)
        for (std::size_t c = t + 1; c < D.cols(); ++c)
          if (D(r, c) % D(t, t) != 0) {
            add_row(t, r, 1);
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (D(t, t) < 0) negate_row(t);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  Reducer red{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols())};
  std::size_t rank = 0;
  const std::size_t limit = std::min(a.rows(), a.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    if (!red.bring_pivot(t)) break;
    red.reduce_at(t);
    ++rank;
  }
  return SmithForm{std::move(red.U), std::move(red.D), std::move(red.V), rank};
}

}  // namespace spinr::abelian
