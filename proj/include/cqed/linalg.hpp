#pragma once

// Small dense matrices and the symmetric tridiagonal eigensolver used for the
// excitation-number blocks. Blocks never exceed a few tens of rows, so
// everything here is written for clarity over asymptotic speed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "cqed/errors.hpp"

namespace cqed {

/// Row-major dense matrix with value semantics.
template <typename T>
class BasicMatrix {
 public:
  BasicMatrix() = default;
  BasicMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  BasicMatrix transposed() const {
    BasicMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix product: shape mismatch");
    BasicMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T aik = a(i, k);
        if (aik == T{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  std::vector<T> apply(std::span<const T> v) const {
    if (v.size() != cols_) throw InvalidArgument("matrix-vector product: shape mismatch");
    std::vector<T> out(rows_, T{});
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Matrix = BasicMatrix<double>;

template <typename T>
T dot(std::span<const T> a, std::span<const T> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), T{});
}

/// Eigen-decomposition of a symmetric tridiagonal matrix. Eigenvalues are
/// ascending; column k of `vectors` belongs to `values[k]`.
template <typename T>
struct TridiagonalEigen {
  std::vector<T> values;
  BasicMatrix<T> vectors;
};

/// Implicit-shift QL iteration (EISPACK tql2 lineage) on the symmetric
/// tridiagonal matrix with main diagonal `diagonal` and first off-diagonal
/// `offdiagonal` (size n-1).
template <typename T>
TridiagonalEigen<T> solve_tridiagonal(std::span<const T> diagonal,
                                      std::span<const T> offdiagonal) {
  const std::size_t n = diagonal.size();
  if (n == 0) return {};
  if (offdiagonal.size() + 1 != n)
    throw InvalidArgument("solve_tridiagonal: off-diagonal must have n-1 entries");

  std::vector<T> d(diagonal.begin(), diagonal.end());
  std::vector<T> e(n, T{});
  std::copy(offdiagonal.begin(), offdiagonal.end(), e.begin());
  BasicMatrix<T> z = BasicMatrix<T>::identity(n);

  const T eps = std::numeric_limits<T>::epsilon();
  const int max_sweeps = 30 * static_cast<int>(n) + 30;
  T shift_sum{};
  T tst1{};

  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;

    if (m > l) {
      int sweeps = 0;
      do {
        if (++sweeps > max_sweeps)
          throw ConvergenceError("solve_tridiagonal: QL iteration did not converge");

        T g = d[l];
        T p = (d[l + 1] - g) / (T{2} * e[l]);
        T r = std::hypot(p, T{1});
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const T dl1 = d[l + 1];
        T h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        shift_sum += h;

        p = d[m];
        T c = 1, c2 = 1, c3 = 1;
        const T el1 = e[l + 1];
        T s = 0, s2 = 0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          for (std::size_t k = 0; k < n; ++k) {
            h = z(k, ii + 1);
            z(k, ii + 1) = s * z(k, ii) + c * h;
            z(k, ii) = c * z(k, ii) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += shift_sum;
    e[l] = T{};
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  TridiagonalEigen<T> out{std::vector<T>(n), BasicMatrix<T>(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = d[order[k]];
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = z(r, order[k]);
  }
  return out;
}

}  // namespace cqed
