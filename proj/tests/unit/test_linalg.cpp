#include <doctest.h>

#include <cmath>
#include <random>

#include "cqed/errors.hpp"
#include "cqed/linalg.hpp"
#include "cqed/oracle.hpp"

using cqed::Matrix;

namespace {

Matrix dense(const std::vector<double>& d, const std::vector<double>& e) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  for (std::size_t i = 0; i + 1 < d.size(); ++i) m(i, i + 1) = m(i + 1, i) = e[i];
  return m;
}

double max_abs(const Matrix& m) {
  double out = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out = std::max(out, std::abs(m(r, c)));
  return out;
}

}  // namespace

TEST_CASE("2x2 block matches the closed form") {
  const double delta = -1000.0, g = 100.0;
  const std::vector<double> d{0.0, delta}, e{g};
  const auto eig = cqed::solve_tridiagonal<double>(d, e);
  const double root = std::sqrt(delta * delta + 4.0 * g * g);
  CHECK(eig.values[0] == doctest::Approx((delta - root) / 2).epsilon(1e-14));
  CHECK(eig.values[1] == doctest::Approx((delta + root) / 2).epsilon(1e-14));
}

TEST_CASE("random tridiagonal matrices against cyclic Jacobi") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> diag(-5000.0, 5000.0), off(0.0, 300.0);
  for (std::size_t n = 1; n <= 16; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> d(n), e(n - 1);
      for (auto& x : d) x = diag(rng);
      for (auto& x : e) x = off(rng);
      const Matrix h = dense(d, e);
      const double norm = max_abs(h) * static_cast<double>(n);
      const auto eig = cqed::solve_tridiagonal<double>(d, e);
      const auto ref = cqed::oracle::jacobi_eigenvalues(h);

      for (std::size_t k = 0; k < n; ++k) {
        CHECK(std::abs(eig.values[k] - ref[k]) <= 1e-10 * norm);
        const auto v = eig.vectors.column(k);
        const auto hv = h.apply(v);
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(hv[i] - eig.values[k] * v[i]));
        CHECK(residual <= 1e-10 * norm);
        for (std::size_t j = 0; j < n; ++j) {
          const auto w = eig.vectors.column(j);
          CHECK(std::abs(cqed::dot<double>(v, w) - (j == k ? 1.0 : 0.0)) <= 1e-10);
        }
      }
      for (std::size_t k = 1; k < n; ++k) CHECK(eig.values[k - 1] <= eig.values[k]);
    }
  }
}

TEST_CASE("double and long double agree") {
  const std::vector<double> d{0.0, -1000.0, -2250.0, -3750.0, -5500.0, -7500.0};
  std::vector<double> e;
  for (int i = 0; i < 5; ++i) e.push_back(100.0 * std::sqrt(i + 1.0) * std::sqrt(1e6 - i));
  std::vector<long double> dl(d.begin(), d.end()), el(e.begin(), e.end());
  const auto a = cqed::solve_tridiagonal<double>(d, e);
  const auto b = cqed::solve_tridiagonal<long double>(dl, el);
  for (std::size_t k = 0; k < d.size(); ++k)
    CHECK(std::abs(a.values[k] - static_cast<double>(b.values[k])) <= 1e-12 * 2e6);
}

TEST_CASE("decoupled diagonal is sorted with permutation vectors") {
  const std::vector<double> d{3.0, -1.0, 2.0}, e{0.0, 0.0};
  const auto eig = cqed::solve_tridiagonal<double>(d, e);
  CHECK(eig.values == std::vector<double>{-1.0, 2.0, 3.0});
  CHECK(eig.vectors(1, 0) == 1.0);
  CHECK(eig.vectors(2, 1) == 1.0);
  CHECK(eig.vectors(0, 2) == 1.0);
}

TEST_CASE("shape errors") {
  const std::vector<double> d{1.0, 2.0}, e{};
  CHECK_THROWS_AS(cqed::solve_tridiagonal<double>(d, e), cqed::InvalidArgument);
  CHECK(cqed::solve_tridiagonal<double>(std::vector<double>{}, std::vector<double>{}).values.empty());
}
