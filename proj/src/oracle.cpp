#include "cqed/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "cqed/errors.hpp"

namespace cqed::oracle {

JcDoublet jc_doublet(const SystemSpec& spec, std::int64_t n_total) {
  if (spec.num_levels() != 2) throw InvalidArgument("jc_doublet: needs M = 2");
  if (n_total < 1) throw InvalidArgument("jc_doublet: needs n_total >= 1");
  const double delta = spec.mls.transition(0) - spec.omega_r;
  const double g = spec.mls.couplings()[0];
  const double root = std::sqrt(delta * delta + 4.0 * g * g * static_cast<double>(n_total));
  // Pick the cancellation-free form for the smaller-magnitude root.
  const double big = delta >= 0.0 ? 0.5 * (delta + root) : 0.5 * (delta - root);
  const double small = -g * g * static_cast<double>(n_total) / big;
  return delta >= 0.0 ? JcDoublet{small, big} : JcDoublet{big, small};
}

Matrix full_hamiltonian(const SystemSpec& spec, int photon_cutoff) {
  if (photon_cutoff < 0) throw InvalidArgument("full_hamiltonian: negative cutoff");
  const std::size_t m = spec.num_levels();
  const std::size_t photons = static_cast<std::size_t>(photon_cutoff) + 1;
  const auto& w = spec.mls.level_freqs();
  const auto& g = spec.mls.couplings();
  Matrix h(photons * m, photons * m);
  auto index = [m](std::size_t n, std::size_t i) { return n * m + i; };

  for (std::size_t n = 0; n < photons; ++n)
    for (std::size_t i = 0; i < m; ++i) h(index(n, i), index(n, i)) = n * spec.omega_r + w[i];
  // g_i (a^dag |i><i+1| + a |i+1><i|): |n, i+1> <-> |n+1, i>
  for (std::size_t n = 0; n + 1 < photons; ++n)
    for (std::size_t i = 0; i + 1 < m; ++i) {
      const double element = g[i] * std::sqrt(static_cast<double>(n + 1));
      h(index(n + 1, i), index(n, i + 1)) = element;
      h(index(n, i + 1), index(n + 1, i)) = element;
    }
  return h;
}

double max_cross_block_element(const Matrix& hamiltonian, std::size_t num_levels) {
  double worst = 0.0;
  for (std::size_t a = 0; a < hamiltonian.rows(); ++a)
    for (std::size_t b = 0; b < hamiltonian.cols(); ++b) {
      const std::size_t ex_a = a / num_levels + a % num_levels;
      const std::size_t ex_b = b / num_levels + b % num_levels;
      if (ex_a != ex_b) worst = std::max(worst, std::abs(hamiltonian(a, b)));
    }
  return worst;
}

Matrix extract_block(const Matrix& hamiltonian, std::size_t num_levels, int n_total) {
  const std::size_t photons = hamiltonian.rows() / num_levels;
  if (n_total < 0 || static_cast<std::size_t>(n_total) >= photons)
    throw InvalidArgument("extract_block: block exceeds the photon cutoff");
  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < num_levels && i <= static_cast<std::size_t>(n_total); ++i)
    indices.push_back((n_total - i) * num_levels + i);
  Matrix out(indices.size(), indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r)
    for (std::size_t c = 0; c < indices.size(); ++c) out(r, c) = hamiltonian(indices[r], indices[c]);
  return out;
}

std::vector<double> jacobi_eigenvalues(Matrix a, double tol, int max_sweeps) {
  const std::size_t n = a.rows();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= tol * scale) break;

    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
  std::sort(values.begin(), values.end());
  return values;
}

FixedPointScan count_fixed_points(const SystemSpec& spec, std::size_t level, const DriveSpec& drive,
                                  int grid_points) {
  if (grid_points < 2) throw InvalidArgument("count_fixed_points: need at least two grid points");
  FixedPointScan scan;
  const double ceiling = photon_ceiling(spec, drive);
  if (ceiling == 0.0) {
    scan.count = 1;  // n = 0 is the only solution without drive
    scan.brackets.emplace_back(0.0, 0.0);
    return scan;
  }

  const double upper = ceiling * (1.0 + 1e-9);
  const double lower = std::min(1e-9, 1e-9 * upper);
  std::vector<double> grid{0.0};
  for (int k = 0; k < grid_points; ++k)
    grid.push_back(lower * std::pow(upper / lower, static_cast<double>(k) / (grid_points - 1)));

  auto residual = [&](double n) { return n - steady_state_rhs(spec, level, drive, n); };
  double prev = residual(grid[0]);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double cur = residual(grid[k]);
    if ((prev < 0.0 && cur >= 0.0) || (prev > 0.0 && cur <= 0.0)) {
      ++scan.count;
      scan.brackets.emplace_back(grid[k - 1], grid[k]);
    }
    prev = cur;
  }
  return scan;
}

}  // namespace cqed::oracle
