#include "cqed/dispersive.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cqed/errors.hpp"

namespace cqed {

DispersiveCoefficients analytic_coefficients(const SystemSpec& spec) {
  const int m = static_cast<int>(spec.num_levels());
  const int transitions = m - 1;
  const auto& g = spec.mls.couplings();
  const Detunings det = detunings(spec);

  DispersiveCoefficients c;
  c.chi.resize(transitions);
  c.lambda = det.lambda;
  c.g2.resize(transitions);
  c.lambda2.resize(transitions);
  for (int i = 0; i < transitions; ++i) c.chi[i] = g[i] * g[i] / det.delta[i];

  auto inside = [&](int i) { return i >= 0 && i < transitions; };
  auto chi = [&](int i) { return inside(i) ? c.chi[i] : 0.0; };
  auto lam = [&](int i) { return inside(i) ? c.lambda[i] : 0.0; };
  auto delta = [&](int i) { return inside(i) ? det.delta[i] : 0.0; };

  for (int i = 0; i < transitions; ++i) {
    c.g2[i] = lam(i) * lam(i + 1) * (delta(i + 1) - delta(i));
    if (c.g2[i] == 0.0) continue;
    const double denom = delta(i + 1) + delta(i);
    if (denom == 0.0)
      throw TwoPhotonResonanceError("two-photon resonance at transition " + std::to_string(i));
    c.lambda2[i] = -c.g2[i] / denom;
  }
  auto g2l2 = [&](int i) { return inside(i) ? c.g2[i] * c.lambda2[i] : 0.0; };

  c.stark.resize(m);
  c.kerr.resize(m);
  for (int i = 0; i < m; ++i) {
    const double l_im2 = lam(i - 2) * lam(i - 2);
    const double l_im1 = lam(i - 1) * lam(i - 1);
    const double l_i = lam(i) * lam(i);
    const double l_ip1 = lam(i + 1) * lam(i + 1);

    c.stark[i] = chi(i - 1) * (1.0 - l_i) - chi(i) * (1.0 - l_im1) - 2.0 * chi(i - 1) * l_im1 +
                 0.25 * (9.0 * chi(i - 2) * l_im1 - 3.0 * chi(i - 1) * l_im2 - chi(i) * l_ip1 +
                         3.0 * chi(i + 1) * l_i) -
                 g2l2(i) - 3.0 * g2l2(i - 2);

    c.kerr[i] = 0.25 * (3.0 * chi(i - 2) * l_im1 - chi(i - 1) * l_im2 + chi(i) * l_ip1 -
                        3.0 * chi(i + 1) * l_i) +
                (chi(i) - chi(i - 1)) * (l_i + l_im1) + g2l2(i) - g2l2(i - 2);
  }

  if (m >= 2) {
    c.chi_prime = c.stark[1] - c.stark[0];
    c.zeta_prime = c.kerr[1] - c.kerr[0];
  }
  c.n_crit = critical_photon_number(spec);
  return c;
}

NumericCoefficients chi_zeta_numeric(const SystemSpec& spec, int fit_n_max, LabelRule rule) {
  if (spec.num_levels() < 2) throw InvalidArgument("chi_zeta_numeric: need M >= 2");
  if (fit_n_max < 1) throw InvalidArgument("chi_zeta_numeric: fit range needs at least two points");

  NumericCoefficients out;
  const int points = fit_n_max + 1;
  out.pulls.resize(points);
  for (int n = 0; n < points; ++n)
    out.pulls[n] = effective_frequency(spec, 1, n, rule) - effective_frequency(spec, 0, n, rule);

  double mean_n = 0.0, mean_d = 0.0;
  for (int n = 0; n < points; ++n) {
    mean_n += n;
    mean_d += out.pulls[n];
  }
  mean_n /= points;
  mean_d /= points;
  double sxy = 0.0, sxx = 0.0;
  for (int n = 0; n < points; ++n) {
    sxy += (n - mean_n) * (out.pulls[n] - mean_d);
    sxx += (n - mean_n) * (n - mean_n);
  }
  // K (a^dag a)^2 shifts the n -> n+1 transition by K (2n + 1), so the pull
  // is chi' + zeta' (2n + 1): slope 2 zeta', intercept chi' + zeta'.
  const double slope = sxy / sxx;
  const double intercept = mean_d - slope * mean_n;
  out.zeta_prime = 0.5 * slope;
  out.chi_prime = intercept - out.zeta_prime;

  for (int n = 0; n < points; ++n)
    out.max_residual = std::max(out.max_residual, std::abs(out.pulls[n] - intercept - slope * n));
  out.ill_conditioned = out.max_residual > 0.1 * std::abs(out.pulls[0]);
  return out;
}

double critical_photon_number(const SystemSpec& spec) {
  if (spec.num_levels() < 2) return std::numeric_limits<double>::infinity();
  const double lambda0 = detunings(spec).lambda[0];
  if (lambda0 == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (4.0 * lambda0 * lambda0);
}

}  // namespace cqed
