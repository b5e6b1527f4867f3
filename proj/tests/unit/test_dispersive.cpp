#include <doctest.h>

#include <cmath>

#include "cqed/dispersive.hpp"
#include "cqed/errors.hpp"
#include "fixtures.hpp"

using namespace cqed;

namespace {

bool near_pole(const SystemSpec& spec, double window) {
  const auto& mls = spec.mls;
  for (std::size_t i = 0; i + 1 < mls.num_levels(); ++i)
    if (std::abs(mls.transition(i) - spec.omega_r) < window) return true;
  return false;
}

double max_lambda(const SystemSpec& spec) {
  const auto d = detunings(spec);
  double out = 0.0;
  for (double l : d.lambda) out = std::max(out, std::abs(l));
  return out;
}

}  // namespace

TEST_CASE("two-level identities") {
  for (double omega_r : {4515.0, 7000.0, 7660.0, 9000.0}) {
    const auto c = analytic_coefficients(fixtures::transmon(2, omega_r));
    const double chi = c.chi[0], lambda = c.lambda[0];
    CHECK(fixtures::rel_diff(c.stark[0], -chi) <= 1e-12);
    CHECK(fixtures::rel_diff(c.stark[1], chi * (1 - 2 * lambda * lambda)) <= 1e-12);
    CHECK(fixtures::rel_diff(c.kerr[0], chi * lambda * lambda) <= 1e-12);
    CHECK(fixtures::rel_diff(c.kerr[1], -chi * lambda * lambda) <= 1e-12);
  }
  const auto c = analytic_coefficients(fixtures::transmon(2, 7000));
  CHECK(c.chi[0] == doctest::Approx(-10.0).epsilon(1e-14));
  CHECK(c.lambda[0] == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(c.kerr[1] == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("uncoupled ladder has vanishing coefficients") {
  const SystemSpec spec(MlsSpec({0.0, 6000.0, 11750.0, 17250.0}, {0.0, 0.0, 0.0}), 7000.0, 0.03);
  const auto c = analytic_coefficients(spec);
  for (double s : c.stark) CHECK(s == 0.0);
  for (double k : c.kerr) CHECK(k == 0.0);
  CHECK(c.chi_prime == 0.0);
  CHECK(c.zeta_prime == 0.0);
  CHECK(std::isinf(c.n_crit));
  const auto n = chi_zeta_numeric(spec);
  CHECK(n.chi_prime == 0.0);
  CHECK(n.zeta_prime == 0.0);
}

TEST_CASE("resonance errors") {
  CHECK_THROWS_AS(analytic_coefficients(fixtures::transmon(2, 6000)), ResonanceError);
  // Delta_0 + Delta_1 = 0 at omega_r = (omega_10 + omega_21)/2
  CHECK_THROWS_AS(analytic_coefficients(fixtures::transmon(3, 5875)), TwoPhotonResonanceError);
}

TEST_CASE("boundary convention: a decoupled top level changes nothing") {
  const auto full = build_transmon_spec(6000, 5750, 100, 5);
  std::vector<double> g = full.couplings();
  g.back() = 0.0;
  const SystemSpec padded(MlsSpec(full.level_freqs(), g), 7000.0, 0.03);
  const auto truncated_mls = build_transmon_spec(6000, 5750, 100, 4);
  const SystemSpec truncated(truncated_mls, 7000.0, 0.03);
  const auto a = analytic_coefficients(padded);
  const auto b = analytic_coefficients(truncated);
  CHECK(a.chi_prime == b.chi_prime);
  CHECK(a.zeta_prime == b.zeta_prime);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(a.stark[i] == b.stark[i]);
    CHECK(a.kerr[i] == b.kerr[i]);
  }
}

TEST_CASE("critical photon number") {
  CHECK(critical_photon_number(fixtures::transmon(6, 4515)) == doctest::Approx(55.0).epsilon(0.01));
  const double n7660 = std::round(critical_photon_number(fixtures::transmon(6, 7660)));
  CHECK(n7660 >= 69.0);
  CHECK(n7660 <= 70.0);
  CHECK(critical_photon_number(fixtures::two_level(500.0)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("numeric fit reproduces the two-level pull at small lambda") {
  // Beyond fourth order the pull carries chi lambda^4 terms, so chi' converges
  // as lambda^4 and zeta' (itself chi lambda^2) as lambda^2, relative.
  auto errors = [](double lambda) {
    const auto spec = fixtures::two_level(1000.0 * lambda);
    const auto numeric = chi_zeta_numeric(spec);
    const auto analytic = analytic_coefficients(spec);
    CHECK_FALSE(numeric.ill_conditioned);
    return std::pair{fixtures::rel_diff(numeric.chi_prime, 2 * analytic.chi[0] * (1 - lambda * lambda)),
                     fixtures::rel_diff(numeric.zeta_prime, analytic.zeta_prime)};
  };
  const double lambda = 0.01;
  const auto [chi_err, zeta_err] = errors(lambda);
  const auto [chi_err_half, zeta_err_half] = errors(lambda / 2);
  CHECK(chi_err <= 50 * std::pow(lambda, 4));
  CHECK(zeta_err <= 50 * lambda * lambda);
  CHECK(std::log2(chi_err / chi_err_half) >= 3.5);
  CHECK(std::log2(zeta_err / zeta_err_half) >= 1.8);
}

TEST_CASE("fit model: pull is chi' + zeta' (2n + 1)") {
  const auto spec = fixtures::transmon(6, 4515);
  const auto numeric = chi_zeta_numeric(spec);
  for (std::size_t n = 0; n < numeric.pulls.size(); ++n)
    CHECK(std::abs(numeric.pulls[n] - numeric.chi_prime - numeric.zeta_prime * (2.0 * n + 1.0)) <=
          numeric.max_residual + 1e-12);
}

TEST_CASE("numeric sign relation at the same-sign operating point") {
  const auto numeric = chi_zeta_numeric(fixtures::transmon(6, 4515));
  CHECK((numeric.chi_prime > 0) == (numeric.zeta_prime > 0));
  const auto opposite = chi_zeta_numeric(fixtures::transmon(6, 7660));
  CHECK((opposite.chi_prime > 0) != (opposite.zeta_prime > 0));
}

TEST_CASE("analytic and numeric chi' agree in the dispersive regime and converge with lambda") {
  for (int levels : {2, 3, 6}) {
    int compared = 0;
    for (double omega_r = 3000.0; omega_r <= 9000.0; omega_r += 37.0) {
      const auto spec = fixtures::transmon(levels, omega_r, 0.03, 10.0);
      if (near_pole(spec, 3.0 * 10.0 * std::sqrt(levels)) || max_lambda(spec) > 0.05) continue;
      DispersiveCoefficients analytic;
      try {
        analytic = analytic_coefficients(spec);
      } catch (const TwoPhotonResonanceError&) {
        continue;
      }
      const auto numeric = chi_zeta_numeric(spec);
      const double err = std::abs(numeric.chi_prime - analytic.chi_prime);
      CHECK_MESSAGE(err <= std::max(1e-2 * std::abs(analytic.chi_prime), 1e-3),
                    "M=" << levels << " omega_r=" << omega_r);
      ++compared;

      // halving every coupling halves lambda; the discrepancy must shrink
      const auto half = fixtures::transmon(levels, omega_r, 0.03, 5.0);
      const double err_half = std::abs(chi_zeta_numeric(half).chi_prime - analytic_coefficients(half).chi_prime);
      const double rel = err / std::abs(analytic.chi_prime);
      const double rel_half = err_half / std::abs(analytic_coefficients(half).chi_prime);
      if (rel > 1e-9) CHECK_MESSAGE(rel_half <= 0.5 * rel, "M=" << levels << " omega_r=" << omega_r);
    }
    CHECK(compared > 50);
  }
}

TEST_CASE("chi' has no sign flips between poles except through small values") {
  const auto base = fixtures::transmon(6);
  const double step = 0.5;
  double prev = 0.0;
  bool have_prev = false;
  for (double omega_r = 3000.0; omega_r <= 9000.0; omega_r += step) {
    const auto spec = fixtures::transmon(6, omega_r);
    double chi = 0.0;
    bool pole = near_pole(spec, 2.0 * step);
    try {
      chi = analytic_coefficients(spec).chi_prime;
    } catch (const Error&) {
      pole = true;
    }
    // two-photon poles
    const auto& w = base.mls.level_freqs();
    for (std::size_t i = 0; i + 2 < w.size(); ++i)
      if (std::abs((w[i + 2] - w[i]) / 2 - omega_r) < 2.0 * step) pole = true;
    if (pole) {
      have_prev = false;
      continue;
    }
    if (have_prev && (chi > 0) != (prev > 0))
      CHECK_MESSAGE(std::min(std::abs(chi), std::abs(prev)) <= std::abs(chi - prev), "omega_r=" << omega_r);
    prev = chi;
    have_prev = true;
  }
}
