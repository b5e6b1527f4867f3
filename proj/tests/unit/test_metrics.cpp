#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cqed/eigenblocks.hpp"
#include "cqed/errors.hpp"
#include "cqed/metrics.hpp"
#include "cqed/model.hpp"
#include "fixtures.hpp"

using namespace cqed;

namespace {

// |a psi|^2 for psi in block n+1 with bare index i carrying n+1-i photons.
double photon_norm(const std::vector<double>& psi, std::int64_t n_total) {
  double sum = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i)
    sum += psi[i] * psi[i] * static_cast<double>(n_total - static_cast<std::int64_t>(i));
  return sum;
}

double label_one_overlap_sq(const SystemSpec& spec, std::int64_t n, const std::vector<double>& image) {
  const auto block = dressed_block(spec, static_cast<double>(n));
  if (block.block.dim < 2) return 0.0;
  const auto v = block.state(1);
  double overlap = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) overlap += v[i] * image[i];
  return overlap * overlap;
}

SystemSpec uncoupled() {
  const auto spec = fixtures::transmon(6);
  return SystemSpec(MlsSpec(spec.mls.level_freqs(), std::vector<double>(5, 0.0)), spec.omega_r, spec.kappa);
}

SystemSpec shifted(const SystemSpec& spec, double offset) {
  auto levels = spec.mls.level_freqs();
  for (auto& w : levels) w += offset;
  return SystemSpec(MlsSpec(levels, spec.mls.couplings()), spec.omega_r, spec.kappa);
}

}  // namespace

TEST_CASE("cavity pull") {
  CHECK(cavity_pull(2.0, 0.0, 10.0) == 2.0);
  CHECK(cavity_pull(2.0, -0.01, 100.0) == doctest::Approx(1.0));
  CHECK(cavity_pull(-1.5, 0.25, 0.0) == -1.5);
  CHECK_THROWS_AS(cavity_pull(1.0, 1.0, -1.0), InvalidArgument);
}

TEST_CASE("T1 to gamma_1") {
  for (double t1 : {0.5, 1.0, 20.0}) CHECK(gamma1_from_t1_us(t1) * 2.0 * std::numbers::pi * t1 == doctest::Approx(1.0));
  CHECK_THROWS_AS(gamma1_from_t1_us(0.0), InvalidArgument);
}

TEST_CASE("SNR closed form reaches the optimum at kappa = 2 chi") {
  const double chi = 1.7;
  SnrConfig cfg{0.8, gamma1_from_t1_us(1.0), 1.0};
  // delta = 2 chi between the two pulled frequencies
  for (double n : {0.5, 7.0, 55.0}) {
    const auto p = snr_point(2.0 * chi, 2.0 * chi, cfg, n);
    const double expected = 4.0 * cfg.eta * n * chi / cfg.gamma_1;
    CHECK(fixtures::rel_diff(p.snr, expected) < 1e-14);
  }
  CHECK(snr_point(2.0 * chi, 2.0 * chi, cfg, 0.0).snr == 0.0);
  CHECK_THROWS_AS(snr_point(1.0, 1.0, cfg, -1.0), InvalidArgument);
}

TEST_CASE("SNR curve uses kappa from |chi'|") {
  SnrConfig cfg{1.0, 1.0, 1.5};
  const auto curve = snr_curve(-2.0, 0.01, cfg, {0.0, 10.0, 40.0});
  REQUIRE(curve.size() == 3);
  for (const auto& p : curve) {
    const auto direct = snr_point(cavity_pull(-2.0, 0.01, p.n_bar), 1.5 * 4.0, cfg, p.n_bar);
    CHECK(p.snr == direct.snr);
    CHECK(p.alpha_sep_sq == direct.alpha_sep_sq);
  }
  cfg.eta = 0.0;
  CHECK_THROWS_AS(snr_curve(1.0, 0.0, cfg, {1.0}), InvalidArgument);
}

TEST_CASE("Purcell rate vanishes without coupling") {
  const auto spec = uncoupled();
  for (std::int64_t n : {0, 3, 100}) {
    const auto r = purcell_rates(spec, n);
    CHECK(r.rate == 0.0);
    CHECK(r.leakage == 0.0);
  }
}

TEST_CASE("Purcell rate approaches lambda^2 at weak coupling") {
  // Relative deviation from lambda^2 shrinks like lambda^2.
  double previous = 0.0;
  for (double g : {20.0, 10.0, 5.0}) {
    const auto spec = fixtures::transmon(6, 7000.0, 0.03, g);
    const double lambda = g / (6000.0 - 7000.0);
    const double dev = fixtures::rel_diff(purcell_rates(spec, 0).rate, lambda * lambda);
    CHECK(dev < 10.0 * lambda * lambda);
    if (previous > 0.0) CHECK(previous / dev > 3.5);
    previous = dev;
  }
}

TEST_CASE("Purcell rate decreases at large photon number") {
  const auto spec = fixtures::transmon(6);
  double previous = purcell_rates(spec, 100).rate;
  for (std::int64_t n : {300, 1000, 3000, 10000, 100000}) {
    const double rate = purcell_rates(spec, n).rate;
    CHECK(rate < previous);
    previous = rate;
  }
}

TEST_CASE("dressed decay is bare decay at weak coupling") {
  const auto spec = fixtures::transmon(6, 7000.0, 0.03, 1e-4);
  const auto r = dressed_decay_rates(spec, 0);
  CHECK(r.rate == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.leakage < 1e-12);
}

TEST_CASE("Purcell terms partition |a psi|^2") {
  const auto spec = fixtures::transmon(6);
  for (std::int64_t n : {0, 1, 4, 5, 20, 1000}) {
    const auto upper = dressed_block(spec, n + 1.0).state(1);
    const Matrix a = lowering_elements(n + 1, spec.num_levels());
    const auto image = a.apply(upper);
    const auto r = purcell_rates(spec, n);
    const double total = r.rate + r.leakage + label_one_overlap_sq(spec, n, image);
    CHECK(fixtures::rel_diff(total, photon_norm(upper, n + 1)) < 1e-9);
  }
}

TEST_CASE("rates do not depend on the MLS energy origin") {
  const auto spec = fixtures::transmon(6);
  const auto moved = shifted(spec, 1234.5);
  const auto disp = default_charge_dispersions(6);
  const OneOverFNoise noise;
  for (std::int64_t n : {0, 7, 300}) {
    const auto p0 = purcell_rates(spec, n), p1 = purcell_rates(moved, n);
    const auto d0 = dressed_decay_rates(spec, n), d1 = dressed_decay_rates(moved, n);
    const auto z0 = dressed_dephasing_rates(spec, n, disp, noise), z1 = dressed_dephasing_rates(moved, n, disp, noise);
    CHECK(fixtures::rel_diff(p0.rate, p1.rate) < 1e-8);
    CHECK(fixtures::rel_diff(p0.leakage, p1.leakage) < 1e-6);
    CHECK(fixtures::rel_diff(d0.rate, d1.rate) < 1e-8);
    CHECK(fixtures::rel_diff(d0.leakage, d1.leakage) < 1e-6);
    CHECK(fixtures::rel_diff(z0.rate, z1.rate) < 1e-6);
    CHECK(fixtures::rel_diff(z0.leakage, z1.leakage) < 1e-6);
  }
}

TEST_CASE("1/f spectrum") {
  const OneOverFNoise noise;
  CHECK(noise.ratio_to_1hz(1000.0) == doctest::Approx(1e-9));
  CHECK(noise.ratio_to_1hz(-1000.0) == doctest::Approx(1e-9));
  CHECK(noise.ratio_to_1hz(1e-6) == doctest::Approx(1.0));
  CHECK_THROWS_AS(noise.ratio_to_1hz(0.0), InvalidArgument);
}

TEST_CASE("dephasing vanishes without coupling") {
  const auto spec = uncoupled();
  const auto r = dressed_dephasing_rates(spec, 10, default_charge_dispersions(6), OneOverFNoise{});
  CHECK(r.rate == 0.0);
  CHECK(r.leakage == 0.0);
}

TEST_CASE("rate inputs are validated") {
  const auto spec = fixtures::transmon(6);
  CHECK_THROWS_AS(purcell_rates(spec, -1), InvalidArgument);
  CHECK_THROWS_AS(dressed_decay_rates(spec, -1), InvalidArgument);
  const SystemSpec single(MlsSpec({0.0}, {}), 7000.0, 0.03);
  CHECK_THROWS_AS(purcell_rates(single, 0), InvalidArgument);
}

TEST_CASE("rates versus power") {
  const auto spec = fixtures::transmon(6);
  const std::vector<double> powers{-10.0, 0.0, 20.0, 40.0, 60.0, 80.0, 100.0};
  const SolverOptions options;
  const auto table = rates_vs_power(spec, 7000.0, powers, default_charge_dispersions(6), OneOverFNoise{}, options);
  REQUIRE(table.rows.size() == powers.size());

  const auto low = purcell_rates(spec, table.rows.front().n_at_power);
  CHECK(table.rows.front().n_at_power == 0);
  CHECK(table.rows.front().gamma_kappa == low.rate);
  CHECK(table.rows.front().gamma_kappa_leak == low.leakage);

  const auto sweep = power_sweep(spec, 1, 7000.0, powers, SweepDirection::up, options);
  for (std::size_t k = 0; k < powers.size(); ++k) {
    const auto& row = table.rows[k];
    CHECK(row.power_db == powers[k]);
    CHECK(row.n_photons == sweep.points[k].n);
    CHECK(row.n_at_power == std::llround(row.n_photons));
    CHECK(row.converged);
    if (k > 0) CHECK(row.n_photons >= table.rows[k - 1].n_photons);
  }
  const auto threaded = rates_vs_power(spec, 7000.0, powers, default_charge_dispersions(6), OneOverFNoise{}, options, 4);
  for (std::size_t k = 0; k < powers.size(); ++k) CHECK(threaded.rows[k].gamma_d == table.rows[k].gamma_d);
}
