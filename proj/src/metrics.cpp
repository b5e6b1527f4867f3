#include "cqed/metrics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cqed/eigenblocks.hpp"
#include "cqed/errors.hpp"
#include "cqed/parallel.hpp"

namespace cqed {

double cavity_pull(double chi_prime, double zeta_prime, double n_bar) {
  if (!(n_bar >= 0.0)) throw InvalidArgument("cavity_pull: n_bar must be >= 0");
  return chi_prime + zeta_prime * n_bar;
}

double cavity_pull(const DispersiveCoefficients& coeffs, double n_bar) {
  return cavity_pull(coeffs.chi_prime, coeffs.zeta_prime, n_bar);
}

void SnrConfig::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidArgument("SnrConfig: eta must lie in (0, 1]");
  if (!(gamma_1 > 0.0)) throw InvalidArgument("SnrConfig: gamma_1 must be positive");
  if (!(kappa_over_2chi > 0.0)) throw InvalidArgument("SnrConfig: kappa/2chi' must be positive");
}

double gamma1_from_t1_us(double t1_us) {
  if (!(t1_us > 0.0)) throw InvalidArgument("T1 must be positive");
  return 1.0 / (2.0 * std::numbers::pi * t1_us);
}

SnrPoint snr_point(double delta, double kappa, const SnrConfig& cfg, double n_bar) {
  if (!(n_bar >= 0.0)) throw InvalidArgument("snr_point: n_bar must be >= 0");
  SnrPoint p;
  p.n_bar = n_bar;
  p.delta = delta;
  const double half_delta = 0.5 * delta;
  const double half_kappa = 0.5 * kappa;
  p.alpha_sep_sq = n_bar * delta * delta / (half_delta * half_delta + half_kappa * half_kappa);
  p.snr = cfg.eta * kappa * p.alpha_sep_sq / cfg.gamma_1;
  return p;
}

std::vector<SnrPoint> snr_curve(double chi_prime, double zeta_prime, const SnrConfig& cfg,
                                const std::vector<double>& n_bar_grid) {
  cfg.validate();
  const double kappa = cfg.kappa_over_2chi * 2.0 * std::abs(chi_prime);
  std::vector<SnrPoint> out;
  out.reserve(n_bar_grid.size());
  for (double n : n_bar_grid) out.push_back(snr_point(cavity_pull(chi_prime, zeta_prime, n), kappa, cfg, n));
  return out;
}

std::vector<SnrPoint> snr_curve(const DispersiveCoefficients& coeffs, const SnrConfig& cfg,
                                const std::vector<double>& n_bar_grid) {
  return snr_curve(coeffs.chi_prime, coeffs.zeta_prime, cfg, n_bar_grid);
}

namespace {

void check_rate_inputs(const SystemSpec& spec, std::int64_t n) {
  if (spec.num_levels() < 2) throw InvalidArgument("rates need M >= 2");
  if (n < 0) throw InvalidArgument("rates: photon number must be >= 0");
}

// Projects `image` (bare components in `target`'s block) onto each labeled
// dressed state of `target`.
std::vector<double> dressed_amplitudes(const DressedBlock& target, const std::vector<double>& image) {
  std::vector<double> amps(target.block.dim);
  for (std::size_t label = 0; label < target.block.dim; ++label) {
    const auto v = target.state(label);
    amps[label] = dot<double>(v, image);
  }
  return amps;
}

RatePair split(const std::vector<double>& amps) {
  RatePair out;
  out.rate = amps[0] * amps[0];
  for (std::size_t i = 2; i < amps.size(); ++i) out.leakage += amps[i] * amps[i];
  return out;
}

}  // namespace

RatePair purcell_rates(const SystemSpec& spec, std::int64_t n) {
  check_rate_inputs(spec, n);
  const DressedBlock upper = dressed_block(spec, n + 1.0);
  const DressedBlock lower = dressed_block(spec, n);
  const Matrix a = lowering_elements(n + 1, spec.num_levels());
  return split(dressed_amplitudes(lower, a.apply(upper.state(1))));
}

RatePair dressed_decay_rates(const SystemSpec& spec, std::int64_t n) {
  check_rate_inputs(spec, n);
  const DressedBlock upper = dressed_block(spec, n + 1.0);
  const DressedBlock lower = dressed_block(spec, n);
  const Matrix sigma = sigma_minus_elements(spec.num_levels(), spec.mls.couplings());

  // Sigma_- keeps the photon number: |n+1-j, j> -> |n+1-j, j-1>, which is
  // bare index j-1 of block n.
  const auto source = upper.state(1);
  std::vector<double> image(lower.block.dim, 0.0);
  for (std::size_t j = 1; j < source.size(); ++j)
    if (j - 1 < image.size()) image[j - 1] += sigma(j - 1, j) * source[j];
  return split(dressed_amplitudes(lower, image));
}

double OneOverFNoise::ratio_to_1hz(double freq_mhz) const {
  if (freq_mhz == 0.0 || !std::isfinite(freq_mhz))
    throw InvalidArgument("1/f spectrum is undefined at zero frequency");
  constexpr double kOneHzInMhz = 1e-6;
  return kOneHzInMhz / std::abs(freq_mhz);
}

RatePair dressed_dephasing_rates(const SystemSpec& spec, std::int64_t n, const std::vector<double>& dispersions,
                                 const NoiseSpectrum& noise) {
  check_rate_inputs(spec, n);
  const Matrix sigma_z = sigma_z_elements(spec.num_levels(), dispersions);
  // |n+1, 0> and |n, 1> both live in block n+1.
  const DressedBlock block = dressed_block(spec, n + 1.0);
  const auto source = block.state(1);
  std::vector<double> image(source.size());
  for (std::size_t j = 0; j < source.size(); ++j) image[j] = sigma_z(j, j) * source[j];
  const auto amps = dressed_amplitudes(block, image);

  const double e1 = block.reduced_energy(1);
  RatePair out;
  out.rate = amps[0] * amps[0] * noise.ratio_to_1hz(e1 - block.reduced_energy(0));
  for (std::size_t i = 2; i < amps.size(); ++i)
    out.leakage += amps[i] * amps[i] * noise.ratio_to_1hz(e1 - block.reduced_energy(i));
  return out;
}

RateTable rates_vs_power(const SystemSpec& spec, double omega_m, const std::vector<double>& powers_db,
                         const std::vector<double>& dispersions, const NoiseSpectrum& noise,
                         const SolverOptions& options, unsigned threads) {
  if (spec.num_levels() < 2) throw InvalidArgument("rates_vs_power: need M >= 2");
  const ResponseCurve sweep = power_sweep(spec, 1, omega_m, powers_db, SweepDirection::up, options);

  RateTable table;
  table.omega_m = omega_m;
  table.rows.resize(powers_db.size());
  parallel_for(powers_db.size(), threads, [&](std::size_t k) {
    RateRow& row = table.rows[k];
    row.power_db = powers_db[k];
    row.n_photons = sweep.points[k].n;
    row.converged = sweep.points[k].converged;
    row.n_at_power = std::llround(sweep.points[k].n);
    const RatePair purcell = purcell_rates(spec, row.n_at_power);
    const RatePair decay = dressed_decay_rates(spec, row.n_at_power);
    const RatePair dephasing = dressed_dephasing_rates(spec, row.n_at_power, dispersions, noise);
    row.gamma_kappa = purcell.rate;
    row.gamma_kappa_leak = purcell.leakage;
    row.gamma_1d = decay.rate;
    row.gamma_1d_leak = decay.leakage;
    row.gamma_d = dephasing.rate;
    row.gamma_d_leak = dephasing.leakage;
  });
  return table;
}

}  // namespace cqed
