#pragma once

// Readout figures of merit. Weak driving: cavity pull and homodyne SNR from
// the dispersive coefficients. Strong driving: QND-degradation rates from
// matrix elements between dressed states, each normalized to its bare rate
// (kappa, gamma_1, gamma_phi).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "cqed/dispersive.hpp"
#include "cqed/model.hpp"
#include "cqed/response.hpp"

namespace cqed {

/// delta = chi' + zeta' * n_bar
double cavity_pull(const DispersiveCoefficients& coeffs, double n_bar);
double cavity_pull(double chi_prime, double zeta_prime, double n_bar);

struct SnrConfig {
  double eta = 1.0;              ///< measurement efficiency, (0, 1]
  double gamma_1 = 1.0;          ///< 1/T1 in MHz (ordinary-frequency units)
  double kappa_over_2chi = 1.0;  ///< kappa = kappa_over_2chi * 2|chi'|

  void validate() const;
};

/// gamma_1 in MHz for T1 in microseconds: 1 / (2 pi T1).
double gamma1_from_t1_us(double t1_us);

struct SnrPoint {
  double n_bar = 0.0;
  double delta = 0.0;
  double alpha_sep_sq = 0.0;  ///< |alpha_1 - alpha_0|^2
  double snr = 0.0;
};

/// Pointer states for a drive midway between the two pulled frequencies:
/// |alpha_1 - alpha_0|^2 = n delta^2 / ((delta/2)^2 + (kappa/2)^2),
/// SNR = eta kappa |alpha_1 - alpha_0|^2 / gamma_1.
SnrPoint snr_point(double delta, double kappa, const SnrConfig& cfg, double n_bar);

std::vector<SnrPoint> snr_curve(double chi_prime, double zeta_prime, const SnrConfig& cfg,
                                const std::vector<double>& n_bar_grid);
std::vector<SnrPoint> snr_curve(const DispersiveCoefficients& coeffs, const SnrConfig& cfg,
                                const std::vector<double>& n_bar_grid);

/// Rate into |0> (or the logical partner) and the leakage sum over i not in {0, 1}.
struct RatePair {
  double rate = 0.0;
  double leakage = 0.0;
};

/// gamma_kappa/kappa = |<n,0| a |n,1>|^2 over dressed states, leakage over
/// <n-i, i| a |n,1>. Labels with n - i < 0 do not exist and are skipped.
RatePair purcell_rates(const SystemSpec& spec, std::int64_t n);

/// gamma_1d/gamma_1 = |<n,0| Sigma_- |n,1>|^2, leakage over <n-i, i| Sigma_- |n,1>.
RatePair dressed_decay_rates(const SystemSpec& spec, std::int64_t n);

/// Noise spectral density relative to its value at 1 Hz.
class NoiseSpectrum {
 public:
  virtual ~NoiseSpectrum() = default;
  /// S(f) / S(1 Hz) for f in MHz. Throws InvalidArgument at f = 0.
  virtual double ratio_to_1hz(double freq_mhz) const = 0;
};

/// S(f) proportional to 1/|f|.
class OneOverFNoise final : public NoiseSpectrum {
 public:
  double ratio_to_1hz(double freq_mhz) const override;
};

/// gamma_d/gamma_phi = |<n+1,0| Sigma_z |n,1>|^2 S(Dbar_10)/S(1 Hz) with
/// Dbar_1i = E_{n,1} - E_{n+1-i,i}; leakage sums i not in {0, 1}.
RatePair dressed_dephasing_rates(const SystemSpec& spec, std::int64_t n, const std::vector<double>& dispersions,
                                 const NoiseSpectrum& noise);

struct RateRow {
  double power_db = 0.0;
  double n_photons = 0.0;  ///< n_1 from the up-sweep
  std::int64_t n_at_power = 0;      ///< rounded, where rates are evaluated
  bool converged = false;
  double gamma_kappa = 0.0;
  double gamma_kappa_leak = 0.0;
  double gamma_1d = 0.0;
  double gamma_1d_leak = 0.0;
  double gamma_d = 0.0;
  double gamma_d_leak = 0.0;
};

struct RateTable {
  double omega_m = 0.0;
  std::vector<RateRow> rows;
};

/// Up-sweeps state |1> over `powers_db` (strictly increasing), rounds each
/// n_1 to the nearest integer and evaluates all three rate pairs there.
RateTable rates_vs_power(const SystemSpec& spec, double omega_m, const std::vector<double>& powers_db,
                         const std::vector<double>& dispersions, const NoiseSpectrum& noise,
                         const SolverOptions& options = {}, unsigned threads = 1);

}  // namespace cqed
