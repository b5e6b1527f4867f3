#pragma once

// Parameterization of an M-level system (MLS) coupled to a single resonator
// mode in generalized Jaynes-Cummings form. All frequencies and rates are
// ordinary frequencies (omega / 2pi) in MHz.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cqed/linalg.hpp"

namespace cqed {

/// Ladder of an M-level system: level frequencies (level 0 at 0 by
/// convention) and nearest-neighbour couplings g_i to the resonator.
class MlsSpec {
 public:
  MlsSpec(std::vector<double> level_freqs, std::vector<double> couplings);

  std::size_t num_levels() const noexcept { return level_freqs_.size(); }
  const std::vector<double>& level_freqs() const noexcept { return level_freqs_; }
  const std::vector<double>& couplings() const noexcept { return couplings_; }

  /// omega_{i+1} - omega_i
  double transition(std::size_t i) const;

 private:
  std::vector<double> level_freqs_;
  std::vector<double> couplings_;
};

/// MLS plus resonator frequency and linewidth.
struct SystemSpec {
  SystemSpec(MlsSpec mls, double omega_r, double kappa);

  MlsSpec mls;
  double omega_r;
  double kappa;

  std::size_t num_levels() const noexcept { return mls.num_levels(); }
};

/// Delta_i = (omega_{i+1} - omega_i) - omega_r and lambda_i = -g_i / Delta_i.
struct Detunings {
  std::vector<double> delta;
  std::vector<double> lambda;
};

/// Constant-anharmonicity transmon ladder:
/// omega_i = i*omega_10 + alpha*i*(i-1)/2 with alpha = omega_21 - omega_10,
/// and g_i = g0*sqrt(i+1).
MlsSpec build_transmon_spec(double omega_10, double omega_21, double g0, int num_levels);

/// Throws ResonanceError if any Delta_i is exactly zero.
Detunings detunings(const SystemSpec& spec);

/// Number of bare states |n_total - i, i> with i < M and n_total - i >= 0.
std::size_t block_dimension(double n_total, std::size_t num_levels);

/// Matrix of <n_from-1-j, j| a |n_from-i, i> between the bare bases of blocks
/// n_from-1 (rows) and n_from (columns).
Matrix lowering_elements(std::int64_t n_from, std::size_t num_levels);

/// Sigma_- = sum_i (g_i/g_0) |i><i+1| on the bare MLS basis.
Matrix sigma_minus_elements(std::size_t num_levels, std::span<const double> couplings);

/// Sigma_z = sum_i (eps_i/eps_1) |i><i|; requires at least two dispersions and
/// eps_1 != 0.
Matrix sigma_z_elements(std::size_t num_levels, std::span<const double> charge_dispersions);

/// Default charge-dispersion ratios eps_i/eps_1 for a transmon:
/// 10^{3(i-1)/2} for i >= 1 (so eps_5/eps_1 = 1e6) and 0.1 for level 0.
/// The level-0 value is a placeholder; override it when the device is known.
std::vector<double> default_charge_dispersions(std::size_t num_levels);

}  // namespace cqed
