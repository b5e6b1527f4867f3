#include "cqed/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cqed/errors.hpp"

namespace cqed {

MlsSpec::MlsSpec(std::vector<double> level_freqs, std::vector<double> couplings)
    : level_freqs_(std::move(level_freqs)), couplings_(std::move(couplings)) {
  if (level_freqs_.empty()) throw InvalidArgument("MlsSpec: at least one level is required");
  if (couplings_.size() + 1 != level_freqs_.size())
    throw InvalidArgument("MlsSpec: need exactly M-1 couplings for M levels");
  for (std::size_t i = 0; i < level_freqs_.size(); ++i) {
    if (!std::isfinite(level_freqs_[i]))
      throw InvalidArgument("MlsSpec: level frequency " + std::to_string(i) + " is not finite");
    if (i > 0 && !(level_freqs_[i] > level_freqs_[i - 1]))
      throw InvalidArgument("MlsSpec: level frequencies must be strictly increasing");
  }
  for (double g : couplings_)
    if (!(g >= 0.0) || !std::isfinite(g))
      throw InvalidArgument("MlsSpec: couplings must be finite and non-negative");
}

double MlsSpec::transition(std::size_t i) const {
  if (i + 1 >= level_freqs_.size()) throw InvalidArgument("MlsSpec::transition: index out of range");
  return level_freqs_[i + 1] - level_freqs_[i];
}

SystemSpec::SystemSpec(MlsSpec mls_in, double omega_r_in, double kappa_in)
    : mls(std::move(mls_in)), omega_r(omega_r_in), kappa(kappa_in) {
  if (!(omega_r > 0.0) || !std::isfinite(omega_r))
    throw InvalidArgument("SystemSpec: omega_r must be positive");
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw InvalidArgument("SystemSpec: kappa must be positive");
}

MlsSpec build_transmon_spec(double omega_10, double omega_21, double g0, int num_levels) {
  if (num_levels < 2) throw InvalidArgument("build_transmon_spec: need M >= 2");
  if (!(omega_10 > 0.0) || !(omega_21 > 0.0) || !(g0 > 0.0))
    throw InvalidArgument("build_transmon_spec: omega_10, omega_21 and g0 must be positive");

  const double alpha = omega_21 - omega_10;
  std::vector<double> freqs(num_levels);
  std::vector<double> couplings(num_levels - 1);
  for (int i = 0; i < num_levels; ++i) freqs[i] = i * omega_10 + alpha * i * (i - 1) / 2.0;
  for (int i = 0; i + 1 < num_levels; ++i) couplings[i] = g0 * std::sqrt(i + 1.0);
  return MlsSpec(std::move(freqs), std::move(couplings));
}

Detunings detunings(const SystemSpec& spec) {
  const std::size_t transitions = spec.num_levels() - 1;
  Detunings out{std::vector<double>(transitions), std::vector<double>(transitions)};
  for (std::size_t i = 0; i < transitions; ++i) {
    const double delta = spec.mls.transition(i) - spec.omega_r;
    if (delta == 0.0)
      throw ResonanceError("transition " + std::to_string(i) + "<->" + std::to_string(i + 1) +
                           " is resonant with the resonator");
    out.delta[i] = delta;
    out.lambda[i] = -spec.mls.couplings()[i] / delta;
  }
  return out;
}

std::size_t block_dimension(double n_total, std::size_t num_levels) {
  if (n_total < 0.0) throw InvalidArgument("block_dimension: negative excitation number");
  const double reachable = std::floor(n_total) + 1.0;
  return reachable >= static_cast<double>(num_levels) ? num_levels
                                                      : static_cast<std::size_t>(reachable);
}

Matrix lowering_elements(std::int64_t n_from, std::size_t num_levels) {
  if (n_from < 1) throw InvalidArgument("lowering_elements: n_from must be >= 1");
  const std::size_t rows = block_dimension(static_cast<double>(n_from - 1), num_levels);
  const std::size_t cols = block_dimension(static_cast<double>(n_from), num_levels);
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) out(i, i) = std::sqrt(static_cast<double>(n_from - static_cast<std::int64_t>(i)));
  return out;
}

Matrix sigma_minus_elements(std::size_t num_levels, std::span<const double> couplings) {
  Matrix out(num_levels, num_levels);
  if (num_levels < 2) return out;
  if (couplings.size() + 1 < num_levels)
    throw InvalidArgument("sigma_minus_elements: need M-1 couplings");
  if (couplings[0] == 0.0) throw InvalidArgument("sigma_minus_elements: g_0 must be nonzero");
  for (std::size_t i = 0; i + 1 < num_levels; ++i) out(i, i + 1) = couplings[i] / couplings[0];
  return out;
}

Matrix sigma_z_elements(std::size_t num_levels, std::span<const double> charge_dispersions) {
  if (charge_dispersions.size() < num_levels || charge_dispersions.size() < 2)
    throw InvalidArgument("sigma_z_elements: need a dispersion for every level (and at least 2)");
  const double eps1 = charge_dispersions[1];
  if (eps1 == 0.0) throw InvalidArgument("sigma_z_elements: eps_1 must be nonzero");
  Matrix out(num_levels, num_levels);
  for (std::size_t i = 0; i < num_levels; ++i) out(i, i) = charge_dispersions[i] / eps1;
  return out;
}

std::vector<double> default_charge_dispersions(std::size_t num_levels) {
  std::vector<double> out(std::max<std::size_t>(num_levels, 2));
  out[0] = 0.1;
  for (std::size_t i = 1; i < out.size(); ++i) out[i] = std::pow(10.0, 1.5 * (static_cast<double>(i) - 1.0));
  return out;
}

}  // namespace cqed
