#pragma once

#include <vector>

#include "cqed/eigenblocks.hpp"
#include "cqed/model.hpp"

namespace cqed {

/// Fourth-order dispersive coefficients. Index i runs over transitions
/// (0..M-2) for chi/lambda/g2/lambda2 and over levels (0..M-1) for S/K.
struct DispersiveCoefficients {
  std::vector<double> chi;       ///< g_i^2 / Delta_i
  std::vector<double> lambda;    ///< -g_i / Delta_i
  std::vector<double> g2;        ///< lambda_i lambda_{i+1} (Delta_{i+1} - Delta_i)
  std::vector<double> lambda2;   ///< -g2_i / (Delta_{i+1} + Delta_i)
  std::vector<double> stark;     ///< S_i
  std::vector<double> kerr;      ///< K_i
  double chi_prime = 0.0;        ///< S_1 - S_0
  double zeta_prime = 0.0;       ///< K_1 - K_0
  double n_crit = 0.0;           ///< 1 / (4 lambda_0^2), +inf when g_0 = 0
};

/// Closed-form ac-Stark and Kerr coefficients. Transition quantities outside
/// [0, M-2] are zero. Throws ResonanceError or TwoPhotonResonanceError.
DispersiveCoefficients analytic_coefficients(const SystemSpec& spec);

struct NumericCoefficients {
  double chi_prime = 0.0;
  double zeta_prime = 0.0;
  double max_residual = 0.0;   ///< largest |delta(n) - fit(n)|
  bool ill_conditioned = false;  ///< max_residual > 10% of |delta(0)|
  std::vector<double> pulls;   ///< exact delta(n) on the fit range
};

/// Least-squares fit of the exact pull delta(n) = omega_r1(n) - omega_r0(n)
/// for n = 0..fit_n_max. With the (a^dag a)^2 Kerr term of the dispersive
/// Hamiltonian the pull is chi' + zeta' (2n + 1), and that is the model fitted.
NumericCoefficients chi_zeta_numeric(const SystemSpec& spec, int fit_n_max = 4,
                                     LabelRule rule = LabelRule::adiabatic);

/// 1 / (4 lambda_0^2); +infinity when g_0 = 0.
double critical_photon_number(const SystemSpec& spec);

}  // namespace cqed
