#pragma once

#include <cmath>
#include <vector>

#include "cqed/model.hpp"

namespace fixtures {

// (omega_10, omega_21, g0) = (6000, 5750, 100) MHz
inline cqed::SystemSpec transmon(int levels, double omega_r = 7000.0, double kappa = 0.03, double g0 = 100.0) {
  return cqed::SystemSpec(cqed::build_transmon_spec(6000.0, 5750.0, g0, levels), omega_r, kappa);
}

// M = 2 with omega_10 = 6000 and a single coupling g.
inline cqed::SystemSpec two_level(double g, double omega_r = 7000.0, double kappa = 0.03) {
  return cqed::SystemSpec(cqed::MlsSpec({0.0, 6000.0}, {g}), omega_r, kappa);
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace fixtures
