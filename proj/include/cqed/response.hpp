#pragma once

// Self-consistent steady-state photon number of the driven resonator for a
// fixed MLS state:
//
//   n_i = eps^2 / ([omega_ri(n_i) - omega_m]^2 + [kappa/2]^2)
//
// solved by damped fixed-point iteration, plus power sweeps that carry the
// previous solution forward (hysteresis) and 2D frequency-power maps.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cqed/model.hpp"

namespace cqed {

struct DriveSpec {
  double epsilon = 0.0;  ///< drive amplitude (MHz)
  double omega_m = 0.0;  ///< measurement frequency (MHz)
};

enum class Branch { low, high };
enum class SweepDirection { up, down };

struct SolverOptions {
  double beta = 0.5;             ///< initial damping
  int max_iterations = 100000;
  double tolerance = 1e-10;      ///< relative to max(1, n)
  int max_halvings = 4;          ///< beta halvings on period-2 oscillation
};

struct ResponsePoint {
  double n = 0.0;
  double omega_eff = 0.0;  ///< omega_ri(n)
  Branch branch = Branch::low;
  bool converged = false;
  double residual = 0.0;   ///< |n - rhs(n)|
  int iterations = 0;
};

struct ResponseCurve {
  std::size_t level = 0;
  double omega_m = 0.0;
  SweepDirection direction = SweepDirection::up;
  std::vector<double> powers_db;  ///< in sweep order
  std::vector<ResponsePoint> points;
};

struct ResponseMap {
  std::size_t level = 0;
  std::vector<double> omega_m;    ///< columns
  std::vector<double> powers_db;  ///< rows
  std::vector<ResponsePoint> cells;  ///< row-major: powers x omega_m

  const ResponsePoint& at(std::size_t power_index, std::size_t freq_index) const {
    return cells.at(power_index * omega_m.size() + freq_index);
  }
};

/// Drive amplitude for a power in dB re kappa/2 (0 dB puts one photon in a
/// resonant linear cavity).
double epsilon_from_power_db(const SystemSpec& spec, double power_db);
double power_db_from_epsilon(const SystemSpec& spec, double epsilon);

/// Right-hand side of the steady-state equation at photon number n.
double steady_state_rhs(const SystemSpec& spec, std::size_t level, const DriveSpec& drive, double n);

/// Linear-cavity ceiling eps^2 / (kappa/2)^2; every fixed point lies below it.
double photon_ceiling(const SystemSpec& spec, const DriveSpec& drive);

ResponsePoint steady_state_photons(const SystemSpec& spec, std::size_t level, const DriveSpec& drive,
                                   double init, const SolverOptions& options = {});

/// Fixed point reached by following the sign of n - rhs(n) from `from` (the
/// direction the photon number relaxes in) to the first sign change, which
/// is bracketed and solved, then polished by steady_state_photons. Unlike
/// the bare damped iteration this cannot overshoot onto another branch.
ResponsePoint track_branch(const SystemSpec& spec, std::size_t level, const DriveSpec& drive, double from,
                           const SolverOptions& options = {});

/// Tracks from n = 0 (low) or from the photon ceiling (high).
ResponsePoint solve_branch(const SystemSpec& spec, std::size_t level, const DriveSpec& drive,
                           Branch branch, const SolverOptions& options = {});

/// Hysteresis sweep. `powers_db` must be strictly increasing for `up` and
/// strictly decreasing for `down`. The first point is seeded on the low
/// (up) or high (down) branch; each later point is tracked from its predecessor.
ResponseCurve power_sweep(const SystemSpec& spec, std::size_t level, double omega_m,
                          const std::vector<double>& powers_db, SweepDirection direction,
                          const SolverOptions& options = {});

/// Low-branch solution on every (power, omega_m) cell. Cells are independent
/// and are distributed over `threads` workers; the result does not depend on
/// the thread count.
ResponseMap frequency_power_map(const SystemSpec& spec, std::size_t level,
                                const std::vector<double>& omega_m_grid,
                                const std::vector<double>& powers_db,
                                const SolverOptions& options = {}, unsigned threads = 1);

/// Power interval (dB) where an up-sweep and a down-sweep over the same grid
/// disagree by more than `rel_tol`; nullopt when they agree everywhere.
std::optional<std::pair<double, double>> bistable_window(const ResponseCurve& up,
                                                         const ResponseCurve& down,
                                                         double rel_tol = 1e-3);

}  // namespace cqed
