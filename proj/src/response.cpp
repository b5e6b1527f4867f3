#include "cqed/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "cqed/eigenblocks.hpp"
#include "cqed/errors.hpp"
#include "cqed/parallel.hpp"

namespace cqed {
namespace {

void check_inputs(const SystemSpec& spec, std::size_t level, const DriveSpec& drive) {
  if (level >= spec.num_levels())
    throw InvalidArgument("response: level " + std::to_string(level) + " exceeds M-1");
  if (!(drive.epsilon >= 0.0) || !std::isfinite(drive.epsilon))
    throw InvalidArgument("response: drive amplitude must be finite and >= 0");
  if (!std::isfinite(drive.omega_m)) throw InvalidArgument("response: omega_m must be finite");
}

double tolerance_for(const SolverOptions& options, double n) {
  return options.tolerance * std::max(1.0, n);
}

template <class F>
double bracketed_root(F&& residual, double a, double fa, double b, double fb) {
  if (a > b) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  std::uintmax_t max_iter = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(residual, a, b, fa, fb,
                                                          boost::math::tools::eps_tolerance<double>(), max_iter);
  return std::abs(residual(lo)) <= std::abs(residual(hi)) ? lo : hi;
}

}  // namespace

double epsilon_from_power_db(const SystemSpec& spec, double power_db) {
  return 0.5 * spec.kappa * std::pow(10.0, power_db / 20.0);
}

double power_db_from_epsilon(const SystemSpec& spec, double epsilon) {
  return 20.0 * std::log10(epsilon / (0.5 * spec.kappa));
}

double photon_ceiling(const SystemSpec& spec, const DriveSpec& drive) {
  const double half_kappa = 0.5 * spec.kappa;
  return drive.epsilon * drive.epsilon / (half_kappa * half_kappa);
}

double steady_state_rhs(const SystemSpec& spec, std::size_t level, const DriveSpec& drive, double n) {
  const double detuning = effective_frequency(spec, level, n) - drive.omega_m;
  const double half_kappa = 0.5 * spec.kappa;
  return drive.epsilon * drive.epsilon / (detuning * detuning + half_kappa * half_kappa);
}

ResponsePoint steady_state_photons(const SystemSpec& spec, std::size_t level, const DriveSpec& drive,
                                   double init, const SolverOptions& options) {
  check_inputs(spec, level, drive);
  if (!(options.beta > 0.0 && options.beta <= 1.0))
    throw InvalidArgument("response: damping must lie in (0, 1]");

  const double ceiling = photon_ceiling(spec, drive);
  ResponsePoint point;
  point.branch = init > 0.5 * ceiling ? Branch::high : Branch::low;

  if (drive.epsilon == 0.0) {
    point.n = 0.0;
    point.omega_eff = effective_frequency(spec, level, 0.0);
    point.converged = true;
    point.iterations = 1;
    return point;
  }

  auto residual = [&](double x) { return steady_state_rhs(spec, level, drive, x) - x; };
  double n = std::isfinite(init) ? std::clamp(init, 0.0, ceiling) : 0.0;
  double beta = options.beta;
  int halvings = 0;
  double previous_n = n;
  double previous_step = 0.0;

  for (int it = 1; it <= options.max_iterations; ++it) {
    const double step = residual(n);
    point.iterations = it;
    point.residual = std::abs(step);
    if (point.residual <= tolerance_for(options, n)) {
      point.converged = true;
      break;
    }
    // Period-2 oscillation: the step flips sign without shrinking.
    if (previous_step * step < 0.0 && std::abs(step) >= 0.5 * std::abs(previous_step)) {
      if (halvings < options.max_halvings) {
        beta *= 0.5;
        ++halvings;
      } else {
        // The last two iterates bracket the fixed point the iteration keeps
        // overshooting; resolve it there instead of drifting to another branch.
        n = bracketed_root(residual, previous_n, previous_step, n, step);
        previous_step = 0.0;
        continue;
      }
    }
    previous_n = n;
    n += beta * step;
    previous_step = step;
  }

  point.n = n;
  point.omega_eff = effective_frequency(spec, level, n);
  if (!point.converged) point.residual = std::abs(steady_state_rhs(spec, level, drive, n) - n);
  return point;
}

ResponsePoint track_branch(const SystemSpec& spec, std::size_t level, const DriveSpec& drive, double from,
                           const SolverOptions& options) {
  check_inputs(spec, level, drive);
  const double ceiling = photon_ceiling(spec, drive);
  if (drive.epsilon == 0.0 || !std::isfinite(from)) return steady_state_photons(spec, level, drive, from, options);

  const double half_kappa = 0.5 * spec.kappa;
  auto residual = [&](double x) { return steady_state_rhs(spec, level, drive, x) - x; };
  // Photon-number distance over which the Lorentzian can change appreciably:
  // a quarter of the linearized way to resonance, at least a quarter linewidth.
  auto feature_scale = [&](double x) {
    const double w = effective_frequency(spec, level, x);
    const double dx = std::max(1e-3, 1e-7 * x);
    const double slope = std::abs(effective_frequency(spec, level, x + dx) - w) / dx;
    if (slope == 0.0) return std::numeric_limits<double>::infinity();
    return 0.25 * (std::abs(w - drive.omega_m) + half_kappa) / slope;
  };

  double a = std::clamp(from, 0.0, ceiling);
  double fa = residual(a);
  double start = a;
  if (std::abs(fa) > tolerance_for(options, a)) {
    // rhs(0) > 0 and rhs(ceiling) <= ceiling, so the walk always brackets a root.
    const double direction = fa > 0.0 ? 1.0 : -1.0;
    double h = 1e-9 * std::max(1.0, a);
    while (true) {
      double step = std::min(h, feature_scale(a));
      if (direction < 0.0) step = std::min(step, 0.5 * a + 1e-12);
      const double b = std::clamp(a + direction * step, 0.0, ceiling);
      const double fb = residual(b);
      if (fb == 0.0 || (fb > 0.0) != (fa > 0.0)) {
        start = fb == 0.0 ? b : bracketed_root(residual, a, fa, b, fb);
        break;
      }
      if (b == a) {
        start = b;
        break;
      }
      a = b;
      fa = fb;
      h *= 2.0;
    }
  }
  return steady_state_photons(spec, level, drive, start, options);
}

ResponsePoint solve_branch(const SystemSpec& spec, std::size_t level, const DriveSpec& drive,
                           Branch branch, const SolverOptions& options) {
  const double init = branch == Branch::low ? 0.0 : photon_ceiling(spec, drive);
  ResponsePoint point = track_branch(spec, level, drive, init, options);
  point.branch = branch;
  return point;
}

ResponseCurve power_sweep(const SystemSpec& spec, std::size_t level, double omega_m,
                          const std::vector<double>& powers_db, SweepDirection direction,
                          const SolverOptions& options) {
  for (std::size_t k = 1; k < powers_db.size(); ++k) {
    const bool ordered = direction == SweepDirection::up ? powers_db[k] > powers_db[k - 1]
                                                         : powers_db[k] < powers_db[k - 1];
    if (!ordered) throw InvalidArgument("power_sweep: power grid not sorted for the sweep direction");
  }

  ResponseCurve curve;
  curve.level = level;
  curve.omega_m = omega_m;
  curve.direction = direction;
  curve.powers_db = powers_db;
  curve.points.reserve(powers_db.size());

  const Branch seed_branch = direction == SweepDirection::up ? Branch::low : Branch::high;
  for (std::size_t k = 0; k < powers_db.size(); ++k) {
    const DriveSpec drive{epsilon_from_power_db(spec, powers_db[k]), omega_m};
    ResponsePoint point = k == 0 ? solve_branch(spec, level, drive, seed_branch, options)
                                 : track_branch(spec, level, drive, curve.points.back().n, options);
    point.branch = seed_branch;
    curve.points.push_back(point);
  }
  return curve;
}

ResponseMap frequency_power_map(const SystemSpec& spec, std::size_t level,
                                const std::vector<double>& omega_m_grid,
                                const std::vector<double>& powers_db, const SolverOptions& options,
                                unsigned threads) {
  if (omega_m_grid.empty() || powers_db.empty())
    throw InvalidArgument("frequency_power_map: grids must be non-empty");

  ResponseMap map;
  map.level = level;
  map.omega_m = omega_m_grid;
  map.powers_db = powers_db;
  map.cells.resize(omega_m_grid.size() * powers_db.size());

  const std::size_t cols = omega_m_grid.size();
  parallel_for(map.cells.size(), threads, [&](std::size_t idx) {
    const DriveSpec drive{epsilon_from_power_db(spec, powers_db[idx / cols]), omega_m_grid[idx % cols]};
    map.cells[idx] = solve_branch(spec, level, drive, Branch::low, options);
  });
  return map;
}

std::optional<std::pair<double, double>> bistable_window(const ResponseCurve& up,
                                                         const ResponseCurve& down,
                                                         double rel_tol) {
  if (up.points.size() != down.points.size())
    throw InvalidArgument("bistable_window: sweeps must share a grid");
  const std::size_t count = up.points.size();
  std::optional<std::pair<double, double>> window;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t kd = count - 1 - k;  // down-sweep runs in reverse order
    if (up.powers_db[k] != down.powers_db[kd])
      throw InvalidArgument("bistable_window: sweeps must share a grid");
    const double a = up.points[k].n;
    const double b = down.points[kd].n;
    if (std::abs(a - b) > rel_tol * std::max({1.0, a, b})) {
      const double p = up.powers_db[k];
      if (!window) window = std::make_pair(p, p);
      window->first = std::min(window->first, p);
      window->second = std::max(window->second, p);
    }
  }
  return window;
}

}  // namespace cqed
