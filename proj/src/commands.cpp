#include "cqed/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "cqed/dispersive.hpp"
#include "cqed/eigenblocks.hpp"
#include "cqed/errors.hpp"
#include "cqed/metrics.hpp"
#include "cqed/oracle.hpp"
#include "cqed/parallel.hpp"
#include "cqed/response.hpp"

namespace cqed {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::int64_t flag(bool value) { return value ? 1 : 0; }

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

std::vector<int> level_counts(const Config& config, std::string_view section) {
  std::vector<int> out;
  for (auto m : config.integers(section, "num_levels_list")) {
    if (m < 2) throw ConfigError(0, "[" + std::string(section) + "] num_levels_list entries must be >= 2");
    out.push_back(static_cast<int>(m));
  }
  if (out.empty()) throw ConfigError(0, "[" + std::string(section) + "] num_levels_list is empty");
  return out;
}

std::vector<std::size_t> level_indices(const Config& config, std::string_view section) {
  std::vector<std::size_t> out;
  for (auto i : config.integers(section, "levels")) {
    if (i < 0) throw ConfigError(0, "[" + std::string(section) + "] levels must be >= 0");
    out.push_back(static_cast<std::size_t>(i));
  }
  if (out.empty()) throw ConfigError(0, "[" + std::string(section) + "] levels is empty");
  return out;
}

std::string_view direction_name(SweepDirection d) { return d == SweepDirection::up ? "up" : "down"; }

std::vector<SweepDirection> directions(const Config& config) {
  const auto word = config.word("response", "directions");
  if (word == "both") return {SweepDirection::up, SweepDirection::down};
  if (word == "up") return {SweepDirection::up};
  if (word == "down") return {SweepDirection::down};
  throw ConfigError(0, "[response] directions must be up, down or both");
}

unsigned workers(unsigned threads) { return std::max(1u, threads); }

}  // namespace

const std::vector<std::string_view>& command_names() {
  static const std::vector<std::string_view> names{"coeffs", "snr", "response", "map", "rates", "oracle"};
  return names;
}

CommandResult run_command(std::string_view name, const Config& config, unsigned threads) {
  if (name == "coeffs") return cmd_coeffs(config, threads);
  if (name == "snr") return cmd_snr(config, threads);
  if (name == "response") return cmd_response(config, threads);
  if (name == "map") return cmd_map(config, threads);
  if (name == "rates") return cmd_rates(config, threads);
  if (name == "oracle") return cmd_oracle(config, threads);
  throw ConfigError(0, "unknown command '" + std::string(name) + "'");
}

CommandResult cmd_coeffs(const Config& config, unsigned threads) {
  const auto counts = level_counts(config, "coeffs");
  const auto grid = linear_grid(config.number("coeffs", "omega_r_min"), config.number("coeffs", "omega_r_max"),
                                config.integer("coeffs", "points"));
  const auto fit_n_max = config.integer("coeffs", "fit_n_max");
  if (fit_n_max < 1) throw ConfigError(0, "[coeffs] fit_n_max must be >= 1");
  for (int m : counts) system_from_config(config, m, grid.front());

  Table table{"coeffs",
              {"num_levels", "omega_r", "chi_prime_analytic", "zeta_prime_analytic", "chi_prime_numeric",
               "zeta_prime_numeric", "fit_max_residual", "n_crit", "analytic_valid", "numeric_ill_conditioned",
               "dispersive", "sign_agree_analytic", "sign_agree_numeric"},
              {}};
  std::vector<std::vector<Cell>> rows(counts.size() * grid.size());
  parallel_for(rows.size(), workers(threads), [&](std::size_t idx) {
    const int m = counts[idx / grid.size()];
    const double omega_r = grid[idx % grid.size()];
    const SystemSpec spec = system_from_config(config, m, omega_r);

    double chi = kNan, zeta = kNan, n_crit = kNan;
    bool analytic_valid = true;
    try {
      const auto coeffs = analytic_coefficients(spec);
      chi = coeffs.chi_prime;
      zeta = coeffs.zeta_prime;
      n_crit = coeffs.n_crit;
    } catch (const ResonanceError&) {
      analytic_valid = false;
    } catch (const TwoPhotonResonanceError&) {
      analytic_valid = false;
    }
    const auto numeric = chi_zeta_numeric(spec, static_cast<int>(fit_n_max));
    const bool dispersive = analytic_valid && !numeric.ill_conditioned && n_crit >= 1.0;
    rows[idx] = {std::int64_t{m},
                 omega_r,
                 chi,
                 zeta,
                 numeric.chi_prime,
                 numeric.zeta_prime,
                 numeric.max_residual,
                 n_crit,
                 flag(analytic_valid),
                 flag(numeric.ill_conditioned),
                 flag(dispersive),
                 flag(analytic_valid && sign_of(chi) == sign_of(zeta)),
                 flag(sign_of(numeric.chi_prime) == sign_of(numeric.zeta_prime))};
  });
  for (auto& row : rows) table.add_row(std::move(row));
  return {{std::move(table)}, true};
}

CommandResult cmd_snr(const Config& config, unsigned) {
  const SystemSpec same = system_from_config(config, std::nullopt, config.number("snr", "omega_r_same"));
  const SystemSpec opposite = system_from_config(config, std::nullopt, config.number("snr", "omega_r_opposite"));
  DispersiveCoefficients same_coeffs, opposite_coeffs;
  try {
    same_coeffs = analytic_coefficients(same);
    opposite_coeffs = analytic_coefficients(opposite);
  } catch (const ResonanceError& e) {
    throw ConfigError(0, std::string("[snr] ") + e.what());
  } catch (const TwoPhotonResonanceError& e) {
    throw ConfigError(0, std::string("[snr] ") + e.what());
  }

  double nbar_max = config.number("snr", "nbar_max");
  if (nbar_max == 0.0) nbar_max = std::min(same_coeffs.n_crit, opposite_coeffs.n_crit);
  if (!(nbar_max > 0.0) || !std::isfinite(nbar_max)) throw ConfigError(0, "[snr] nbar_max must be positive");
  const auto points = config.integer("snr", "nbar_points");
  if (points < 1) throw ConfigError(0, "[snr] nbar_points must be >= 1");
  std::vector<double> n_grid;
  for (std::int64_t k = 1; k <= points; ++k)
    n_grid.push_back(nbar_max * static_cast<double>(k) / static_cast<double>(points));

  const double t1 = config.number("snr", "t1_us");
  if (!(t1 > 0.0)) throw ConfigError(0, "[snr] t1_us must be positive");
  const double gamma_1 = gamma1_from_t1_us(t1);

  struct Scenario {
    std::string_view name;
    double omega_r;
    double chi_prime;
    double zeta_prime;
    double n_crit;
  };
  const Scenario scenarios[] = {
      {"same_sign", same.omega_r, same_coeffs.chi_prime, same_coeffs.zeta_prime, same_coeffs.n_crit},
      {"opposite_sign", opposite.omega_r, opposite_coeffs.chi_prime, opposite_coeffs.zeta_prime,
       opposite_coeffs.n_crit},
      {"second_order", same.omega_r, same_coeffs.chi_prime, 0.0, same_coeffs.n_crit},
  };

  Table table{"snr",
              {"scenario", "omega_r", "chi_prime", "zeta_prime", "n_crit", "kappa_over_2chi", "kappa", "n_bar",
               "delta", "alpha_sep_sq", "snr"},
              {}};
  for (double ratio : config.numbers("snr", "kappa_over_2chi")) {
    SnrConfig cfg{config.number("snr", "eta"), gamma_1, ratio};
    try {
      cfg.validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError(0, std::string("[snr] ") + e.what());
    }
    for (const auto& s : scenarios) {
      const double kappa = ratio * 2.0 * std::abs(s.chi_prime);
      for (const auto& p : snr_curve(s.chi_prime, s.zeta_prime, cfg, n_grid))
        table.add_row({std::string(s.name), s.omega_r, s.chi_prime, s.zeta_prime, s.n_crit, ratio, kappa, p.n_bar,
                       p.delta, p.alpha_sep_sq, p.snr});
    }
  }
  return {{std::move(table)}, true};
}

CommandResult cmd_response(const Config& config, unsigned threads) {
  const auto counts = level_counts(config, "response");
  const auto levels = level_indices(config, "response");
  const auto dirs = directions(config);
  const SolverOptions options = solver_from_config(config);
  const auto up_grid = stepped_grid(config.number("response", "power_min_db"),
                                    config.number("response", "power_max_db"),
                                    config.number("response", "power_step_db"));
  std::vector<double> down_grid(up_grid.rbegin(), up_grid.rend());

  struct Job {
    int m;
    std::size_t level;
    SweepDirection direction;
  };
  std::vector<Job> jobs;
  std::vector<SystemSpec> specs;
  for (int m : counts) {
    specs.push_back(system_from_config(config, m));
    for (std::size_t level : levels)
      if (level < static_cast<std::size_t>(m))
        for (auto d : dirs) jobs.push_back({m, level, d});
  }
  if (jobs.empty()) throw ConfigError(0, "[response] no level is below any num_levels entry");

  std::vector<ResponseCurve> curves(jobs.size());
  parallel_for(jobs.size(), workers(threads), [&](std::size_t k) {
    const auto& job = jobs[k];
    const auto pos = std::find(counts.begin(), counts.end(), job.m) - counts.begin();
    const SystemSpec& spec = specs[static_cast<std::size_t>(pos)];
    curves[k] = power_sweep(spec, job.level, spec.omega_r + config.number("response", "omega_m_offset"),
                            job.direction == SweepDirection::up ? up_grid : down_grid, job.direction, options);
  });

  CommandResult result;
  Table table{"response",
              {"num_levels", "level", "direction", "power_db", "epsilon", "n", "omega_eff", "omega_eff_shift",
               "converged", "residual", "iterations"},
              {}};
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const auto& curve = curves[k];
    const SystemSpec& spec =
        specs[static_cast<std::size_t>(std::find(counts.begin(), counts.end(), jobs[k].m) - counts.begin())];
    for (std::size_t p = 0; p < curve.points.size(); ++p) {
      const auto& pt = curve.points[p];
      result.all_converged = result.all_converged && pt.converged;
      table.add_row({std::int64_t{jobs[k].m}, static_cast<std::int64_t>(curve.level),
                     std::string(direction_name(curve.direction)), curve.powers_db[p],
                     epsilon_from_power_db(spec, curve.powers_db[p]), pt.n, pt.omega_eff, pt.omega_eff - spec.omega_r,
                     flag(pt.converged), pt.residual, std::int64_t{pt.iterations}});
    }
  }
  result.tables.push_back(std::move(table));
  return result;
}

CommandResult cmd_map(const Config& config, unsigned threads) {
  const SystemSpec spec = system_from_config(config);
  const auto levels = level_indices(config, "map");
  for (auto level : levels)
    if (level >= spec.num_levels()) throw ConfigError(0, "[map] level exceeds num_levels - 1");
  const SolverOptions options = solver_from_config(config);
  auto freqs = linear_grid(config.number("map", "omega_m_offset_min"), config.number("map", "omega_m_offset_max"),
                           config.integer("map", "omega_m_points"));
  for (auto& f : freqs) f += spec.omega_r;
  const auto powers = linear_grid(config.number("map", "power_min_db"), config.number("map", "power_max_db"),
                                  config.integer("map", "power_points"));
  const double threshold = config.number("map", "ratio_threshold");
  if (!(threshold > 1.0)) throw ConfigError(0, "[map] ratio_threshold must exceed 1");

  CommandResult result;
  std::vector<ResponseMap> maps;
  for (auto level : levels) maps.push_back(frequency_power_map(spec, level, freqs, powers, options, threads));

  Table cells{"map", {"level", "power_db", "omega_m", "n", "omega_eff", "converged", "residual", "iterations"}, {}};
  for (const auto& map : maps)
    for (std::size_t p = 0; p < powers.size(); ++p)
      for (std::size_t f = 0; f < freqs.size(); ++f) {
        const auto& pt = map.at(p, f);
        result.all_converged = result.all_converged && pt.converged;
        cells.add_row({static_cast<std::int64_t>(map.level), powers[p], freqs[f], pt.n, pt.omega_eff,
                       flag(pt.converged), pt.residual, std::int64_t{pt.iterations}});
      }
  result.tables.push_back(std::move(cells));

  // Per-frequency power band where the |0> and |1> photon numbers differ by at
  // least the threshold ratio.
  const auto i0 = std::find(levels.begin(), levels.end(), std::size_t{0});
  const auto i1 = std::find(levels.begin(), levels.end(), std::size_t{1});
  if (i0 != levels.end() && i1 != levels.end()) {
    const auto& m0 = maps[static_cast<std::size_t>(i0 - levels.begin())];
    const auto& m1 = maps[static_cast<std::size_t>(i1 - levels.begin())];
    Table band{"map_band", {"omega_m", "band_lo_db", "band_hi_db", "peak_db", "peak_ratio", "peak_n_diff"}, {}};
    for (std::size_t f = 0; f < freqs.size(); ++f) {
      double lo = kNan, hi = kNan, peak_db = kNan, peak_ratio = 0.0, peak_diff = 0.0;
      for (std::size_t p = 0; p < powers.size(); ++p) {
        const double a = m0.at(p, f).n, b = m1.at(p, f).n;
        const double small = std::min(a, b), big = std::max(a, b);
        const double ratio = small > 0.0 ? big / small : (big > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
        if (ratio >= threshold) {
          if (std::isnan(lo)) lo = powers[p];
          hi = powers[p];
        }
        if (ratio > peak_ratio) {
          peak_ratio = ratio;
          peak_db = powers[p];
        }
        peak_diff = std::max(peak_diff, std::abs(b - a));
      }
      band.add_row({freqs[f], lo, hi, peak_db, peak_ratio, peak_diff});
    }
    result.tables.push_back(std::move(band));
  }
  return result;
}

CommandResult cmd_rates(const Config& config, unsigned threads) {
  const SystemSpec spec = system_from_config(config);
  if (config.word("rates", "noise") != "one_over_f") throw ConfigError(0, "[rates] noise must be one_over_f");
  auto dispersions = config.numbers("rates", "dispersions");
  if (dispersions.empty()) dispersions = default_charge_dispersions(spec.num_levels());
  if (dispersions.size() != spec.num_levels())
    throw ConfigError(0, "[rates] dispersions needs one entry per level");
  const auto powers = stepped_grid(config.number("rates", "power_min_db"), config.number("rates", "power_max_db"),
                                   config.number("rates", "power_step_db"));
  const OneOverFNoise noise;
  RateTable rates;
  try {
    rates = rates_vs_power(spec, spec.omega_r + config.number("rates", "omega_m_offset"), powers, dispersions, noise,
                           solver_from_config(config), workers(threads));
  } catch (const InvalidArgument& e) {
    throw ConfigError(0, std::string("[rates] ") + e.what());
  }

  CommandResult result;
  Table table{"rates",
              {"power_db", "n_photons", "n_at_power", "converged", "gamma_kappa", "gamma_kappa_leak", "gamma_1d",
               "gamma_1d_leak", "gamma_d", "gamma_d_leak"},
              {}};
  for (const auto& r : rates.rows) {
    result.all_converged = result.all_converged && r.converged;
    table.add_row({r.power_db, r.n_photons, r.n_at_power, flag(r.converged), r.gamma_kappa, r.gamma_kappa_leak,
                   r.gamma_1d, r.gamma_1d_leak, r.gamma_d, r.gamma_d_leak});
  }
  result.tables.push_back(std::move(table));
  return result;
}

CommandResult cmd_oracle(const Config& config, unsigned threads) {
  CommandResult result;
  Table checks{"oracle", {"check", "n_total", "index", "implementation", "oracle", "abs_diff", "rel_diff"}, {}};
  auto add_check = [&](std::string_view name, std::int64_t n, std::int64_t index, double impl, double ref) {
    const double diff = std::abs(impl - ref);
    const double rel = ref != 0.0 ? diff / std::abs(ref) : diff;
    checks.add_row({std::string(name), n, index, impl, ref, diff, rel});
  };

  // Closed-form Jaynes-Cummings doublets.
  const SystemSpec jc = system_from_config(config, 2);
  for (auto n : config.integers("oracle", "jc_n")) {
    if (n < 0) throw ConfigError(0, "[oracle] jc_n entries must be >= 0");
    const auto block = dressed_block(jc, static_cast<double>(n));
    if (n == 0) {
      add_check("jc_spectrum", n, 0, block.eigenvalues[0], 0.0);
      continue;
    }
    const auto doublet = oracle::jc_doublet(jc, n);
    add_check("jc_spectrum", n, 0, block.eigenvalues[0], doublet.lower);
    add_check("jc_spectrum", n, 1, block.eigenvalues[1], doublet.upper);
  }

  // Dense Hamiltonian: block structure and per-block spectra.
  const auto full_m = config.integer("oracle", "full_num_levels");
  const auto cutoff = config.integer("oracle", "full_cutoff");
  if (full_m < 2 || cutoff < 0 || cutoff > 200) throw ConfigError(0, "[oracle] need full_num_levels >= 2, 0 <= full_cutoff <= 200");
  const SystemSpec small = system_from_config(config, static_cast<int>(full_m));
  const Matrix h = oracle::full_hamiltonian(small, static_cast<int>(cutoff));
  add_check("cross_block_max", cutoff, 0, oracle::max_cross_block_element(h, small.num_levels()), 0.0);
  for (std::int64_t n = 0; n <= cutoff; ++n) {
    const auto reference =
        oracle::jacobi_eigenvalues(oracle::extract_block(h, small.num_levels(), static_cast<int>(n)));
    const auto block = dressed_block(small, static_cast<double>(n));
    for (std::size_t k = 0; k < reference.size(); ++k)
      add_check("block_spectrum", n, static_cast<std::int64_t>(k), block.eigenvalues[k] + block.block.offset,
                reference[k]);
  }
  result.tables.push_back(std::move(checks));

  // Fixed-point multiplicity against the hysteresis window.
  const SystemSpec spec = system_from_config(config);
  const auto level = config.integer("oracle", "scan_level");
  if (level < 0 || static_cast<std::size_t>(level) >= spec.num_levels())
    throw ConfigError(0, "[oracle] scan_level exceeds num_levels - 1");
  const auto grid_points = config.integer("oracle", "scan_grid_points");
  if (grid_points < 2) throw ConfigError(0, "[oracle] scan_grid_points must be >= 2");
  const auto powers = stepped_grid(config.number("oracle", "scan_power_min_db"),
                                   config.number("oracle", "scan_power_max_db"),
                                   config.number("oracle", "scan_power_step_db"));
  const std::vector<double> reversed(powers.rbegin(), powers.rend());
  const SolverOptions options = solver_from_config(config);
  const auto lvl = static_cast<std::size_t>(level);
  const double omega_m = spec.omega_r + config.number("oracle", "scan_omega_m_offset");
  const auto up = power_sweep(spec, lvl, omega_m, powers, SweepDirection::up, options);
  const auto down = power_sweep(spec, lvl, omega_m, reversed, SweepDirection::down, options);
  const auto window = bistable_window(up, down);

  std::vector<oracle::FixedPointScan> scans(powers.size());
  parallel_for(powers.size(), workers(threads), [&](std::size_t k) {
    scans[k] = oracle::count_fixed_points(spec, lvl, {epsilon_from_power_db(spec, powers[k]), omega_m},
                                          static_cast<int>(grid_points));
  });

  Table multiplicity{"oracle_multiplicity",
                     {"level", "omega_m", "power_db", "fixed_points", "n_up", "n_down", "in_window", "converged"},
                     {}};
  for (std::size_t k = 0; k < powers.size(); ++k) {
    const auto& a = up.points[k];
    const auto& b = down.points[powers.size() - 1 - k];
    const bool in_window = window && powers[k] >= window->first && powers[k] <= window->second;
    result.all_converged = result.all_converged && a.converged && b.converged;
    multiplicity.add_row({level, omega_m, powers[k], std::int64_t{scans[k].count}, a.n, b.n, flag(in_window),
                          flag(a.converged && b.converged)});
  }
  result.tables.push_back(std::move(multiplicity));
  return result;
}

}  // namespace cqed
