#include "cqed/eigenblocks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "cqed/errors.hpp"

namespace cqed {
namespace {

bool is_integer(double x) { return std::floor(x) == x; }

// Continuation threshold: full-size blocks exist for N >= M-1.
bool is_full_size(double n_total, std::size_t num_levels) {
  return n_total >= static_cast<double>(num_levels) - 1.0;
}

// 8-point Gauss-Legendre on [0, 1].
constexpr std::array<double, 8> kNodes = {
    0.019855071751231912, 0.10166676129318664, 0.2372337950418355, 0.4082826787521751,
    0.5917173212478248,   0.7627662049581645,  0.8983332387068134, 0.9801449282487681};
constexpr std::array<double, 8> kWeights = {
    0.050614268145188344, 0.11119051722668717, 0.15685332293894352, 0.18134189168918088,
    0.18134189168918088,  0.15685332293894352, 0.11119051722668717, 0.050614268145188344};

std::vector<std::size_t> adiabatic_labels(const ExcitationBlock& block) {
  std::vector<std::size_t> bare_order(block.dim);
  std::iota(bare_order.begin(), bare_order.end(), std::size_t{0});
  std::stable_sort(bare_order.begin(), bare_order.end(), [&](std::size_t a, std::size_t b) {
    return block.reduced_diagonal[a] < block.reduced_diagonal[b];
  });
  std::vector<std::size_t> label_of(block.dim);
  for (std::size_t rank = 0; rank < block.dim; ++rank) label_of[bare_order[rank]] = rank;
  return label_of;
}

std::vector<std::size_t> overlap_labels(const ExcitationBlock& block,
                                        const std::vector<double>& eigenvalues,
                                        const Matrix& vectors, const DressedBlock* previous) {
  constexpr double kTie = 1e-6;
  const std::size_t dim = block.dim;
  const auto fallback = adiabatic_labels(block);

  struct Candidate {
    double overlap;
    std::size_t bare;
    std::size_t eig;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) candidates.push_back({vectors(i, k) * vectors(i, k), i, k});
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.overlap > b.overlap; });

  std::vector<std::size_t> label_of(dim, dim);
  std::vector<bool> taken(dim, false);
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const auto& cand = candidates[c];
    if (label_of[cand.bare] != dim || taken[cand.eig]) continue;

    // Second-best free eigenpair for this bare state.
    double runner_up = -1.0;
    std::size_t runner_eig = dim;
    for (std::size_t k = 0; k < dim; ++k) {
      if (k == cand.eig || taken[k]) continue;
      const double ov = vectors(cand.bare, k) * vectors(cand.bare, k);
      if (ov > runner_up) {
        runner_up = ov;
        runner_eig = k;
      }
    }

    std::size_t chosen = cand.eig;
    if (runner_eig != dim && cand.overlap - runner_up < kTie) {
      if (previous != nullptr && previous->block.dim == dim) {
        const double target = previous->reduced_energy(cand.bare);
        if (std::abs(eigenvalues[runner_eig] - target) < std::abs(eigenvalues[cand.eig] - target))
          chosen = runner_eig;
      } else if (fallback[cand.bare] == runner_eig) {
        chosen = runner_eig;
      }
    }
    label_of[cand.bare] = chosen;
    taken[chosen] = true;
  }
  return label_of;
}

}  // namespace

std::vector<double> ExcitationBlock::diagonal() const {
  std::vector<double> out(reduced_diagonal);
  for (double& d : out) d += offset;
  return out;
}

ExcitationBlock build_block(const SystemSpec& spec, double n_total) {
  const std::size_t m = spec.num_levels();
  if (!(n_total >= 0.0) || !std::isfinite(n_total))
    throw InvalidArgument("build_block: excitation number must be finite and >= 0");
  if (!is_integer(n_total) && !is_full_size(n_total, m))
    throw InvalidArgument("build_block: non-integer excitation number " + std::to_string(n_total) +
                          " below M-1 has no block");

  ExcitationBlock block;
  block.n_total = n_total;
  block.dim = block_dimension(n_total, m);
  block.offset = n_total * spec.omega_r;
  block.reduced_diagonal.resize(block.dim);
  block.offdiag.resize(block.dim - 1);
  const auto& freqs = spec.mls.level_freqs();
  const auto& g = spec.mls.couplings();
  for (std::size_t i = 0; i < block.dim; ++i)
    block.reduced_diagonal[i] = freqs[i] - static_cast<double>(i) * spec.omega_r;
  for (std::size_t i = 0; i + 1 < block.dim; ++i)
    block.offdiag[i] = g[i] * std::sqrt(n_total - static_cast<double>(i));
  return block;
}

DressedBlock diagonalize(const ExcitationBlock& block, LabelRule rule, const DressedBlock* previous) {
  auto eig = solve_tridiagonal<double>(block.reduced_diagonal, block.offdiag);
  DressedBlock out;
  out.block = block;
  out.label_of = rule == LabelRule::adiabatic
                     ? adiabatic_labels(block)
                     : overlap_labels(block, eig.values, eig.vectors, previous);
  out.eigenvalues = std::move(eig.values);
  out.vectors = std::move(eig.vectors);
  return out;
}

DressedBlock dressed_block(const SystemSpec& spec, double n_total, LabelRule rule) {
  return diagonalize(build_block(spec, n_total), rule);
}

namespace {

// Reduced energy (without the n_total*omega_r offset) of label `level` in
// block n_total; n_total must admit a block.
double reduced_energy(const SystemSpec& spec, double n_total, std::size_t level, LabelRule rule) {
  return dressed_block(spec, n_total, rule).reduced_energy(level);
}

void check_level(const SystemSpec& spec, std::size_t level) {
  if (level >= spec.num_levels())
    throw InvalidArgument("level " + std::to_string(level) + " exceeds M-1");
}

}  // namespace

double dressed_energy(const SystemSpec& spec, double n, std::size_t level, LabelRule rule) {
  check_level(spec, level);
  if (!(n >= 0.0)) throw InvalidArgument("dressed_energy: photon number must be >= 0");
  const double n_total = n + static_cast<double>(level);
  if (is_integer(n) || is_full_size(n_total, spec.num_levels()))
    return n_total * spec.omega_r + reduced_energy(spec, n_total, level, rule);

  const double lo = std::floor(n);
  const double t = n - lo;
  const double e_lo = dressed_energy(spec, lo, level, rule);
  const double e_hi = dressed_energy(spec, lo + 1.0, level, rule);
  return (1.0 - t) * e_lo + t * e_hi;
}

double energy_slope(const SystemSpec& spec, double n_total, std::size_t level) {
  check_level(spec, level);
  if (!is_full_size(n_total, spec.num_levels()))
    throw InvalidArgument("energy_slope: needs a full-size block (n_total >= M-1)");
  const DressedBlock dressed = dressed_block(spec, n_total, LabelRule::adiabatic);
  const auto v = dressed.state(level);
  const auto& g = spec.mls.couplings();
  // d/dN of g_i*sqrt(N-i) is g_i / (2 sqrt(N-i)); each off-diagonal appears twice.
  double slope = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    slope += v[i] * v[i + 1] * g[i] / std::sqrt(n_total - static_cast<double>(i));
  return slope;
}

double effective_frequency(const SystemSpec& spec, std::size_t level, double n, LabelRule rule) {
  check_level(spec, level);
  if (!(n >= 0.0) || !std::isfinite(n))
    throw InvalidArgument("effective_frequency: photon number must be finite and >= 0");
  const double n_total = n + static_cast<double>(level);

  if (is_full_size(n_total, spec.num_levels()) && rule == LabelRule::adiabatic) {
    // Integrate the Hellmann-Feynman slope across [N, N+1]; this avoids
    // subtracting two large eigenvalues.
    double integral = 0.0;
    for (std::size_t q = 0; q < kNodes.size(); ++q)
      integral += kWeights[q] * energy_slope(spec, n_total + kNodes[q], level);
    return spec.omega_r + integral;
  }
  if (is_integer(n) || is_full_size(n_total, spec.num_levels())) {
    return spec.omega_r + reduced_energy(spec, n_total + 1.0, level, rule) -
           reduced_energy(spec, n_total, level, rule);
  }
  const double lo = std::floor(n);
  const double t = n - lo;
  return (1.0 - t) * effective_frequency(spec, level, lo, rule) +
         t * effective_frequency(spec, level, lo + 1.0, rule);
}

}  // namespace cqed
