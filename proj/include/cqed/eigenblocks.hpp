#pragma once

// Excitation-number blocks of the generalized Jaynes-Cummings Hamiltonian.
//
// Block N is spanned by |N-i, i>, i = 0..dim-1. Its entries are stored
// relative to the offset N*omega_r: the reduced diagonal omega_i - i*omega_r
// does not depend on N, and the off-diagonal is g_i*sqrt(N-i). Keeping the
// offset separate preserves the small energy differences that matter at
// photon numbers up to ~1e9.

#include <cstddef>
#include <optional>
#include <vector>

#include "cqed/linalg.hpp"
#include "cqed/model.hpp"

namespace cqed {

struct ExcitationBlock {
  double n_total = 0.0;
  std::size_t dim = 0;
  double offset = 0.0;                    ///< n_total * omega_r
  std::vector<double> reduced_diagonal;   ///< omega_i - i*omega_r
  std::vector<double> offdiag;            ///< g_i * sqrt(n_total - i)

  /// (n_total - i)*omega_r + omega_i
  std::vector<double> diagonal() const;
};

/// How dressed eigenvectors are matched to bare labels |N-i, i>.
enum class LabelRule {
  /// k-th lowest eigenvalue <-> k-th lowest bare energy. Continuous in N
  /// because eigenvalues of an unreduced tridiagonal block never cross.
  adiabatic,
  /// Greedy bijective assignment by largest |<bare_i|v>|^2. Near-ties
  /// (< 1e-6) defer to the previous block on a sweep, else to `adiabatic`.
  max_overlap,
};

struct DressedBlock {
  ExcitationBlock block;
  std::vector<double> eigenvalues;  ///< reduced, ascending
  Matrix vectors;                   ///< column k pairs with eigenvalues[k]
  std::vector<std::size_t> label_of;  ///< bare index i -> eigenpair index

  double reduced_energy(std::size_t label) const { return eigenvalues.at(label_of.at(label)); }
  double energy(std::size_t label) const { return block.offset + reduced_energy(label); }
  /// Bare-basis components of the dressed state with this label.
  std::vector<double> state(std::size_t label) const { return vectors.column(label_of.at(label)); }
};

/// Throws InvalidArgument for n_total < 0 or non-integer n_total < M-1.
ExcitationBlock build_block(const SystemSpec& spec, double n_total);

DressedBlock diagonalize(const ExcitationBlock& block, LabelRule rule = LabelRule::adiabatic,
                         const DressedBlock* previous = nullptr);

DressedBlock dressed_block(const SystemSpec& spec, double n_total,
                           LabelRule rule = LabelRule::adiabatic);

/// Energy of the dressed state labeled |n, level>, i.e. label `level` in
/// block n + level. Non-integer n with n + level < M-1 is linearly
/// interpolated between the neighbouring integers.
double dressed_energy(const SystemSpec& spec, double n, std::size_t level,
                      LabelRule rule = LabelRule::adiabatic);

/// omega_ri(n) = E_{n+1,i} - E_{n,i}.
double effective_frequency(const SystemSpec& spec, std::size_t level, double n,
                           LabelRule rule = LabelRule::adiabatic);

/// dE_{n,i}/dN of the labeled eigenvalue by Hellmann-Feynman; only defined
/// for full-size blocks (n + level >= M-1). Exposed for tests.
double energy_slope(const SystemSpec& spec, double n_total, std::size_t level);

}  // namespace cqed
