#pragma once

// Brute-force references that do not share code paths with the production
// solvers: closed-form Jaynes-Cummings spectrum, a dense full Hamiltonian
// with a cyclic-Jacobi eigensolver, and a residual sign-change scan that
// counts fixed points of the steady-state equation.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cqed/linalg.hpp"
#include "cqed/model.hpp"
#include "cqed/response.hpp"

namespace cqed::oracle {

/// Both eigenvalues of the M = 2 block with n_total >= 1 excitations,
/// reduced by n_total*omega_r: (Delta +- sqrt(Delta^2 + 4 g^2 n_total)) / 2.
struct JcDoublet {
  double lower = 0.0;
  double upper = 0.0;
};
JcDoublet jc_doublet(const SystemSpec& spec, std::int64_t n_total);

/// Dense H_s on |n, i> (index n*M + i) for photon numbers 0..photon_cutoff,
/// energies reduced by nothing (absolute).
Matrix full_hamiltonian(const SystemSpec& spec, int photon_cutoff);

/// Largest |H(a, b)| over pairs with different excitation numbers.
double max_cross_block_element(const Matrix& hamiltonian, std::size_t num_levels);

/// Sub-matrix of `hamiltonian` on the bare states of block n_total, ordered
/// by MLS index. Requires n_total <= photon_cutoff.
Matrix extract_block(const Matrix& hamiltonian, std::size_t num_levels, int n_total);

/// Eigenvalues (ascending) of a dense symmetric matrix by cyclic Jacobi.
std::vector<double> jacobi_eigenvalues(Matrix a, double tol = 1e-14, int max_sweeps = 100);

struct FixedPointScan {
  int count = 0;
  /// Brackets [lo, hi] of n containing a sign change of n - rhs(n).
  std::vector<std::pair<double, double>> brackets;
};

/// Counts sign changes of n - rhs(n) over {0} plus a log-spaced grid up to
/// just above the photon ceiling.
FixedPointScan count_fixed_points(const SystemSpec& spec, std::size_t level, const DriveSpec& drive,
                                  int grid_points = 4000);

}  // namespace cqed::oracle
