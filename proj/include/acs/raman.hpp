#pragma once

// Raman parametric coupling of two oscillators (hbar = 1):
//
//   H = w1 a^dag a + w2 b^dag b - i lambda (a^dag b - a b^dag)
//
// H conserves total quanta, so it is block diagonal over the j-blocks.  On
// each block the extremal eigenstates are atomic coherent states |tau_+->
// with energies 2j A and 2j B, where (A, B) are the normal-mode frequencies.

#include <complex>
#include <vector>

#include "acs/fock.hpp"

namespace acs::raman {

struct RamanParams {
  double omega1 = 1.0;
  double omega2 = 1.0;
  double lambda = 0.0;
};

// Throws InvalidArgument unless omega1, omega2 > 0 and lambda is finite.
void validate(const RamanParams& p);

struct NormalModes {
  double A = 0.0;
  double B = 0.0;
};

enum class Branch { plus, minus };

struct TauPair {
  cplx plus;
  cplx minus;
};

fock::BlockMatrix hamiltonian_block(const RamanParams& p, int two_j);

// Roots of i lambda tau^2 + (w2 - w1) tau + i lambda = 0.  Throws ZeroCoupling
// for lambda == 0.
TauPair tau_pm(const RamanParams& p);
cplx tau_for(const RamanParams& p, Branch b);

NormalModes normal_modes(const RamanParams& p);

// 2j A for the plus branch, 2j B for the minus branch.
double energy(const RamanParams& p, int two_j, Branch b);

// ||H |tau_b> - E_b |tau_b>||_2 in the 2j-block.
double eigen_residual(const RamanParams& p, int two_j, Branch b);
// Same residual for an externally supplied block state.
double eigen_residual(const RamanParams& p, const fock::BlockVector& state, Branch b);
// 1e-10 (2j+1) max(w1, w2, |lambda|).
double eigen_residual_tolerance(const RamanParams& p, int two_j);

// Block spectrum {A n + B (2j - n)}, n = 0..2j, ascending.
std::vector<double> spectrum_closed(const RamanParams& p, int two_j);

// Eigenvalues of hamiltonian_block by cyclic complex Jacobi, ascending.
std::vector<double> block_spectrum_oracle(const RamanParams& p, int two_j);

// ---------------------------------------------------------------------------
// Cyclic Jacobi for complex Hermitian matrices.

struct JacobiOptions {
  // Stop once the off-diagonal Frobenius norm is below tol * max(1, ||M||_F).
  double tol = 1e-12;
  int max_sweeps = 100;
};

struct JacobiResult {
  std::vector<double> eigenvalues;  // ascending
  int sweeps = 0;
  double off_norm = 0.0;
};

// Throws NoConvergence when the sweep limit is reached.
JacobiResult jacobi_eigenvalues(const fock::BlockMatrix& m, const JacobiOptions& opts = {});

}  // namespace acs::raman
