#pragma once

#include <string>
#include <vector>

#include "purcell/heff.hpp"
#include "purcell/system.hpp"
#include "purcell/types.hpp"

namespace purcell {

struct EigenPairs {
  VectorXcd values;    // sorted by ascending real part, ties by imaginary part
  MatrixXcd vectors;   // unit-norm columns aligned with values
  VectorXd residuals;  // ||A v - lambda v|| / ||A||_F per pair
};

// Full complex eigendecomposition of a dense non-Hermitian matrix.
// Contract: every returned pair satisfies residual <= 1e-9; failure to
// converge raises NumericalError carrying the worst residual.
EigenPairs eig(const MatrixXcd& matrix);

struct QubitBranch {
  Complex lambda_e{0.0, 0.0};  // rad/s
  double overlap = 0.0;        // |<e,0|v>|^2 of the tracked eigenvector
  double gamma_e = 0.0;        // -2 Im(lambda_e), 1/s
  double t1 = 0.0;             // 1/gamma_e (inf when gamma_e == 0)
  std::vector<std::string> diagnostics;  // e.g. branch-crossing notes
};

// Selects the eigenvalue continuously connected to the bare qubit: primary
// criterion is eigenvector overlap with |e,0>; below 0.5 it falls back to
// homotopy continuation in the coupling strength (11 steps, bisection
// refinement near crossings up to depth 6).
QubitBranch track_qubit_branch(const EigenPairs& pairs, const ValidatedSystem& system,
                               double stark_shift = 0.0);

// build_h_eff -> eig -> track_qubit_branch.
QubitBranch purcell_rate_exact(const ValidatedSystem& system, double stark_shift = 0.0);

}  // namespace purcell
