#pragma once

#include <string>
#include <vector>

#include "purcell/system.hpp"
#include "purcell/types.hpp"

namespace purcell {

// Single-excitation effective non-Hermitian Hamiltonian in the lab frame,
// basis {|e,0>, |g,1_1>, ..., |g,1_m>}:
//   (0,0) = omega_q (+ stark shift)      (i,i) = omega_i - i kappa_i/2
//   (0,i) = g_i e^{i phi_i}              (i,j) = J_ij e^{i theta_ij}
struct EffectiveHamiltonian {
  MatrixXcd matrix;
  std::vector<std::string> basis_labels;
};

EffectiveHamiltonian build_h_eff(const ValidatedSystem& system, double stark_shift = 0.0);

// Hermitian mode-only block (losses excluded): diagonal omega_i, off-diagonal
// J_ij e^{i theta_ij}. Lab frame; callers apply any rotating-frame shift.
MatrixXcd mode_block(const ValidatedSystem& system);

// Normal-mode (hybridized) view of the mode block, with couplings, losses
// and drives transported into the diagonal basis. Phase information is
// preserved through the complex hybridized couplings.
struct NormalModeBasis {
  MatrixXcd U;              // columns are normal modes; M = U diag(omega) U^dag
  VectorXd omega_tilde;     // hybridized frequencies (rad/s)
  VectorXd kappa_tilde;     // participation-weighted losses sum_i |U_ik|^2 kappa_i
  VectorXd g_tilde;         // coupling magnitudes
  VectorXd phi_tilde;       // coupling phases
  VectorXcd g_tilde_c;      // g_tilde e^{i phi_tilde}
  VectorXcd epsilon_tilde;  // hybridized drive amplitudes
  VectorXd delta_q;         // omega_q - omega_tilde_k
  VectorXd delta_d;         // omega_tilde_k - omega_p
  double omega_q = 0.0;
  double anharmonicity = 0.0;

  int size() const { return static_cast<int>(omega_tilde.size()); }
};

struct DriveSpec;

NormalModeBasis diagonalize_modes(const ValidatedSystem& system, const DriveSpec& drive);

}  // namespace purcell
