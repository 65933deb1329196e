#pragma once

#include <vector>

#include "purcell/system.hpp"
#include "purcell/types.hpp"

namespace purcell {

// Closed-form radiative decay expressions in the dispersive regime, all
// stated under the Delta_i = omega_q - omega_i convention with the
// canonical denominator d_i = Delta_i + i kappa_i / 2. They satisfy
//   2 Re(gamma_complex) = gamma_eff = -2 Im(lambda_e_pert - omega_q)
// identically, and agree with the exact eigensolver to O((g/Delta)^2,
// (J/Delta)^2) relative.

struct DecayReport {
  Complex gamma_complex{0.0, 0.0};  // complex decay amplitude (rad/s)
  double gamma_eff = 0.0;           // physical rate = direct + interference (1/s)
  Complex lambda_e_pert{0.0, 0.0};  // third-order qubit eigenvalue (rad/s)
  double gamma_dm = 0.0;            // density-matrix rate incl. optional three-mode term
  double direct_part = 0.0;
  double interference_part = 0.0;
  double three_mode_part = 0.0;
  std::vector<std::string> warnings;
};

// Third-order perturbative qubit eigenvalue:
//   lambda_e = omega_q + sum_i g_i^2 / d_i
//            + sum_{i<j} 2 g_i g_j J_ij cos(phi_i - phi_j + theta_ij) / (d_i d_j).
Complex lambda_e_pert(const ValidatedSystem& system);

// Complex decay amplitude; the physical rate is 2 Re of it.
Complex gamma_complex(const ValidatedSystem& system);

// Effective rate split into direct emission and cross-interference:
//   direct       = sum_i kappa_i g_i^2 / |d_i|^2
//   interference = sum_{i<j} 2 (kappa_i Delta_j + kappa_j Delta_i) g_i g_j J_ij
//                  cos(phi_i - phi_j + theta_ij) / (|d_i|^2 |d_j|^2)
DecayReport gamma_eff(const ValidatedSystem& system);

// Density-matrix route through the adiabatically eliminated coherences.
// The two-mode truncation reproduces gamma_eff exactly; the optional
// three-mode term is the O((J/D)^2) correction
//   sum_{i, j != i, k != j} g_i g_k J_ij J_jk cos(phi_i - phi_k + theta_ij + theta_jk)
//     [ (kappa_i Delta_k + kappa_k Delta_i) Delta_j + kappa_j (Delta_i Delta_k
//       - kappa_i kappa_k / 4) ] / (|d_i|^2 |d_j|^2 |d_k|^2).
// Emits a warning (not an error) when sum_j |J_ij| / |d_i| > 0.2.
DecayReport gamma_density_matrix(const ValidatedSystem& system, bool include_three_mode = true);

// Second-order truncation (direct paths only, no J dependence); used for
// the phase-independence cross-check of 2-D sweeps.
double gamma_second_order(const ValidatedSystem& system);

// Semiclassical steady-state mode amplitudes per unit qubit coherence,
// expanded in powers of the inter-mode coupling:
//   a0_i = g_i e^{-i phi_i} / d_i
//   a1_i = sum_{j != i} J_ij g_j e^{i (theta_ij - phi_j)} / (d_i d_j)
//   a2_i = sum_{j != i} sum_{k != j} J_ij J_jk g_k e^{i (theta_ij + theta_jk - phi_k)}
//          / (d_i d_j d_k)
struct AmplitudeExpansion {
  VectorXcd a0;
  VectorXcd a1;
  VectorXcd a2;
};

AmplitudeExpansion mode_amplitude_expansion(const ValidatedSystem& system);

// All perturbative views in one pass.
DecayReport decay_report(const ValidatedSystem& system, bool include_three_mode = true);

}  // namespace purcell
