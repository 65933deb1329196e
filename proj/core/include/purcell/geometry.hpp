#pragma once

#include <string>
#include <vector>

#include "purcell/types.hpp"

namespace purcell {

// Ring-resonator design helpers. Coupling factors are dimensionless
// relative weights; mapping them onto physical couplings is the caller's
// explicit scale choice.

struct RingSpec {
  double radius = 0.0;        // m
  double v_eff = 0.0;         // effective phase velocity, m/s
  double theta_junction = 0.0;  // junction angle (rad), normalized to [0, 2pi)
  double theta_asym = 0.0;      // asymmetry-feature angle (rad), [0, 2pi)
  double delta_asym = 0.0;      // perturbation magnitude (dimensionless)
  int feature_sign = +1;        // +1 extrusion, -1 bite
};

// nu(omega) = omega R / v_eff (omega angular).
double azimuthal_nu(double omega, const RingSpec& ring);

// omega_n = n v_eff / R for n = 0..n_max (angular); the ladder is exactly
// linear in n.
std::vector<double> ring_resonances(const RingSpec& ring, int n_max);

// Junction coupling weight for mode n: cos(n theta_J).
double junction_coupling_pattern(int n, const RingSpec& ring);

// Perturbation-activated coupling between distinct mode orders:
//   sign * delta * cos(n theta_A) cos(m theta_A).
double perturbation_coupling(int n, int m, const RingSpec& ring);

// In-pair coupling of a degenerate mode doublet of order n (cos- and
// sin-oriented partners, referenced to the junction axis):
//   sign * delta * cos(n (theta_A - theta_J)) sin(n (theta_A - theta_J)).
// Extremal at 45/135/225/315 degrees from the junction for n = 1.
double degenerate_pair_coupling(int n, const RingSpec& ring);

struct CapacitanceMatrix {
  std::vector<std::string> labels;
  MatrixXd values;  // pF, symmetric
};

CapacitanceMatrix read_capacitance_csv(const std::string& path);

struct CapacitanceComparison {
  std::vector<std::string> labels;
  MatrixXd ratio;          // elementwise c_asym / c_sym
  MatrixXd relative_diff;  // elementwise (c_asym - c_sym) / c_sym
};

// Elementwise comparison of symmetric vs symmetry-broken extractions.
// Labels must match; zero entries in c_sym are an error.
CapacitanceComparison capacitance_diff(const CapacitanceMatrix& c_sym,
                                       const CapacitanceMatrix& c_asym);

}  // namespace purcell
