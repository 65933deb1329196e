#pragma once

#include <cmath>

#include "purcell/rng.hpp"
#include "purcell/system.hpp"
#include "purcell/types.hpp"

namespace purcell::testing {

// Random dispersive systems for property tests. Draw bounds keep the
// perturbative expansion well inside its validity window:
//   g_i/|Delta_i| <= g_over_delta, J/|Delta| <= j_over_delta,
//   kappa_i/|Delta_i| <= kappa_over_delta.
struct EnsembleOptions {
  double g_over_delta = 0.03;
  double j_over_delta = 0.03;
  double kappa_over_delta = 0.01;
  int max_modes = 5;
  bool couple_all_pairs = true;
};

inline SystemSpec random_system(uint64_t seed, const EnsembleOptions& opt = {}) {
  const CounterRng rng(seed);
  uint64_t ctr = 0;
  auto u = [&](double lo, double hi) { return rng.uniform(++ctr, 0, lo, hi); };

  SystemSpec spec;
  spec.qubit.omega_q = two_pi * u(4e9, 7e9);
  spec.qubit.anharmonicity = -two_pi * u(0.15e9, 0.3e9);

  const int m = 1 + static_cast<int>(u(0, opt.max_modes)) % opt.max_modes;
  double min_abs_delta = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    ModeSpec mode;
    const double delta_mag = two_pi * u(2e9, 8e9);
    const double sign = u(0, 1) < 0.3 ? 1.0 : -1.0;  // some modes below the qubit
    mode.omega = spec.qubit.omega_q - sign * delta_mag;
    min_abs_delta = std::min(min_abs_delta, delta_mag);
    mode.kappa = delta_mag * u(0.2, 1.0) * opt.kappa_over_delta;
    mode.g = delta_mag * u(0.2, 1.0) * opt.g_over_delta;
    mode.phi = u(-pi, pi);
    spec.modes.push_back(mode);
  }
  spec.couplings = CouplingGraph::none(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (!opt.couple_all_pairs && u(0, 1) < 0.5) continue;
      const double J = min_abs_delta * u(0.2, 1.0) * opt.j_over_delta;
      const double theta = u(-pi, pi);
      spec.couplings.J(i, j) = spec.couplings.J(j, i) = J;
      spec.couplings.theta(i, j) = theta;
      spec.couplings.theta(j, i) = -theta;
    }
  }
  return spec;
}

}  // namespace purcell::testing
