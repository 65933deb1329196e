#pragma once

#include "purcell/system.hpp"
#include "purcell/types.hpp"

namespace purcell::bench {

// Dispersive chain with m modes spread between 8 and 26 GHz.
inline SystemSpec chain(int m) {
  SystemSpec spec;
  spec.qubit.omega_q = two_pi * 6e9;
  spec.modes.resize(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    auto& mode = spec.modes[static_cast<size_t>(i)];
    mode.omega = two_pi * (8e9 + 18e9 * i / std::max(m - 1, 1));
    mode.kappa = two_pi * (2e6 + 1e6 * (i % 5));
    mode.g = two_pi * (120e6 + 10e6 * (i % 7));
    mode.phi = 0.3 * i;
  }
  spec.couplings = CouplingGraph::none(m);
  for (int i = 0; i + 1 < m; ++i) {
    spec.couplings.J(i, i + 1) = spec.couplings.J(i + 1, i) = two_pi * 40e6;
    spec.couplings.theta(i, i + 1) = 0.2;
    spec.couplings.theta(i + 1, i) = -0.2;
  }
  return spec;
}

}  // namespace purcell::bench
