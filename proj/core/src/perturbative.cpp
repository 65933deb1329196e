#include "purcell/perturbative.hpp"

#include <cmath>

#include "purcell/errors.hpp"
#include "purcell/format.hpp"

namespace purcell {

namespace {

// d_i = Delta_i + i kappa_i / 2; zero denominators are rejected by
// validation, but guard anyway for directly constructed systems.
VectorXcd denominators(const ValidatedSystem& system) {
  const int m = system.mode_count();
  const double floor = 1e-12 * std::abs(system.qubit().omega_q);
  VectorXcd d(m);
  for (int i = 0; i < m; ++i) {
    d[i] = Complex(system.detuning(i), 0.5 * system.modes()[static_cast<size_t>(i)].kappa);
    if (std::abs(d[i]) <= floor)
      throw SingularConfigError("perturbative denominator vanishes for mode " +
                                std::to_string(i));
  }
  return d;
}

}  // namespace

Complex lambda_e_pert(const ValidatedSystem& system) {
  const int m = system.mode_count();
  const VectorXcd d = denominators(system);
  const auto& modes = system.modes();
  const auto& J = system.couplings().J;
  const auto& theta = system.couplings().theta;

  Complex lambda(system.qubit().omega_q, 0.0);
  for (int i = 0; i < m; ++i) {
    const double g = modes[static_cast<size_t>(i)].g;
    lambda += g * g / d[i];
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (J(i, j) == 0.0) continue;
      const double beta =
          modes[static_cast<size_t>(i)].phi - modes[static_cast<size_t>(j)].phi + theta(i, j);
      lambda += 2.0 * modes[static_cast<size_t>(i)].g * modes[static_cast<size_t>(j)].g *
                J(i, j) * std::cos(beta) / (d[i] * d[j]);
    }
  }
  return lambda;
}

Complex gamma_complex(const ValidatedSystem& system) {
  return iu * (lambda_e_pert(system) - Complex(system.qubit().omega_q, 0.0));
}

DecayReport gamma_eff(const ValidatedSystem& system) {
  const int m = system.mode_count();
  const VectorXcd d = denominators(system);
  const auto& modes = system.modes();
  const auto& J = system.couplings().J;
  const auto& theta = system.couplings().theta;

  DecayReport report;
  for (int i = 0; i < m; ++i) {
    const auto& mode = modes[static_cast<size_t>(i)];
    report.direct_part += mode.kappa * mode.g * mode.g / std::norm(d[i]);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (J(i, j) == 0.0) continue;
      const auto& mi = modes[static_cast<size_t>(i)];
      const auto& mj = modes[static_cast<size_t>(j)];
      const double beta = mi.phi - mj.phi + theta(i, j);
      report.interference_part += 2.0 *
                                  (mi.kappa * system.detuning(j) + mj.kappa * system.detuning(i)) *
                                  mi.g * mj.g * J(i, j) * std::cos(beta) /
                                  (std::norm(d[i]) * std::norm(d[j]));
    }
  }
  report.gamma_eff = report.direct_part + report.interference_part;
  report.lambda_e_pert = lambda_e_pert(system);
  report.gamma_complex = iu * (report.lambda_e_pert - Complex(system.qubit().omega_q, 0.0));
  return report;
}

double gamma_second_order(const ValidatedSystem& system) {
  const int m = system.mode_count();
  const VectorXcd d = denominators(system);
  double gamma = 0.0;
  for (int i = 0; i < m; ++i) {
    const auto& mode = system.modes()[static_cast<size_t>(i)];
    gamma += mode.kappa * mode.g * mode.g / std::norm(d[i]);
  }
  return gamma;
}

DecayReport gamma_density_matrix(const ValidatedSystem& system, bool include_three_mode) {
  const int m = system.mode_count();
  const VectorXcd d = denominators(system);
  const auto& modes = system.modes();
  const auto& J = system.couplings().J;
  const auto& theta = system.couplings().theta;

  DecayReport report = gamma_eff(system);

  // Perturbative validity diagnostic on the mode-coupling expansion.
  for (int i = 0; i < m; ++i) {
    double j_sum = 0.0;
    for (int j = 0; j < m; ++j)
      if (j != i) j_sum += J(i, j);
    const double ratio = j_sum / std::abs(d[i]);
    if (ratio > 0.2)
      report.warnings.push_back("mode " + std::to_string(i) +
                                ": sum_j J_ij / |D_i| = " + format_double(ratio, 3) +
                                " exceeds 0.2; the O((J/D)^2) truncation degrades");
  }

  report.three_mode_part = 0.0;
  if (include_three_mode) {
    // -2 Im of the O(J^2) term of the eliminated coherences; the cubic
    // denominator product expands to the bracketed numerator below.
    for (int i = 0; i < m; ++i) {
      const auto& mi = modes[static_cast<size_t>(i)];
      for (int j = 0; j < m; ++j) {
        if (j == i || J(i, j) == 0.0) continue;
        const auto& mj = modes[static_cast<size_t>(j)];
        for (int k = 0; k < m; ++k) {
          if (k == j || J(j, k) == 0.0) continue;
          const auto& mk = modes[static_cast<size_t>(k)];
          const double beta = mi.phi - mk.phi + theta(i, j) + theta(j, k);
          const double numerator =
              (mi.kappa * system.detuning(k) + mk.kappa * system.detuning(i)) *
                  system.detuning(j) +
              mj.kappa * (system.detuning(i) * system.detuning(k) - 0.25 * mi.kappa * mk.kappa);
          report.three_mode_part += mi.g * mk.g * J(i, j) * J(j, k) * std::cos(beta) *
                                    numerator /
                                    (std::norm(d[i]) * std::norm(d[j]) * std::norm(d[k]));
        }
      }
    }
  }
  report.gamma_dm = report.direct_part + report.interference_part + report.three_mode_part;
  return report;
}

AmplitudeExpansion mode_amplitude_expansion(const ValidatedSystem& system) {
  const int m = system.mode_count();
  const VectorXcd d = denominators(system);
  const auto& modes = system.modes();
  const auto& J = system.couplings().J;
  const auto& theta = system.couplings().theta;

  AmplitudeExpansion amps;
  amps.a0.setZero(m);
  amps.a1.setZero(m);
  amps.a2.setZero(m);

  for (int i = 0; i < m; ++i) {
    const auto& mode = modes[static_cast<size_t>(i)];
    amps.a0[i] = mode.g * std::exp(-iu * mode.phi) / d[i];
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (j == i || J(i, j) == 0.0) continue;
      const auto& mj = modes[static_cast<size_t>(j)];
      amps.a1[i] += J(i, j) * mj.g * std::exp(iu * (theta(i, j) - mj.phi)) / (d[i] * d[j]);
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (j == i || J(i, j) == 0.0) continue;
      for (int k = 0; k < m; ++k) {
        if (k == j || J(j, k) == 0.0) continue;
        const auto& mk = modes[static_cast<size_t>(k)];
        amps.a2[i] += J(i, j) * J(j, k) * mk.g *
                      std::exp(iu * (theta(i, j) + theta(j, k) - mk.phi)) /
                      (d[i] * d[j] * d[k]);
      }
    }
  }
  return amps;
}

DecayReport decay_report(const ValidatedSystem& system, bool include_three_mode) {
  return gamma_density_matrix(system, include_three_mode);
}

}  // namespace purcell
