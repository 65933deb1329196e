#include "purcell/system.hpp"

#include <cmath>

#include "purcell/errors.hpp"
#include "purcell/format.hpp"
#include "purcell/units.hpp"

namespace purcell {

namespace {

std::string mode_name(const SystemSpec& spec, int i) {
  const auto& label = spec.modes[static_cast<size_t>(i)].label;
  std::string name = "modes[" + std::to_string(i) + "]";
  if (!label.empty()) name += " ('" + label + "')";
  return name;
}

}  // namespace

ValidationReport validate_system(const SystemSpec& spec) {
  ValidationReport report;
  auto err = [&](const std::string& s) { report.errors.push_back(s); };

  const int m = spec.mode_count();
  if (m < 1) err("at least one mode is required");
  if (spec.qubit.omega_q <= 0) err("qubit.omega_q must be positive");

  for (int i = 0; i < m; ++i) {
    const auto& mode = spec.modes[static_cast<size_t>(i)];
    if (mode.kappa < 0) err(mode_name(spec, i) + ": kappa must be >= 0");
    if (mode.g < 0) err(mode_name(spec, i) + ": g must be >= 0 (fold signs into phi)");
    if (mode.epsilon < 0) err(mode_name(spec, i) + ": epsilon must be >= 0");
  }

  const auto& J = spec.couplings.J;
  const auto& theta = spec.couplings.theta;
  if (J.rows() != m || J.cols() != m)
    err("couplings.J must be a square " + std::to_string(m) + "x" + std::to_string(m) +
        " matrix");
  if (theta.rows() != m || theta.cols() != m)
    err("couplings.theta must be a square " + std::to_string(m) + "x" + std::to_string(m) +
        " matrix");

  if (J.rows() == m && J.cols() == m && theta.rows() == m && theta.cols() == m) {
    for (int i = 0; i < m; ++i) {
      if (J(i, i) != 0.0)
        err("couplings.J[" + std::to_string(i) + "][" + std::to_string(i) + "] must be zero");
      if (theta(i, i) != 0.0)
        err("couplings.theta[" + std::to_string(i) + "][" + std::to_string(i) +
            "] must be zero");
      for (int j = i + 1; j < m; ++j) {
        if (J(i, j) != J(j, i))
          err("couplings.J must be symmetric: J[" + std::to_string(i) + "][" +
              std::to_string(j) + "] != J[" + std::to_string(j) + "][" + std::to_string(i) +
              "]");
        if (J(i, j) < 0)
          err("couplings.J[" + std::to_string(i) + "][" + std::to_string(j) +
              "] must be >= 0 (fold signs into theta)");
        // Antisymmetry modulo 2pi: after normalization to (-pi, pi] the
        // pair (pi, -pi) stores as (pi, pi), which is still antisymmetric.
        if (normalize_phase(theta(i, j) + theta(j, i)) != 0.0)
          err("couplings.theta must be antisymmetric: theta[" + std::to_string(i) + "][" +
              std::to_string(j) + "] != -theta[" + std::to_string(j) + "][" +
              std::to_string(i) + "]");
      }
    }
  }

  // Vanishing perturbative denominator |Delta_i + i kappa_i/2|: a mode on
  // resonance (to numerical precision) with no loss.
  for (int i = 0; i < m; ++i) {
    const auto& mode = spec.modes[static_cast<size_t>(i)];
    const double delta = spec.qubit.omega_q - mode.omega;
    const double denom = std::hypot(delta, 0.5 * mode.kappa);
    if (denom <= 1e-12 * std::abs(spec.qubit.omega_q))
      err(mode_name(spec, i) +
          ": singular configuration (Delta_i = 0 with kappa_i = 0; perturbative denominators "
          "vanish)");
  }

  if (spec.qubit.drive_amplitude != 0.0)
    report.warnings.push_back(
        "qubit drive amplitude Omega_q is nonzero; decay computations require it to be zero");

  return report;
}

ValidatedSystem::ValidatedSystem(SystemSpec spec) : spec_(std::move(spec)) {
  ValidationReport report = validate_system(spec_);
  if (!report.ok()) throw ValidationError(report.errors);
  warnings_ = std::move(report.warnings);
  const int m = spec_.mode_count();
  detunings_.resize(m);
  for (int i = 0; i < m; ++i)
    detunings_[i] = spec_.qubit.omega_q - spec_.modes[static_cast<size_t>(i)].omega;
}

ValidatedSystem make_validated(SystemSpec spec) { return ValidatedSystem(std::move(spec)); }

}  // namespace purcell
