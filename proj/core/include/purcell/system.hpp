#pragma once

#include <string>
#include <vector>

#include "purcell/types.hpp"

namespace purcell {

// Physical model in the lab frame. All members are angular (rad/s) or
// radians; instances are immutable values after validation and safe to
// share across threads.

struct QubitSpec {
  double omega_q = 0.0;             // qubit transition frequency
  double anharmonicity = 0.0;       // alpha, typically negative for a transmon
  double drive_amplitude = 0.0;     // Omega_q; must stay zero for decay computations
  double drive_frequency = 0.0;     // omega_d
};

struct ModeSpec {
  double omega = 0.0;     // mode frequency
  double kappa = 0.0;     // energy decay rate, >= 0
  double g = 0.0;         // qubit coupling magnitude, >= 0 (sign lives in phi)
  double phi = 0.0;       // coupling phase at the qubit location
  double epsilon = 0.0;   // drive amplitude on this mode
  double omega_p = 0.0;   // per-mode drive frequency (carried; single-tone drives
                          // use DriveSpec::omega_p)
  std::string label;
};

// Mode-mode couplings J_ij e^{i theta_ij}: J symmetric nonnegative with
// zero diagonal, theta antisymmetric.
struct CouplingGraph {
  MatrixXd J;      // magnitudes (rad/s)
  MatrixXd theta;  // phases (rad)

  static CouplingGraph none(int m) {
    return {MatrixXd::Zero(m, m), MatrixXd::Zero(m, m)};
  }
};

struct SystemSpec {
  QubitSpec qubit;
  std::vector<ModeSpec> modes;
  CouplingGraph couplings;

  int mode_count() const { return static_cast<int>(modes.size()); }
};

// validate_system is pure and idempotent: it inspects the system and
// returns every violated invariant, never mutating anything.
struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

ValidationReport validate_system(const SystemSpec& spec);

// A validated spec with cached detunings Delta_i = omega_q - omega_i.
// Construction throws ValidationError listing all violations.
class ValidatedSystem {
 public:
  explicit ValidatedSystem(SystemSpec spec);

  const SystemSpec& spec() const { return spec_; }
  const QubitSpec& qubit() const { return spec_.qubit; }
  const std::vector<ModeSpec>& modes() const { return spec_.modes; }
  const CouplingGraph& couplings() const { return spec_.couplings; }
  int mode_count() const { return spec_.mode_count(); }

  // Delta_i = omega_q - omega_i.
  const VectorXd& detunings() const { return detunings_; }
  double detuning(int i) const { return detunings_[i]; }

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  SystemSpec spec_;
  VectorXd detunings_;
  std::vector<std::string> warnings_;
};

// Convenience: validate or throw, with the full issue list attached.
ValidatedSystem make_validated(SystemSpec spec);

}  // namespace purcell
