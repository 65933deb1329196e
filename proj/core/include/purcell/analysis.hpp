#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "purcell/system.hpp"
#include "purcell/types.hpp"

namespace purcell {

// Decay-rate methods a sweep can evaluate per grid point.
enum class Method {
  Exact,        // non-Hermitian eigensolver branch rate
  Eq11,         // closed-form direct + interference rate
  AppC,         // -2 Im of the third-order perturbative eigenvalue
  AppC2,        // second-order truncation (no interference)
  AppD,         // density-matrix rate including the three-mode term
};

std::string method_name(Method m);
Method method_from_name(const std::string& name);

// Addressable scalar parameters: "qubit.omega_q", "qubit.alpha",
// "modes[2].kappa", "modes[0].omega", "modes[1].g", "modes[1].phi",
// "couplings.J[0][1]", "couplings.theta[0][1]" (symmetry maintained).
struct ParamPath {
  std::string text;
  static ParamPath parse(const std::string& path, const SystemSpec& reference);
  void apply(SystemSpec& spec, double value) const;
  bool is_phase() const { return phase_; }

 private:
  enum class Kind { QubitOmega, QubitAlpha, ModeField, CouplingJ, CouplingTheta } kind_;
  int index_a_ = 0;
  int index_b_ = 0;
  int mode_field_ = 0;
  bool phase_ = false;
  friend struct ParamPathAccess;
};

struct SweepAxis {
  std::string param;
  std::vector<double> grid;  // canonical units (rad/s or rad)
};

struct SweepRecord {
  double a = 0.0;                    // axis-a value
  double b = 0.0;                    // axis-b value (2-D only)
  double gamma_exact = 0.0;          // 1/s; NaN with a diagnostic on failure
  double gamma_eq11 = 0.0;
  double gamma_appc = 0.0;
  double gamma_appc2 = 0.0;
  double gamma_appd = 0.0;
  double t1_exact = 0.0;             // s
  double t1_eq11 = 0.0;
  double overlap = 0.0;
  std::string diagnostics;
};

struct SweepResult {
  SweepAxis axis_a;
  std::optional<SweepAxis> axis_b;
  std::set<Method> methods;
  std::vector<SweepRecord> records;  // grid order; 2-D is a-major

  std::string to_csv() const;
};

std::vector<double> linspace(double from, double to, int points);

SweepResult sweep_1d(const SystemSpec& base, const std::string& param,
                     const std::vector<double>& grid, const std::set<Method>& methods,
                     int threads = 1);

SweepResult sweep_2d(const SystemSpec& base, const std::string& param_a,
                     const std::vector<double>& grid_a, const std::string& param_b,
                     const std::vector<double>& grid_b, const std::set<Method>& methods,
                     int threads = 1);

// T1 from a radiative rate in parallel with an intrinsic-Q channel:
// 1 / T1 = gamma_rad + omega_q / Q_internal.
double combine_t1(double gamma_rad, double q_internal, double omega_q);

struct SweetSpot {
  double position = 0.0;   // axis value of the peak
  double t1 = 0.0;         // s
  double width = 0.0;      // half-prominence width in axis units
  int index = 0;
};

// Local T1 maxima of a 1-D frequency sweep with peak/baseline >= the
// given relative prominence. Empty result is valid.
std::vector<SweetSpot> find_sweet_spots(const SweepResult& sweep, Method method,
                                        double min_relative_prominence = 2.0);

// First-order variance propagation for two independent decay channels.
struct DecayChannelStats {
  double mean_t = 0.0;  // s
  double var_t = 0.0;   // s^2
};

struct VariancePropagation {
  DecayChannelStats total;
  std::vector<std::string> warnings;  // fluctuation ratio above 0.3
};

VariancePropagation variance_propagation(const DecayChannelStats& a, const DecayChannelStats& b);

// Monte-Carlo oracle for the first-order formula: Gaussian channel times
// truncated below at 10% of the mean, combined in parallel. Deterministic
// for a fixed seed regardless of chunking.
DecayChannelStats monte_carlo_variance(const DecayChannelStats& a, const DecayChannelStats& b,
                                       int64_t samples, uint64_t seed);

}  // namespace purcell
