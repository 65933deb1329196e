#include "purcell/driven.hpp"

#include <cmath>
#include <limits>

#include "purcell/eigensolver.hpp"
#include "purcell/errors.hpp"
#include "purcell/parallel.hpp"
#include "purcell/perturbative.hpp"

namespace purcell {

SteadyState steady_state_photons(const NormalModeBasis& basis, const DriveSpec& drive) {
  const int m = basis.size();
  SteadyState state;
  state.alpha.setZero(m);
  state.n_bar_k.setZero(m);

  for (int k = 0; k < m; ++k) {
    const Complex eps = basis.epsilon_tilde[k];
    const Complex denom(0.5 * basis.kappa_tilde[k], basis.delta_d[k]);  // i*Delta + kappa/2
    if (denom == Complex(0.0, 0.0)) {
      if (std::abs(eps) > 0.0)
        throw SingularConfigError("driven lossless mode " + std::to_string(k) +
                                  " exactly on resonance has no steady state");
      continue;  // undriven: empty mode
    }
    state.alpha[k] = eps / denom;
    state.n_bar_k[k] = std::norm(state.alpha[k]);
    state.n_bar += state.n_bar_k[k];
  }

  state.chi_k = dispersive_shifts(basis, basis.anharmonicity);

  int dominant = drive.dominant_mode;
  if (dominant < 0) {
    // Largest populated mode; with no photons anywhere, largest coupling.
    double best = -1.0;
    for (int k = 0; k < m; ++k) {
      const double w = state.n_bar > 0 ? state.n_bar_k[k] : basis.g_tilde[k];
      if (w > best) {
        best = w;
        dominant = k;
      }
    }
  }
  state.dominant_mode = dominant;

  if (state.n_bar > 0) {
    double acc = 0.0;
    for (int k = 0; k < m; ++k) acc += state.chi_k[k] * state.n_bar_k[k];
    state.chi_eff = acc / state.n_bar;
  } else {
    state.chi_eff = state.chi_k[dominant];
  }

  const double chi0 = state.chi_k[dominant];
  if (drive.n_crit_override) {
    state.n_crit = *drive.n_crit_override;
  } else {
    state.n_crit = chi0 != 0.0
                       ? std::abs(basis.delta_q[dominant]) / (2.0 * std::abs(chi0))
                       : std::numeric_limits<double>::infinity();
  }
  return state;
}

VectorXd dispersive_shifts(const NormalModeBasis& basis, double anharmonicity) {
  const int m = basis.size();
  const double scale = std::abs(basis.omega_q);
  VectorXd chi(m);
  for (int k = 0; k < m; ++k) {
    const double delta = basis.delta_q[k];
    if (std::abs(delta) <= 1e-12 * scale)
      throw SingularConfigError("dispersive shift pole: mode " + std::to_string(k) +
                                " is resonant with the qubit");
    if (std::abs(delta - anharmonicity) <= 1e-12 * scale)
      throw SingularConfigError("dispersive shift pole: Delta_k equals the anharmonicity for "
                                "mode " +
                                std::to_string(k));
    const double g2 = basis.g_tilde[k] * basis.g_tilde[k];
    chi[k] = -g2 * anharmonicity / (delta * (delta - anharmonicity));
  }
  return chi;
}

KerrMatrix cross_kerr(const NormalModeBasis& basis) {
  const int m = basis.size();
  KerrMatrix kerr;
  kerr.chi.resize(m, m);
  for (int k = 0; k < m; ++k) {
    if (std::abs(basis.delta_q[k]) <= 1e-12 * std::abs(basis.omega_q))
      throw SingularConfigError("cross-Kerr pole: mode " + std::to_string(k) +
                                " is resonant with the qubit");
  }
  for (int k = 0; k < m; ++k) {
    kerr.chi(k, k) = Complex(-std::norm(basis.g_tilde_c[k]) / basis.delta_q[k], 0.0);
    for (int l = k + 1; l < m; ++l) {
      const Complex v = -0.5 * std::conj(basis.g_tilde_c[k]) * basis.g_tilde_c[l] *
                        (1.0 / basis.delta_q[k] + 1.0 / basis.delta_q[l]);
      kerr.chi(k, l) = v;
      kerr.chi(l, k) = std::conj(v);
    }
  }
  return kerr;
}

SystemSpec stark_shifted_system(const ValidatedSystem& system, const SteadyState& state,
                                const KerrMatrix* kerr) {
  SystemSpec shifted = system.spec();
  double shift = 2.0 * state.chi_eff * state.n_bar;
  if (kerr) {
    const int m = static_cast<int>(kerr->chi.rows());
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l)
        if (k != l) shift += 2.0 * kerr->chi(k, l).real() * state.n_bar_k[k] * state.n_bar_k[l];
  }
  shifted.qubit.omega_q += shift;
  return shifted;
}

DrivenCurve normalized_purcell_curve(const ValidatedSystem& system, const NormalModeBasis& basis,
                                     const DriveSpec& drive,
                                     const std::vector<double>& n_bar_grid, int threads) {
  DrivenCurve curve;

  // Zero-drive reference state fixes chi_eff and the photon distribution
  // pattern; the imposed n_bar then scales that pattern.
  SteadyState ref = steady_state_photons(basis, drive);
  VectorXd weights = VectorXd::Zero(basis.size());
  if (ref.n_bar > 0) {
    weights = ref.n_bar_k / ref.n_bar;
  } else {
    weights[ref.dominant_mode] = 1.0;
  }
  double chi_eff0 = 0.0;
  for (int k = 0; k < basis.size(); ++k) chi_eff0 += ref.chi_k[k] * weights[k];
  curve.chi_eff0 = chi_eff0;
  curve.n_crit = ref.n_crit;

  const QubitBranch zero_exact = purcell_rate_exact(system, 0.0);
  const DecayReport zero_analytic = gamma_eff(system);
  if (zero_exact.gamma_e <= 0.0 || zero_analytic.gamma_eff <= 0.0)
    throw NumericalError("normalization error: zero-drive decay rate is not positive");
  curve.gamma_exact_0 = zero_exact.gamma_e;
  curve.gamma_analytic_0 = zero_analytic.gamma_eff;

  // Optional cross-Kerr product term 2 chi_kl n_k n_l on top of the
  // linear ramp; quadratic in the imposed photon number.
  double kerr_quadratic = 0.0;
  if (drive.cross_kerr_stark) {
    const KerrMatrix kerr = cross_kerr(basis);
    for (int k = 0; k < basis.size(); ++k)
      for (int l = 0; l < basis.size(); ++l)
        if (k != l) kerr_quadratic += 2.0 * kerr.chi(k, l).real() * weights[k] * weights[l];
  }

  curve.points.resize(n_bar_grid.size());
  parallel_for_indexed(n_bar_grid.size(), threads, [&](size_t i) {
    DrivenCurvePoint& point = curve.points[i];
    point.n_bar = n_bar_grid[i];
    const double shift =
        2.0 * chi_eff0 * point.n_bar + kerr_quadratic * point.n_bar * point.n_bar;

    const QubitBranch exact = purcell_rate_exact(system, shift);
    point.ratio_exact = exact.gamma_e / curve.gamma_exact_0;

    SystemSpec shifted = system.spec();
    shifted.qubit.omega_q += shift;
    const DecayReport analytic = gamma_eff(ValidatedSystem(std::move(shifted)));
    point.ratio_analytic = analytic.gamma_eff / curve.gamma_analytic_0;
    point.direct_part = analytic.direct_part / curve.gamma_analytic_0;
    point.interference_part = analytic.interference_part / curve.gamma_analytic_0;
  });
  return curve;
}

ExponentFit fit_suppression_exponent(const DrivenCurve& curve, bool analytic_branch) {
  if (curve.points.size() < 5)
    throw NumericalError("suppression-exponent fit needs at least 5 grid points");
  if (!(curve.n_crit > 0) || std::isinf(curve.n_crit))
    throw NumericalError("suppression-exponent fit needs a finite positive n_crit");

  double sxx = 0.0, sxy = 0.0;
  std::vector<double> xs, ys;
  for (const auto& p : curve.points) {
    const double ratio = analytic_branch ? p.ratio_analytic : p.ratio_exact;
    if (!(ratio > 0.0) || ratio > 1.0 + 1e-12)
      throw NumericalError("suppression-exponent fit requires ratios in (0, 1]");
    const double x = std::log1p(p.n_bar / curve.n_crit);
    const double y = -std::log(ratio);
    xs.push_back(x);
    ys.push_back(y);
    sxx += x * x;
    sxy += x * y;
  }
  if (sxx == 0.0) throw NumericalError("degenerate grid: all points at n_bar = 0");

  ExponentFit fit;
  fit.alpha = sxy / sxx;
  double ss = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - fit.alpha * xs[i];
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(xs.size()));
  return fit;
}

}  // namespace purcell
