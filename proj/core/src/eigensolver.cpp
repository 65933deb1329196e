#include "purcell/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "purcell/errors.hpp"
#include "purcell/format.hpp"

namespace purcell {

EigenPairs eig(const MatrixXcd& matrix) {
  if (matrix.rows() != matrix.cols()) throw NumericalError("eig: matrix must be square");
  if (!matrix.allFinite()) throw NumericalError("eig: matrix has non-finite entries");
  const int n = static_cast<int>(matrix.rows());

  Eigen::ComplexEigenSolver<MatrixXcd> solver(matrix, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw NumericalError("complex eigensolver did not converge within the iteration cap");

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Complex va = solver.eigenvalues()[a];
    const Complex vb = solver.eigenvalues()[b];
    if (va.real() != vb.real()) return va.real() < vb.real();
    return va.imag() < vb.imag();
  });

  EigenPairs out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  out.residuals.resize(n);
  const double norm_a = std::max(matrix.norm(), std::numeric_limits<double>::min());
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    const int src = order[static_cast<size_t>(k)];
    out.values[k] = solver.eigenvalues()[src];
    VectorXcd v = solver.eigenvectors().col(src);
    v /= v.norm();
    // Deterministic gauge: largest component made real positive.
    int imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    const Complex pivot = v[imax];
    if (std::abs(pivot) > 0) v *= std::conj(pivot) / std::abs(pivot);
    out.vectors.col(k) = v;
    out.residuals[k] = (matrix * v - out.values[k] * v).norm() / norm_a;
    worst = std::max(worst, out.residuals[k]);
  }
  if (worst > 1e-9)
    throw NumericalError("eigenpair residual " + format_double(worst, 6) +
                         " exceeds the 1e-9 contract");
  return out;
}

namespace {

struct BranchPick {
  int index = 0;
  double overlap = 0.0;
  double runner_up = 0.0;
};

BranchPick best_overlap(const EigenPairs& pairs) {
  BranchPick pick;
  double best = -1.0, second = -1.0;
  for (int k = 0; k < pairs.values.size(); ++k) {
    const double w = std::norm(pairs.vectors(0, k));
    if (w > best) {
      second = best;
      best = w;
      pick.index = k;
    } else if (w > second) {
      second = w;
    }
  }
  pick.overlap = best;
  pick.runner_up = second;
  return pick;
}

SystemSpec scaled_couplings(const SystemSpec& spec, double s) {
  SystemSpec scaled = spec;
  for (auto& mode : scaled.modes) mode.g *= s;
  return scaled;
}

// Follows the eigenvalue nearest to `target` as the coupling scale moves
// from s0 (where `target` lives) to s1; bisects when two candidates are
// nearly equidistant, up to `depth` levels.
Complex continue_branch(const ValidatedSystem& system, double stark_shift, Complex target,
                        double s0, double s1, int depth, std::vector<std::string>& diagnostics) {
  const ValidatedSystem scaled(scaled_couplings(system.spec(), s1));
  const EigenPairs pairs = eig(build_h_eff(scaled, stark_shift).matrix);

  int nearest = 0;
  double d1 = std::numeric_limits<double>::infinity();
  double d2 = d1;
  for (int k = 0; k < pairs.values.size(); ++k) {
    const double d = std::abs(pairs.values[k] - target);
    if (d < d1) {
      d2 = d1;
      d1 = d;
      nearest = k;
    } else if (d < d2) {
      d2 = d;
    }
  }
  const bool ambiguous = pairs.values.size() > 1 && d1 > 0.5 * d2;
  if (ambiguous && depth > 0) {
    const double mid = 0.5 * (s0 + s1);
    const Complex via = continue_branch(system, stark_shift, target, s0, mid, depth - 1,
                                        diagnostics);
    return continue_branch(system, stark_shift, via, mid, s1, depth - 1, diagnostics);
  }
  if (ambiguous)
    diagnostics.push_back("branch crossing near coupling scale " + format_double(s1, 3));
  return pairs.values[nearest];
}

}  // namespace

QubitBranch track_qubit_branch(const EigenPairs& pairs, const ValidatedSystem& system,
                               double stark_shift) {
  QubitBranch branch;
  const BranchPick direct = best_overlap(pairs);

  int chosen = direct.index;
  if (direct.overlap < 0.5) {
    // Homotopy continuation: scale couplings 0 -> 1 and follow the branch
    // seeded at the bare qubit frequency.
    std::vector<std::string> notes;
    Complex lambda(system.qubit().omega_q + stark_shift, 0.0);
    for (int step = 1; step <= 10; ++step) {
      const double s0 = (step - 1) / 10.0;
      const double s1 = step / 10.0;
      lambda = continue_branch(system, stark_shift, lambda, s0, s1, 6, notes);
    }
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < pairs.values.size(); ++k) {
      const double d = std::abs(pairs.values[k] - lambda);
      if (d < best) {
        best = d;
        chosen = k;
      }
    }
    branch.diagnostics = std::move(notes);
    branch.diagnostics.push_back("homotopy fallback engaged (direct overlap " +
                                 format_double(direct.overlap, 3) + ")");
    // Ambiguity at s = 1: two candidates with overlaps too close to call.
    const double chosen_overlap = std::norm(pairs.vectors(0, chosen));
    for (int k = 0; k < pairs.values.size(); ++k) {
      if (k == chosen) continue;
      const double w = std::norm(pairs.vectors(0, k));
      if (std::abs(w - chosen_overlap) < 1e-6 &&
          std::abs(pairs.values[k] - pairs.values[chosen]) <
              1e-9 * std::abs(pairs.values[chosen]))
        throw NumericalError(
            "ambiguous qubit branch at full coupling; rerun with a finer homotopy");
    }
  }

  branch.lambda_e = pairs.values[chosen];
  branch.overlap = std::norm(pairs.vectors(0, chosen));
  branch.gamma_e = -2.0 * branch.lambda_e.imag();
  branch.t1 = branch.gamma_e > 0 ? 1.0 / branch.gamma_e
                                 : std::numeric_limits<double>::infinity();
  return branch;
}

QubitBranch purcell_rate_exact(const ValidatedSystem& system, double stark_shift) {
  if (system.qubit().drive_amplitude != 0.0)
    throw ValidationError({"decay computations require a zero qubit drive amplitude"});
  const EffectiveHamiltonian h = build_h_eff(system, stark_shift);
  const EigenPairs pairs = eig(h.matrix);

  // Passivity: with all kappa_i >= 0 no eigenvalue may sit above the real
  // axis beyond roundoff.
  double max_kappa = 0.0;
  for (const auto& mode : system.modes()) max_kappa = std::max(max_kappa, mode.kappa);
  const double tol = 1e-12 * std::max(max_kappa, 1.0);
  for (int k = 0; k < pairs.values.size(); ++k) {
    if (pairs.values[k].imag() > tol)
      throw NumericalError("passivity violated: eigenvalue with positive imaginary part " +
                           format_double(pairs.values[k].imag(), 6));
  }
  return track_qubit_branch(pairs, system, stark_shift);
}

}  // namespace purcell
