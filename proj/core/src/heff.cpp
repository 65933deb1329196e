#include "purcell/heff.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "purcell/driven.hpp"
#include "purcell/errors.hpp"

namespace purcell {

EffectiveHamiltonian build_h_eff(const ValidatedSystem& system, double stark_shift) {
  const int m = system.mode_count();
  EffectiveHamiltonian out;
  out.matrix = MatrixXcd::Zero(m + 1, m + 1);
  out.basis_labels.reserve(static_cast<size_t>(m) + 1);
  out.basis_labels.push_back("|e,0>");

  out.matrix(0, 0) = Complex(system.qubit().omega_q + stark_shift, 0.0);
  for (int i = 0; i < m; ++i) {
    const ModeSpec& mode = system.modes()[static_cast<size_t>(i)];
    out.matrix(i + 1, i + 1) = Complex(mode.omega, -0.5 * mode.kappa);
    const Complex coupling = mode.g * std::exp(iu * mode.phi);
    out.matrix(0, i + 1) = coupling;
    out.matrix(i + 1, 0) = std::conj(coupling);
    out.basis_labels.push_back("|g,1_" + std::to_string(i + 1) + ">");
  }
  const auto& J = system.couplings().J;
  const auto& theta = system.couplings().theta;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Complex hop = J(i, j) * std::exp(iu * theta(i, j));
      out.matrix(i + 1, j + 1) = hop;
      out.matrix(j + 1, i + 1) = std::conj(hop);
    }
  }
  return out;
}

MatrixXcd mode_block(const ValidatedSystem& system) {
  const int m = system.mode_count();
  MatrixXcd block = MatrixXcd::Zero(m, m);
  for (int i = 0; i < m; ++i)
    block(i, i) = Complex(system.modes()[static_cast<size_t>(i)].omega, 0.0);
  const auto& J = system.couplings().J;
  const auto& theta = system.couplings().theta;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Complex hop = J(i, j) * std::exp(iu * theta(i, j));
      block(i, j) = hop;
      block(j, i) = std::conj(hop);
    }
  }
  return block;
}

NormalModeBasis diagonalize_modes(const ValidatedSystem& system, const DriveSpec& drive) {
  const int m = system.mode_count();
  const MatrixXcd block = mode_block(system);

  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(block);
  if (solver.info() != Eigen::Success)
    throw NumericalError("mode-block eigensolver did not converge");

  NormalModeBasis basis;
  basis.U = solver.eigenvectors();
  basis.omega_tilde = solver.eigenvalues();
  basis.omega_q = system.qubit().omega_q;
  basis.anharmonicity = system.qubit().anharmonicity;

  auto transport = [&](const NormalModeBasis& b) {
    NormalModeBasis v = b;
    v.g_tilde_c.resize(m);
    v.epsilon_tilde.resize(m);
    v.kappa_tilde.resize(m);
    v.g_tilde.resize(m);
    v.phi_tilde.resize(m);
    v.delta_q.resize(m);
    v.delta_d.resize(m);
    for (int k = 0; k < m; ++k) {
      Complex g_c{0.0, 0.0};
      Complex eps{0.0, 0.0};
      double kappa = 0.0;
      for (int i = 0; i < m; ++i) {
        const ModeSpec& mode = system.modes()[static_cast<size_t>(i)];
        const Complex u = v.U(i, k);
        g_c += mode.g * std::exp(iu * mode.phi) * u;
        kappa += std::norm(u) * mode.kappa;
        const double eps_i =
            drive.epsilon.size() == m ? drive.epsilon[i] : mode.epsilon;
        eps += eps_i * u;
      }
      v.g_tilde_c[k] = g_c;
      v.epsilon_tilde[k] = eps;
      v.kappa_tilde[k] = kappa;
      v.g_tilde[k] = std::abs(g_c);
      v.phi_tilde[k] = std::arg(g_c);
      v.delta_q[k] = v.omega_q - v.omega_tilde[k];
      v.delta_d[k] = v.omega_tilde[k] - drive.omega_p;
    }
    return v;
  };
  basis = transport(basis);

  // Deterministic ordering inside degenerate clusters: descending |g_tilde|,
  // ties by dominant original mode index. Eigen already sorts eigenvalues
  // ascending, so only near-equal eigenvalues are touched.
  const double scale = basis.omega_tilde.cwiseAbs().maxCoeff();
  const double tol = 1e-12 * std::max(scale, 1.0);
  int begin = 0;
  bool reordered = false;
  std::vector<int> order(static_cast<size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  while (begin < m) {
    int end = begin + 1;
    while (end < m && std::abs(basis.omega_tilde[end] - basis.omega_tilde[end - 1]) <= tol) ++end;
    if (end - begin > 1) {
      std::stable_sort(order.begin() + begin, order.begin() + end, [&](int a, int b) {
        if (basis.g_tilde[a] != basis.g_tilde[b]) return basis.g_tilde[a] > basis.g_tilde[b];
        int ia = 0, ib = 0;
        basis.U.col(a).cwiseAbs().maxCoeff(&ia);
        basis.U.col(b).cwiseAbs().maxCoeff(&ib);
        return ia < ib;
      });
      reordered = true;
    }
    begin = end;
  }
  if (reordered) {
    MatrixXcd u(m, m);
    VectorXd w(m);
    for (int k = 0; k < m; ++k) {
      u.col(k) = basis.U.col(order[static_cast<size_t>(k)]);
      w[k] = basis.omega_tilde[order[static_cast<size_t>(k)]];
    }
    basis.U = u;
    basis.omega_tilde = w;
    basis = transport(basis);
  }

  // Contract checks: unitarity and reconstruction of the Hermitian block.
  const double unitarity =
      (basis.U.adjoint() * basis.U - MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (unitarity > 1e-10)
    throw NumericalError("normal-mode transformation lost unitarity (" +
                         std::to_string(unitarity) + ")");
  const MatrixXcd rebuilt =
      basis.U * basis.omega_tilde.asDiagonal().toDenseMatrix().cast<Complex>() *
      basis.U.adjoint();
  const double rel = (rebuilt - block).norm() / std::max(block.norm(), 1e-300);
  if (rel > 1e-10)
    throw NumericalError("normal-mode reconstruction error " + std::to_string(rel));

  return basis;
}

}  // namespace purcell
