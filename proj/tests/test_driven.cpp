#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "purcell/driven.hpp"
#include "purcell/eigensolver.hpp"
#include "purcell/errors.hpp"
#include "purcell/heff.hpp"

using namespace purcell;
using purcell::testing::random_system;

namespace {

// One decoupled mode so the normal basis is the bare basis.
ValidatedSystem driven_single(double f_q, double f_r, double g, double kappa, double alpha,
                              double epsilon) {
  SystemSpec spec;
  spec.qubit.omega_q = two_pi * f_q;
  spec.qubit.anharmonicity = two_pi * alpha;
  spec.modes.resize(1);
  spec.modes[0].omega = two_pi * f_r;
  spec.modes[0].kappa = two_pi * kappa;
  spec.modes[0].g = two_pi * g;
  spec.modes[0].epsilon = two_pi * epsilon;
  spec.couplings = CouplingGraph::none(1);
  return ValidatedSystem{spec};
}

DriveSpec drive_at(const ValidatedSystem& system, double f_p) {
  DriveSpec drive;
  drive.omega_p = two_pi * f_p;
  drive.epsilon.resize(system.mode_count());
  for (int i = 0; i < system.mode_count(); ++i)
    drive.epsilon[i] = system.modes()[i].epsilon;
  return drive;
}

}  // namespace

TEST_SUITE("steady_state") {
  TEST_CASE("resonant drive balance gives one photon") {
    // eps = kappa/2, Delta_d = 0 -> |alpha| = 1.
    auto system = driven_single(6e9, 10e9, 0.1e9, 2e6, -0.23e9, 1e6);
    auto drive = drive_at(system, 10e9);
    const auto basis = diagonalize_modes(system, drive);
    const auto state = steady_state_photons(basis, drive);
    CHECK(state.n_bar_k[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(state.n_bar == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("no drive, no photons") {
    auto system = driven_single(6e9, 10e9, 0.1e9, 2e6, -0.23e9, 0.0);
    auto drive = drive_at(system, 10e9);
    const auto basis = diagonalize_modes(system, drive);
    const auto state = steady_state_photons(basis, drive);
    CHECK(state.n_bar == 0.0);
  }

  TEST_CASE("hand-evaluated Lorentzian: n = 0.5") {
    // Delta/2pi = 1 MHz, kappa/2pi = 2 MHz, eps/2pi = 1 MHz.
    auto system = driven_single(6e9, 10e9, 0.1e9, 2e6, -0.23e9, 1e6);
    auto drive = drive_at(system, 10e9 - 1e6);
    const auto basis = diagonalize_modes(system, drive);
    const auto state = steady_state_photons(basis, drive);
    CHECK(state.n_bar == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("driven lossless resonant mode is singular") {
    auto system = driven_single(6e9, 10e9, 0.1e9, 0.0, -0.23e9, 1e6);
    auto drive = drive_at(system, 10e9);
    const auto basis = diagonalize_modes(system, drive);
    CHECK_THROWS_AS(steady_state_photons(basis, drive), SingularConfigError);
  }

  TEST_CASE("photon number decreases with drive detuning magnitude") {
    auto system = driven_single(6e9, 10e9, 0.1e9, 2e6, -0.23e9, 1e6);
    double previous = std::numeric_limits<double>::infinity();
    for (double offset : {0.0, 0.5e6, 1e6, 2e6, 4e6}) {
      auto drive = drive_at(system, 10e9 + offset);
      const auto basis = diagonalize_modes(system, drive);
      const auto state = steady_state_photons(basis, drive);
      CHECK(state.n_bar < previous);
      previous = state.n_bar;
    }
  }
}

TEST_SUITE("dispersive_shifts") {
  TEST_CASE("zero coupling, zero shift; harmonic limit vanishes") {
    auto system = driven_single(6e9, 10e9, 0.0, 2e6, -0.23e9, 0.0);
    auto basis = diagonalize_modes(system, drive_at(system, 10e9));
    CHECK(dispersive_shifts(basis, system.qubit().anharmonicity)[0] == 0.0);

    auto coupled = driven_single(6e9, 10e9, 0.1e9, 2e6, 0.0, 0.0);
    auto basis2 = diagonalize_modes(coupled, drive_at(coupled, 10e9));
    CHECK(dispersive_shifts(basis2, 0.0)[0] == 0.0);
  }

  TEST_CASE("hand evaluation: chi/2pi = +1.87 MHz") {
    // g/2pi = 0.1 GHz, Delta/2pi = 1 GHz, alpha/2pi = -0.23 GHz.
    auto system = driven_single(6e9, 5e9, 0.1e9, 2e6, -0.23e9, 0.0);
    auto basis = diagonalize_modes(system, drive_at(system, 5e9));
    const double chi = dispersive_shifts(basis, system.qubit().anharmonicity)[0];
    CHECK(chi / two_pi == doctest::Approx(0.01 * 0.23 / 1.23 * 1e9).epsilon(1e-9));
    CHECK(chi / two_pi == doctest::Approx(1.8699e6).epsilon(1e-4));
  }

  TEST_CASE("identity: chi splits into two-level terms by partial fractions") {
    // chi = -g^2 alpha / (Delta (Delta - alpha)) == g^2/Delta - g^2/(Delta - alpha),
    // asserted on random bases.
    for (uint64_t seed = 900; seed < 930; ++seed) {
      SystemSpec spec = random_system(seed);
      const ValidatedSystem system{spec};
      DriveSpec drive;
      drive.omega_p = spec.qubit.omega_q;
      const auto basis = diagonalize_modes(system, drive);
      const double alpha = spec.qubit.anharmonicity;
      const VectorXd chi = dispersive_shifts(basis, alpha);
      for (int k = 0; k < basis.size(); ++k) {
        const double delta = basis.delta_q[k];
        const double g2 = basis.g_tilde[k] * basis.g_tilde[k];
        const double alt = g2 / delta - g2 / (delta - alpha);
        CHECK(chi[k] == doctest::Approx(alt).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("poles are named errors") {
    auto resonant = driven_single(10e9, 10e9, 0.1e9, 2e6, -0.23e9, 0.0);
    auto basis = diagonalize_modes(resonant, drive_at(resonant, 10e9));
    CHECK_THROWS_AS(dispersive_shifts(basis, resonant.qubit().anharmonicity),
                    SingularConfigError);

    auto at_alpha = driven_single(6e9, 6.23e9, 0.1e9, 2e6, -0.23e9, 0.0);
    auto basis2 = diagonalize_modes(at_alpha, drive_at(at_alpha, 6.23e9));
    CHECK_THROWS_AS(dispersive_shifts(basis2, at_alpha.qubit().anharmonicity),
                    SingularConfigError);
  }
}

TEST_SUITE("cross_kerr") {
  TEST_CASE("equal couplings and detunings collapse chi_kl to chi_kk") {
    SystemSpec spec;
    spec.qubit.omega_q = two_pi * 6e9;
    spec.modes.resize(2);
    for (auto& mode : spec.modes) {
      mode.omega = two_pi * 8e9;
      mode.kappa = two_pi * 1e6;
      mode.g = two_pi * 50e6;
    }
    spec.couplings = CouplingGraph::none(2);
    const ValidatedSystem system{spec};
    // Degenerate modes hybridize into bright/dark; evaluate Kerr on the
    // bare basis by keeping J = 0 but distinct frequencies instead.
    spec.modes[1].omega = two_pi * 8e9 + 1.0;  // split degeneracy by 1 rad/s
    const ValidatedSystem system2{spec};
    const auto basis = diagonalize_modes(system2, DriveSpec{});
    const auto kerr = cross_kerr(basis);
    CHECK(kerr.chi(0, 1).real() == doctest::Approx(kerr.chi(0, 0).real()).epsilon(1e-6));
    CHECK(kerr.chi(0, 0).imag() == 0.0);
  }

  TEST_CASE("zero coupling zeroes the row and column") {
    SystemSpec spec;
    spec.qubit.omega_q = two_pi * 6e9;
    spec.modes.resize(2);
    spec.modes[0].omega = two_pi * 8e9;
    spec.modes[0].g = two_pi * 50e6;
    spec.modes[0].kappa = two_pi * 1e6;
    spec.modes[1].omega = two_pi * 9e9;
    spec.modes[1].g = 0.0;
    spec.modes[1].kappa = two_pi * 1e6;
    spec.couplings = CouplingGraph::none(2);
    const auto basis = diagonalize_modes(ValidatedSystem{spec}, DriveSpec{});
    const auto kerr = cross_kerr(basis);
    CHECK(std::abs(kerr.chi(0, 1)) == 0.0);
    CHECK(std::abs(kerr.chi(1, 1)) == 0.0);
  }

  TEST_CASE("Hermitian structure chi_kl = conj(chi_lk) on random bases") {
    for (uint64_t seed = 950; seed < 980; ++seed) {
      const ValidatedSystem system{random_system(seed)};
      const auto basis = diagonalize_modes(system, DriveSpec{});
      bool pole = false;
      for (int k = 0; k < basis.size(); ++k) pole |= basis.delta_q[k] == 0.0;
      if (pole) continue;
      const auto kerr = cross_kerr(basis);
      for (int k = 0; k < basis.size(); ++k) {
        CHECK(kerr.chi(k, k).imag() == 0.0);
        for (int l = 0; l < basis.size(); ++l)
          CHECK(std::abs(kerr.chi(k, l) - std::conj(kerr.chi(l, k))) <=
                1e-12 * std::abs(kerr.chi(k, l)));
      }
    }
  }
}

TEST_SUITE("stark_shift") {
  TEST_CASE("no photons, identical system") {
    auto system = driven_single(6e9, 10e9, 0.1e9, 2e6, -0.23e9, 0.0);
    auto drive = drive_at(system, 10e9);
    const auto basis = diagonalize_modes(system, drive);
    const auto state = steady_state_photons(basis, drive);
    const SystemSpec shifted = stark_shifted_system(system, state);
    CHECK(shifted.qubit.omega_q == system.qubit().omega_q);
  }

  TEST_CASE("hand evaluation: chi_eff/2pi = -1 MHz, n = 5 shifts by -10 MHz") {
    auto system = driven_single(6e9, 10e9, 0.1e9, 2e6, -0.23e9, 0.0);
    SteadyState state;
    state.chi_eff = -two_pi * 1e6;
    state.n_bar = 5.0;
    state.n_bar_k = VectorXd::Zero(1);
    const SystemSpec shifted = stark_shifted_system(system, state);
    CHECK(shifted.qubit.omega_q - system.qubit().omega_q ==
          doctest::Approx(-two_pi * 10e6).epsilon(1e-12));
  }

  TEST_CASE("shift commutes with the frame choice") {
    // Gamma from the shifted system equals Gamma with all detunings
    // shifted equally (only detunings enter the rate).
    const ValidatedSystem system{random_system(1234)};
    const double shift = two_pi * 3e6;

    SystemSpec via_qubit = system.spec();
    via_qubit.qubit.omega_q += shift;

    SystemSpec via_modes = system.spec();
    for (auto& mode : via_modes.modes) mode.omega -= shift;

    const double a = purcell_rate_exact(ValidatedSystem{via_qubit}).gamma_e;
    const double b = purcell_rate_exact(ValidatedSystem{via_modes}).gamma_e;
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
  }
}

TEST_SUITE("suppression_fit") {
  TEST_CASE("exact model recovery: alpha = 2 to 1e-6") {
    DrivenCurve curve;
    curve.n_crit = 2.0;
    for (int i = 0; i <= 20; ++i) {
      DrivenCurvePoint p;
      p.n_bar = 0.5 * i;
      p.ratio_exact = std::pow(1.0 + p.n_bar / 2.0, -2.0);
      p.ratio_analytic = p.ratio_exact;
      curve.points.push_back(p);
    }
    const auto fit = fit_suppression_exponent(curve);
    CHECK(fit.alpha == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fit.residual <= 1e-12);
  }

  TEST_CASE("flat curve fits alpha = 0") {
    DrivenCurve curve;
    curve.n_crit = 2.0;
    for (int i = 0; i <= 10; ++i)
      curve.points.push_back({0.5 * i, 1.0, 1.0, 1.0, 0.0});
    CHECK(fit_suppression_exponent(curve).alpha == doctest::Approx(0.0));
  }

  TEST_CASE("preconditions: grid size and ratio range") {
    DrivenCurve curve;
    curve.n_crit = 2.0;
    curve.points = {{0, 1, 1, 1, 0}, {1, 0.5, 0.5, 0.5, 0}};
    CHECK_THROWS_AS(fit_suppression_exponent(curve), NumericalError);
    curve.points = {{0, 1, 1, 1, 0}, {1, 1.2, 1.2, 1.2, 0}, {2, 1, 1, 1, 0},
                    {3, 1, 1, 1, 0}, {4, 1, 1, 1, 0}};
    CHECK_THROWS_AS(fit_suppression_exponent(curve), NumericalError);
  }
}

TEST_SUITE("driven_curve") {
  TEST_CASE("n = 0 gives ratio exactly 1; single-mode curve is monotone") {
    auto system = driven_single(6e9, 5e9, 0.25e9, 0.02e9, -0.923e9, 0.01e9);
    auto drive = drive_at(system, 5e9);
    const auto basis = diagonalize_modes(system, drive);
    std::vector<double> grid;
    for (int i = 0; i <= 16; ++i) grid.push_back(i * 2.0);
    const auto curve = normalized_purcell_curve(system, basis, drive, grid);

    CHECK(curve.points.front().ratio_exact == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(curve.points.front().ratio_analytic == doctest::Approx(1.0).epsilon(1e-12));
    for (size_t i = 1; i < curve.points.size(); ++i)
      CHECK(curve.points[i].ratio_exact < curve.points[i - 1].ratio_exact);

    // sign(chi_eff * Delta) > 0 here, so the direct part must fall with n.
    CHECK(curve.chi_eff0 * (two_pi * 1e9) > 0);
    for (size_t i = 1; i < curve.points.size(); ++i)
      CHECK(curve.points[i].direct_part < curve.points[i - 1].direct_part);
  }

  TEST_CASE("exact and analytic branches agree at small photon number") {
    auto system = driven_single(6e9, 5e9, 0.25e9, 0.02e9, -0.923e9, 0.01e9);
    auto drive = drive_at(system, 5e9);
    const auto basis = diagonalize_modes(system, drive);
    const auto curve =
        normalized_purcell_curve(system, basis, drive, {0.0, 0.1, 0.2, 0.3, 0.4});
    for (const auto& p : curve.points)
      CHECK(std::abs(p.ratio_exact - p.ratio_analytic) <= 0.15 * p.ratio_analytic);
  }

  TEST_CASE("cross-Kerr Stark option bends the ramp quadratically") {
    SystemSpec spec;
    spec.qubit.omega_q = two_pi * 6e9;
    spec.qubit.anharmonicity = -two_pi * 0.3e9;
    spec.modes.resize(2);
    spec.modes[0].omega = two_pi * 5e9;
    spec.modes[0].kappa = two_pi * 0.02e9;
    spec.modes[0].g = two_pi * 0.2e9;
    spec.modes[0].epsilon = two_pi * 2e6;
    spec.modes[1].omega = two_pi * 4.2e9;
    spec.modes[1].kappa = two_pi * 0.05e9;
    spec.modes[1].g = two_pi * 0.15e9;
    spec.modes[1].epsilon = two_pi * 2e6;
    spec.couplings = CouplingGraph::none(2);
    const ValidatedSystem system{spec};
    DriveSpec drive;
    drive.omega_p = two_pi * 5e9;
    drive.epsilon.resize(2);
    drive.epsilon << two_pi * 2e6, two_pi * 2e6;
    const auto basis = diagonalize_modes(system, drive);

    const auto plain = normalized_purcell_curve(system, basis, drive, {0.0, 1.0, 2.0, 3.0, 4.0});
    DriveSpec with_kerr = drive;
    with_kerr.cross_kerr_stark = true;
    const auto bent =
        normalized_purcell_curve(system, basis, with_kerr, {0.0, 1.0, 2.0, 3.0, 4.0});

    CHECK(bent.points[0].ratio_exact == plain.points[0].ratio_exact);
    // The quadratic term must matter more at larger photon number.
    const double d1 = std::abs(bent.points[1].ratio_exact - plain.points[1].ratio_exact) /
                      plain.points[1].ratio_exact;
    const double d4 = std::abs(bent.points[4].ratio_exact - plain.points[4].ratio_exact) /
                      plain.points[4].ratio_exact;
    CHECK(d4 > d1);
    CHECK(d1 > 0.0);
  }

  TEST_CASE("curve is identical across thread counts") {
    auto system = driven_single(6e9, 5e9, 0.25e9, 0.02e9, -0.923e9, 0.01e9);
    auto drive = drive_at(system, 5e9);
    const auto basis = diagonalize_modes(system, drive);
    std::vector<double> grid;
    for (int i = 0; i <= 12; ++i) grid.push_back(i * 4.0);
    const auto serial = normalized_purcell_curve(system, basis, drive, grid, 1);
    const auto parallel = normalized_purcell_curve(system, basis, drive, grid, 3);
    for (size_t i = 0; i < grid.size(); ++i) {
      CHECK(serial.points[i].ratio_exact == parallel.points[i].ratio_exact);
      CHECK(serial.points[i].interference_part == parallel.points[i].interference_part);
    }
  }

  TEST_CASE("zero decay rate cannot be normalized") {
    auto system = driven_single(6e9, 5e9, 0.0, 0.02e9, -0.923e9, 0.01e9);
    auto drive = drive_at(system, 5e9);
    const auto basis = diagonalize_modes(system, drive);
    CHECK_THROWS_AS(normalized_purcell_curve(system, basis, drive, {0.0, 1.0, 2.0, 3.0, 4.0}),
                    NumericalError);
  }
}
