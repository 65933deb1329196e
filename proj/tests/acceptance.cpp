// Acceptance suite: one criterion per invocation (argv[1] = 1..9),
// printing a single PASS/FAIL line with the measured numbers. argv[2]
// points at the shipped configs directory.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "purcell/analysis.hpp"
#include "purcell/config.hpp"
#include "purcell/driven.hpp"
#include "purcell/eigensolver.hpp"
#include "purcell/format.hpp"
#include "purcell/geometry.hpp"
#include "purcell/heff.hpp"
#include "purcell/perturbative.hpp"
#include "purcell/rng.hpp"
#include "purcell/system.hpp"

using namespace purcell;

namespace {

std::string g_configs = "configs";

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

// Shared ensemble for criteria 1 and 2: 100 seeded systems with
// m in {1..5}, g_i/|Delta_i| <= 0.03, J/|Delta| <= 0.03,
// kappa_i/|Delta_i| <= 0.01. J dominates g so the O(J^2) remainder is
// the leading error term in the order-scaling check.
SystemSpec ensemble_system(int index) {
  const CounterRng rng(0x5eed + static_cast<uint64_t>(index));
  uint64_t c = 0;
  auto u = [&](double lo, double hi) { return rng.uniform(++c, 0, lo, hi); };

  SystemSpec spec;
  spec.qubit.omega_q = two_pi * u(4e9, 7e9);
  const int m = 1 + index % 5;
  double min_delta = 1e300;
  for (int i = 0; i < m; ++i) {
    ModeSpec mode;
    const double delta = two_pi * u(2e9, 8e9);
    const double sign = u(0, 1) < 0.3 ? 1.0 : -1.0;
    mode.omega = spec.qubit.omega_q - sign * delta;
    min_delta = std::min(min_delta, delta);
    mode.kappa = delta * u(0.2, 1.0) * 0.01;
    mode.phi = u(-pi, pi);
    spec.modes.push_back(mode);
  }
  spec.couplings = CouplingGraph::none(m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double J = min_delta * u(0.5, 1.0) * 0.03;
      spec.couplings.J(i, j) = spec.couplings.J(j, i) = J;
      const double th = u(-pi, pi);
      spec.couplings.theta(i, j) = th;
      spec.couplings.theta(j, i) = -th;
    }
  // g after J so each coupling sits well below the mode-mode scale.
  const double j_scale = spec.mode_count() > 1 ? min_delta * 0.03 : min_delta * 0.006;
  for (int i = 0; i < m; ++i)
    spec.modes[static_cast<size_t>(i)].g = j_scale * u(0.1, 0.2);
  return spec;
}

bool criterion_1() {
  const double t0 = now_s();
  double worst_identity = 0.0, worst_exact = 0.0;
  for (int k = 0; k < 100; ++k) {
    const ValidatedSystem system{ensemble_system(k)};
    const DecayReport report = gamma_eff(system);
    const double gamma = report.gamma_eff;
    const double id1 = std::abs(2.0 * report.gamma_complex.real() - gamma) / std::abs(gamma);
    const double id2 =
        std::abs(-2.0 * report.lambda_e_pert.imag() - gamma) / std::abs(gamma);
    worst_identity = std::max({worst_identity, id1, id2});
    const double exact = purcell_rate_exact(system).gamma_e;
    worst_exact = std::max(worst_exact, std::abs(gamma - exact) / exact);
  }
  const double dt = now_s() - t0;
  const bool pass = worst_identity <= 1e-12 && worst_exact <= 0.05 && dt < 10.0;
  std::printf("%s criterion 1: formula equivalence on 100 seeded systems "
              "(identity %.2e <= 1e-12, vs exact %.5f <= 0.05, %.2f s < 10 s)\n",
              pass ? "PASS" : "FAIL", worst_identity, worst_exact, dt);
  return pass;
}

bool criterion_2() {
  double err_full = 0.0, err_half = 0.0;
  int counted = 0;
  for (int k = 0; k < 100; ++k) {
    SystemSpec spec = ensemble_system(k);
    if (spec.mode_count() < 2) continue;
    ++counted;
    const ValidatedSystem full{spec};
    err_full += std::abs(purcell_rate_exact(full).gamma_e - gamma_eff(full).gamma_eff);
    SystemSpec halved = spec;
    halved.couplings.J *= 0.5;
    const ValidatedSystem half{halved};
    err_half += std::abs(purcell_rate_exact(half).gamma_e - gamma_eff(half).gamma_eff);
  }
  const double ratio = err_full / err_half;
  const bool pass = counted >= 60 && ratio >= 3.5;
  std::printf("%s criterion 2: halving J reduces |exact - closed form| by %.3f "
              "(>= 3.5, theoretical 4; %d multi-mode systems)\n",
              pass ? "PASS" : "FAIL", ratio, counted);
  return pass;
}

bool criterion_3() {
  const double t0 = now_s();
  const ParsedConfig cfg = load_config(g_configs + "/multimode_t1_stack.toml");

  SystemSpec single = cfg.system;
  single.modes.resize(1);
  single.couplings = CouplingGraph::none(1);

  const auto grid = linspace(two_pi * 2e9, two_pi * 9e9, 2000);
  const auto sweep_single = sweep_1d(single, "qubit.omega_q", grid, {Method::Eq11}, 2);

  // Closed-form check of the single-mode curve.
  const double kappa = single.modes[0].kappa;
  const double g = single.modes[0].g;
  double worst_closed_form = 0.0;
  for (size_t i = 0; i < grid.size(); ++i) {
    const double delta = grid[i] - single.modes[0].omega;
    const double expected = kappa * g * g / (delta * delta + 0.25 * kappa * kappa);
    worst_closed_form =
        std::max(worst_closed_form,
                 std::abs(sweep_single.records[i].gamma_eq11 - expected) / expected);
  }

  const auto sweep_multi = sweep_1d(cfg.system, "qubit.omega_q", grid, {Method::Exact}, 2);
  double best_ratio = 0.0;
  for (size_t i = 0; i < grid.size(); ++i) {
    const double gamma_s = sweep_single.records[i].gamma_eq11;
    const double gamma_m = sweep_multi.records[i].gamma_exact;
    if (gamma_m > 0 && !std::isnan(gamma_m))
      best_ratio = std::max(best_ratio, gamma_s / gamma_m);
  }
  const double dt = now_s() - t0;
  const bool pass = worst_closed_form <= 1e-9 && best_ratio >= 10.0 && dt < 30.0;
  std::printf("%s criterion 3: five-mode stack vs single-mode reference at 2000 points "
              "(closed-form deviation %.2e <= 1e-9, max T1 enhancement %.2fx >= 10x, "
              "%.2f s < 30 s)%s\n",
              pass ? "PASS" : "FAIL", worst_closed_form, best_ratio, dt,
              best_ratio < 10.0
                  ? " [expected shortfall: with the quoted mode placement and couplings the "
                    "interference ceiling is ~1.6x for any loss assignment; see the build "
                    "notes]"
                  : "");
  return pass;
}

int count_components(const std::vector<std::vector<bool>>& grid) {
  const int na = static_cast<int>(grid.size());
  const int nb = static_cast<int>(grid[0].size());
  std::vector<std::vector<int>> label(na, std::vector<int>(nb, 0));
  int components = 0;
  std::vector<std::pair<int, int>> stack;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      if (!grid[i][j] || label[i][j]) continue;
      ++components;
      stack.push_back({i, j});
      label[i][j] = components;
      while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        const int da[4] = {1, -1, 0, 0}, db[4] = {0, 0, 1, -1};
        for (int t = 0; t < 4; ++t) {
          const int x = a + da[t], y = b + db[t];
          if (x < 0 || x >= na || y < 0 || y >= nb || !grid[x][y] || label[x][y]) continue;
          label[x][y] = components;
          stack.push_back({x, y});
        }
      }
    }
  return components;
}

bool criterion_4() {
  const double t0 = now_s();
  const ParsedConfig cfg = load_config(g_configs + "/phase_sweep_3mode.toml");
  const auto grid_w = linspace(two_pi * 2e9, two_pi * 9e9, 200);
  const auto grid_t = linspace(0.0, two_pi * 99.0 / 100.0, 100);
  const auto sweep = sweep_2d(cfg.system, "qubit.omega_q", grid_w, "couplings.theta[0][1]",
                              grid_t, {Method::Exact, Method::AppC2}, 2);

  std::vector<std::vector<bool>> mask(200, std::vector<bool>(100, false));
  double theta_dependence = 0.0;
  for (int i = 0; i < 200; ++i) {
    double c2min = 1e300, c2max = 0.0;
    for (int j = 0; j < 100; ++j) {
      const auto& r = sweep.records[static_cast<size_t>(i) * 100 + j];
      c2min = std::min(c2min, r.gamma_appc2);
      c2max = std::max(c2max, r.gamma_appc2);
      if (r.a >= two_pi * 4e9 && r.a <= two_pi * 8e9 && r.t1_exact > 1e-3)
        mask[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
    }
    theta_dependence = std::max(theta_dependence, c2max / c2min - 1.0);
  }
  const int comps = count_components(mask);
  const double dt = now_s() - t0;
  const bool pass = comps >= 2 && theta_dependence < 1e-9 && dt < 300.0;
  std::printf("%s criterion 4: 200x100 frequency-phase map yields %d disjoint T1 > 1 ms "
              "regions in the 4-8 GHz band (>= 2), second-order theta spread %.2e < 1e-9, "
              "%.2f s < 300 s\n",
              pass ? "PASS" : "FAIL", comps, theta_dependence, dt);
  return pass;
}

struct DrivenEval {
  DrivenCurve curve;
  ExponentFit fit;
};

DrivenEval run_driven(const std::string& file, double nbar_max, int points) {
  const ParsedConfig cfg = load_config(g_configs + "/" + file);
  const ValidatedSystem system{cfg.system};
  const NormalModeBasis basis = diagonalize_modes(system, cfg.drive);
  DrivenEval out;
  out.curve =
      normalized_purcell_curve(system, basis, cfg.drive, linspace(0.0, nbar_max, points));
  out.fit = fit_suppression_exponent(out.curve);
  return out;
}

bool criterion_5() {
  const double t0 = now_s();
  const DrivenEval single = run_driven("driven_single.toml", 64.0, 33);
  const DrivenEval multi = run_driven("driven_multi.toml", 64.0, 33);
  bool interference_monotone = true;
  for (size_t i = 1; i < multi.curve.points.size(); ++i)
    if (multi.curve.points[i].interference_part >=
        multi.curve.points[i - 1].interference_part)
      interference_monotone = false;
  const double a_s = single.fit.alpha;
  const double a_m = multi.fit.alpha;
  const double dt = now_s() - t0;
  const bool pass = a_s >= 0.7 && a_s <= 1.5 && a_m >= 1.5 && a_m <= 3.0 &&
                    a_m - a_s >= 0.5 && interference_monotone && dt < 10.0;
  std::printf("%s criterion 5: suppression exponents alpha_single=%.3f in [0.7,1.5], "
              "alpha_multi=%.3f in [1.5,3.0], gap %.3f >= 0.5, interference part "
              "monotonically more negative: %s, %.2f s < 10 s\n",
              pass ? "PASS" : "FAIL", a_s, a_m, a_m - a_s,
              interference_monotone ? "yes" : "no", dt);
  return pass;
}

bool criterion_6() {
  // n <= 0.2 n_crit with the n_crit dial at 2.0.
  const DrivenEval single = run_driven("driven_single.toml", 0.4, 9);
  double worst = 0.0;
  for (const auto& p : single.curve.points)
    worst = std::max(worst,
                     std::abs(p.ratio_exact - p.ratio_analytic) / p.ratio_analytic);
  const bool pass = worst <= 0.15;
  std::printf("%s criterion 6: exact vs closed-form normalized curves agree to %.4f "
              "(<= 0.15) for n <= 0.2 n_crit\n",
              pass ? "PASS" : "FAIL", worst);
  return pass;
}

bool criterion_7() {
  // Symmetric case collapses to sigma^2 / 8 exactly.
  const double sigma2 = 9e-10;
  const auto sym = variance_propagation({100e-6, sigma2}, {100e-6, sigma2});
  const double sym_err = std::abs(sym.total.var_t - sigma2 / 8.0) / (sigma2 / 8.0);

  double worst_mc = 0.0;
  for (double rel : {0.01, 0.05}) {
    const DecayChannelStats a{80e-6, std::pow(rel * 80e-6, 2)};
    const DecayChannelStats b{120e-6, std::pow(rel * 120e-6, 2)};
    const auto analytic = variance_propagation(a, b).total;
    const auto mc = monte_carlo_variance(a, b, 1000000, 20240808);
    worst_mc = std::max(worst_mc, std::abs(mc.var_t - analytic.var_t) / analytic.var_t);
  }
  const bool pass = sym_err <= 1e-14 && worst_mc <= 0.05;
  std::printf("%s criterion 7: symmetric variance = sigma^2/8 (deviation %.1e <= 1e-14); "
              "propagation vs 1e6-sample Monte Carlo within %.4f (<= 0.05)\n",
              pass ? "PASS" : "FAIL", sym_err, worst_mc);
  return pass;
}

bool criterion_8() {
  RingSpec ring;
  ring.radius = 1e-3;
  ring.v_eff = 1.2e8;
  ring.delta_asym = 1.0;

  // Exactly linear ladder.
  const auto ladder = ring_resonances(ring, 12);
  const double step = ring.v_eff / ring.radius;
  bool linear = true;
  for (size_t n = 1; n < ladder.size(); ++n)
    if (ladder[n] - ladder[n - 1] != step) linear = false;

  // 1-degree grid: degenerate-pair extrema at 45/135/225/315 degrees and
  // zeros of the distinct-order pattern wherever a cos factor vanishes.
  bool extrema_ok = true, zeros_ok = true;
  double pair_max = 0.0;
  std::vector<int> argmax;
  for (int deg = 0; deg < 360; ++deg) {
    ring.theta_asym = deg * pi / 180.0;
    const double v = std::abs(degenerate_pair_coupling(1, ring));
    if (v > pair_max + 1e-15) {
      pair_max = v;
      argmax.assign(1, deg);
    } else if (std::abs(v - pair_max) <= 1e-15) {
      argmax.push_back(deg);
    }
  }
  if (argmax != std::vector<int>{45, 135, 225, 315}) extrema_ok = false;
  if (std::abs(pair_max - 0.5) > 1e-12) extrema_ok = false;

  for (int deg = 0; deg < 360; ++deg) {
    ring.theta_asym = deg * pi / 180.0;
    // (n, m) = (1, 2): cos factors vanish at 90/270 and 45/135/225/315.
    const bool factor_zero = deg == 90 || deg == 270 || deg == 45 || deg == 135 ||
                             deg == 225 || deg == 315;
    const double v = std::abs(perturbation_coupling(1, 2, ring));
    if (factor_zero && v > 1e-12) zeros_ok = false;
    if (!factor_zero && v < 1e-12) zeros_ok = false;
  }
  const bool pass = linear && extrema_ok && zeros_ok;
  std::printf("%s criterion 8: resonance ladder exactly linear: %s; degenerate-pair maxima "
              "at 45/135/225/315 deg: %s; coupling zeros where a cos factor vanishes: %s\n",
              pass ? "PASS" : "FAIL", linear ? "yes" : "no", extrema_ok ? "yes" : "no",
              zeros_ok ? "yes" : "no");
  return pass;
}

bool criterion_9() {
  const ParsedConfig stack = load_config(g_configs + "/multimode_t1_stack.toml");
  const auto grid = linspace(two_pi * 2e9, two_pi * 9e9, 500);
  const std::string a =
      sweep_1d(stack.system, "qubit.omega_q", grid, {Method::Exact, Method::Eq11}, 1).to_csv();
  const std::string b =
      sweep_1d(stack.system, "qubit.omega_q", grid, {Method::Exact, Method::Eq11}, 4).to_csv();

  const ParsedConfig phase = load_config(g_configs + "/phase_sweep_3mode.toml");
  const auto grid_w = linspace(two_pi * 4e9, two_pi * 8e9, 40);
  const auto grid_t = linspace(0.0, two_pi * 0.99, 25);
  const std::string c = sweep_2d(phase.system, "qubit.omega_q", grid_w,
                                 "couplings.theta[0][1]", grid_t, {Method::Exact}, 3)
                            .to_csv();
  const std::string d = sweep_2d(phase.system, "qubit.omega_q", grid_w,
                                 "couplings.theta[0][1]", grid_t, {Method::Exact}, 2)
                            .to_csv();

  auto driven_csv = [&]() {
    const DrivenEval ev = run_driven("driven_multi.toml", 64.0, 17);
    CsvWriter csv;
    csv.header({"n_bar", "ratio_exact", "ratio_analytic"});
    for (const auto& p : ev.curve.points) {
      csv.begin_row();
      csv.field(p.n_bar);
      csv.field(p.ratio_exact);
      csv.field(p.ratio_analytic);
      csv.end_row();
    }
    return csv.buffer;
  };
  const std::string e = driven_csv();
  const std::string f = driven_csv();

  const auto mc1 = monte_carlo_variance({80e-6, 1.6e-11}, {120e-6, 0.9e-11}, 200000, 42);
  const auto mc2 = monte_carlo_variance({80e-6, 1.6e-11}, {120e-6, 0.9e-11}, 200000, 42);

  const bool pass = a == b && c == d && e == f && mc1.mean_t == mc2.mean_t &&
                    mc1.var_t == mc2.var_t && !a.empty() && !c.empty();
  std::printf("%s criterion 9: byte-identical repeated outputs (1-D sweep across thread "
              "counts: %s; 2-D sweep: %s; driven curve: %s; Monte Carlo: %s)\n",
              pass ? "PASS" : "FAIL", a == b ? "yes" : "no", c == d ? "yes" : "no",
              e == f ? "yes" : "no", mc1.var_t == mc2.var_t ? "yes" : "no");
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: purcell_acceptance <criterion 1..9> [configs_dir]\n");
    return 2;
  }
  if (argc > 2) g_configs = argv[2];
  const int criterion = std::atoi(argv[1]);
  bool pass = false;
  switch (criterion) {
    case 1: pass = criterion_1(); break;
    case 2: pass = criterion_2(); break;
    case 3: pass = criterion_3(); break;
    case 4: pass = criterion_4(); break;
    case 5: pass = criterion_5(); break;
    case 6: pass = criterion_6(); break;
    case 7: pass = criterion_7(); break;
    case 8: pass = criterion_8(); break;
    case 9: pass = criterion_9(); break;
    default:
      std::fprintf(stderr, "unknown criterion %d\n", criterion);
      return 2;
  }
  return pass ? 0 : 1;
}
