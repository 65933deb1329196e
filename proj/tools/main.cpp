#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>

#include "purcell/analysis.hpp"
#include "purcell/config.hpp"
#include "purcell/driven.hpp"
#include "purcell/eigensolver.hpp"
#include "purcell/errors.hpp"
#include "purcell/format.hpp"
#include "purcell/geometry.hpp"
#include "purcell/heff.hpp"
#include "purcell/parallel.hpp"
#include "purcell/perturbative.hpp"
#include "purcell/units.hpp"

using json = nlohmann::ordered_json;
using namespace purcell;

namespace {

// Exit codes: 0 success, 1 validation/config error, 2 numerical failure,
// 3 I/O error.
enum ExitCode { kOk = 0, kValidation = 1, kNumerical = 2, kIo = 3 };

std::string g_error_format = "json";

int fail(const char* kind, const std::string& what, int code) {
  if (g_error_format == "json") {
    std::cerr << json{{"error", {{"kind", kind}, {"message", what}, {"exit_code", code}}}}
                     .dump(2)
              << "\n";
  } else {
    std::cerr << "error: " << what << "\n";
  }
  return code;
}

struct GlobalOptions {
  std::string format = "json";
  std::string out;
  int threads = 0;
};

void emit(const GlobalOptions& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) throw IoError("cannot open output file '" + opt.out + "'");
  file << text;
}

json complex_json(Complex v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

json branch_json(const QubitBranch& branch) {
  return json{{"lambda_e", complex_json(branch.lambda_e)},
              {"gamma_e_per_s", branch.gamma_e},
              {"t1_s", branch.t1},
              {"overlap", branch.overlap},
              {"diagnostics", branch.diagnostics}};
}

json report_json(const DecayReport& report) {
  return json{{"gamma_complex", complex_json(report.gamma_complex)},
              {"gamma_eff_per_s", report.gamma_eff},
              {"lambda_e_pert", complex_json(report.lambda_e_pert)},
              {"gamma_dm_per_s", report.gamma_dm},
              {"direct_part_per_s", report.direct_part},
              {"interference_part_per_s", report.interference_part},
              {"three_mode_part_per_s", report.three_mode_part},
              {"warnings", report.warnings}};
}

double parse_cli_quantity(const std::string& text, Dimension dim) {
  return parse_quantity(text, dim).value;
}

Dimension path_dimension(const std::string& path) {
  return (path.find("theta") != std::string::npos || path.find("phi") != std::string::npos)
             ? Dimension::Phase
             : Dimension::AngularFrequency;
}

std::set<Method> parse_methods(const std::string& csv) {
  std::set<Method> methods;
  size_t pos = 0;
  while (pos <= csv.size()) {
    const size_t comma = csv.find(',', pos);
    const std::string name =
        csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!name.empty()) methods.insert(method_from_name(name));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (methods.empty()) throw ConfigError("no sweep methods selected");
  return methods;
}

std::string matrix_csv(const std::vector<std::string>& labels, const MatrixXd& m,
                       const std::string& corner) {
  CsvWriter csv;
  std::vector<std::string> header = {corner};
  header.insert(header.end(), labels.begin(), labels.end());
  csv.header(header);
  for (int i = 0; i < m.rows(); ++i) {
    csv.begin_row();
    csv.field(labels[static_cast<size_t>(i)]);
    for (int j = 0; j < m.cols(); ++j) csv.field(m(i, j));
    csv.end_row();
  }
  return csv.buffer;
}

json matrix_json(const MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

int run(int argc, char** argv) {
  CLI::App app{"Multi-mode radiative-decay calculator: exact non-Hermitian\n"
               "eigendecomposition cross-validated against closed-form interference\n"
               "formulas, with drive, sweep and design-helper tooling."};
  app.require_subcommand(1);

  GlobalOptions opt;
  std::string config_path;

  auto add_common = [&](CLI::App* cmd, bool needs_config = true) {
    if (needs_config)
      cmd->add_option("--config", config_path, "TOML config file")->required();
    cmd->add_option("--format", opt.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", opt.out, "Write output to a file instead of stdout");
    cmd->add_option("--threads", opt.threads, "Worker pool cap for sweeps");
  };

  auto* cmd_validate = app.add_subcommand("validate", "Check a config and summarize the system");
  add_common(cmd_validate);

  double stark = 0.0;
  auto* cmd_eig = app.add_subcommand("eig", "Exact qubit-branch decay rate");
  add_common(cmd_eig);
  cmd_eig->add_option("--stark", stark, "Qubit Stark shift in rad/s");

  auto* cmd_dump = app.add_subcommand("dump-heff", "Dump the effective Hamiltonian as JSON");
  add_common(cmd_dump);
  cmd_dump->add_option("--stark", stark, "Qubit Stark shift in rad/s");

  std::string method_name_arg = "eq11";
  bool three_mode = false;
  auto* cmd_pert = app.add_subcommand("pert", "Closed-form perturbative decay report");
  add_common(cmd_pert);
  cmd_pert->add_option("--method", method_name_arg, "eq11, appC, appC2 or appD")
      ->check(CLI::IsMember({"eq11", "appC", "appC2", "appD"}));
  cmd_pert->add_flag("--three-mode", three_mode, "Include the O(J^2) three-mode term");

  auto* cmd_compare = app.add_subcommand("compare", "All decay methods side by side");
  add_common(cmd_compare);

  std::string sweep_param, sweep_from, sweep_to, sweep_methods;
  std::string sweep_param2, sweep_from2, sweep_to2;
  int sweep_points = 0, sweep_points2 = 0;
  auto* cmd_sweep = app.add_subcommand("sweep", "1-D or 2-D parameter sweep");
  add_common(cmd_sweep);
  cmd_sweep->add_option("--param", sweep_param, "Parameter path, e.g. qubit.omega_q");
  cmd_sweep->add_option("--from", sweep_from, "Start, quantity string like \"2 GHz\"");
  cmd_sweep->add_option("--to", sweep_to, "End, quantity string");
  cmd_sweep->add_option("--points", sweep_points, "Grid size");
  cmd_sweep->add_option("--param2", sweep_param2, "Second axis parameter path");
  cmd_sweep->add_option("--from2", sweep_from2, "Second axis start");
  cmd_sweep->add_option("--to2", sweep_to2, "Second axis end");
  cmd_sweep->add_option("--points2", sweep_points2, "Second axis grid size");
  cmd_sweep->add_option("--methods", sweep_methods,
                        "Comma list of exact,eq11,appC,appC2,appD");

  double nbar_max = 0.0;
  int driven_points = 0;
  auto* cmd_driven = app.add_subcommand("driven", "Drive-dependent normalized decay curve");
  add_common(cmd_driven);
  cmd_driven->add_option("--nbar-max", nbar_max, "Largest imposed photon number")->required();
  cmd_driven->add_option("--points", driven_points, "Grid size")->required();

  double ring_radius = 0.0, ring_veff = 0.0, ring_theta_j = 0.0, ring_theta_a = 0.0,
         ring_delta = 1.0;
  int ring_nmax = 0;
  bool ring_bite = false;
  auto* cmd_ring = app.add_subcommand("ring", "Ring-resonator ladder and coupling factors");
  cmd_ring->add_option("--radius", ring_radius, "Ring radius in m")->required();
  cmd_ring->add_option("--veff", ring_veff, "Effective phase velocity in m/s")->required();
  cmd_ring->add_option("--theta-j", ring_theta_j, "Junction angle in degrees");
  cmd_ring->add_option("--theta-a", ring_theta_a, "Asymmetry angle in degrees");
  cmd_ring->add_option("--delta-a", ring_delta, "Perturbation magnitude (dimensionless)");
  cmd_ring->add_flag("--bite", ring_bite, "Inward cut (flips the coupling sign)");
  cmd_ring->add_option("--nmax", ring_nmax, "Highest mode order")->required();
  add_common(cmd_ring, /*needs_config=*/false);

  std::string cap_sym, cap_asym;
  auto* cmd_capdiff = app.add_subcommand("capdiff", "Compare capacitance matrices");
  cmd_capdiff->add_option("--sym", cap_sym, "Symmetric-geometry CSV")->required();
  cmd_capdiff->add_option("--asym", cap_asym, "Asymmetric-geometry CSV")->required();
  add_common(cmd_capdiff, /*needs_config=*/false);

  double var_ta = 0.0, var_va = 0.0, var_tb = 0.0, var_vb = 0.0;
  int64_t var_mc = 0;
  uint64_t var_seed = 1;
  auto* cmd_variance =
      app.add_subcommand("variance", "Two-channel T1 variance propagation");
  cmd_variance->add_option("--ta", var_ta, "Mean T of channel a (s)")->required();
  cmd_variance->add_option("--va", var_va, "Variance of channel a (s^2)")->required();
  cmd_variance->add_option("--tb", var_tb, "Mean T of channel b (s)")->required();
  cmd_variance->add_option("--vb", var_vb, "Variance of channel b (s^2)")->required();
  cmd_variance->add_option("--mc", var_mc, "Also run a Monte-Carlo check with this many samples");
  cmd_variance->add_option("--seed", var_seed, "Monte-Carlo seed");
  add_common(cmd_variance, /*needs_config=*/false);

  CLI11_PARSE(app, argc, argv);
  g_error_format = opt.format;

  const int threads = opt.threads > 0 ? opt.threads : default_thread_count();

  if (cmd_validate->parsed()) {
    const ParsedConfig cfg = load_config(config_path);
    const ValidationReport report = validate_system(cfg.system);
    if (!report.ok()) {
      if (opt.format == "json") {
        std::cerr << json{{"error", "validation"}, {"issues", report.errors}}.dump(2) << "\n";
      } else {
        for (const auto& e : report.errors) std::cerr << "error: " << e << "\n";
      }
      return kValidation;
    }
    const ValidatedSystem system{cfg.system};
    json out{{"modes", system.mode_count()},
             {"omega_q_rad_per_s", system.qubit().omega_q},
             {"warnings", report.warnings}};
    json detunings = json::array();
    for (int i = 0; i < system.mode_count(); ++i) {
      detunings.push_back({{"mode", i},
                           {"label", system.modes()[static_cast<size_t>(i)].label},
                           {"delta_rad_per_s", system.detuning(i)},
                           {"delta_over_2pi_GHz", system.detuning(i) / (two_pi * 1e9)}});
    }
    out["detunings"] = detunings;
    emit(opt, out.dump(2) + "\n");
    return kOk;
  }

  if (cmd_eig->parsed()) {
    const ParsedConfig cfg = load_config(config_path);
    const QubitBranch branch = purcell_rate_exact(ValidatedSystem{cfg.system}, stark);
    emit(opt, branch_json(branch).dump(2) + "\n");
    return kOk;
  }

  if (cmd_dump->parsed()) {
    const ParsedConfig cfg = load_config(config_path);
    const EffectiveHamiltonian h = build_h_eff(ValidatedSystem{cfg.system}, stark);
    json rows = json::array();
    for (int i = 0; i < h.matrix.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < h.matrix.cols(); ++j)
        row.push_back(json::array({h.matrix(i, j).real(), h.matrix(i, j).imag()}));
      rows.push_back(row);
    }
    emit(opt,
         json{{"basis", h.basis_labels}, {"matrix_row_major_re_im", rows}}.dump(2) + "\n");
    return kOk;
  }

  if (cmd_pert->parsed()) {
    const ParsedConfig cfg = load_config(config_path);
    const ValidatedSystem system{cfg.system};
    json out;
    if (method_name_arg == "eq11") {
      out = report_json(gamma_eff(system));
      out["gamma_per_s"] = out["gamma_eff_per_s"];
    } else if (method_name_arg == "appC") {
      const Complex lambda = lambda_e_pert(system);
      out = report_json(gamma_eff(system));
      out["gamma_per_s"] = -2.0 * lambda.imag();
    } else if (method_name_arg == "appC2") {
      out["gamma_per_s"] = gamma_second_order(system);
    } else {
      const DecayReport report = gamma_density_matrix(system, three_mode);
      out = report_json(report);
      out["gamma_per_s"] = report.gamma_dm;
    }
    out["method"] = method_name_arg;
    emit(opt, out.dump(2) + "\n");
    return kOk;
  }

  if (cmd_compare->parsed()) {
    const ParsedConfig cfg = load_config(config_path);
    const ValidatedSystem system{cfg.system};
    const QubitBranch branch = purcell_rate_exact(system);
    const DecayReport report = gamma_density_matrix(system, true);
    const double appc = -2.0 * lambda_e_pert(system).imag();
    json rates{{"exact", branch.gamma_e},
               {"eq11", report.gamma_eff},
               {"appC", appc},
               {"appC2", gamma_second_order(system)},
               {"appD", report.gamma_dm}};
    json deviations;
    for (auto& [name, value] : rates.items()) {
      if (name == "exact") continue;
      deviations[name + "_vs_exact"] =
          branch.gamma_e != 0.0 ? (value.get<double>() - branch.gamma_e) / branch.gamma_e : 0.0;
    }
    json out{{"rates_per_s", rates},
             {"relative_deviation", deviations},
             {"t1_exact_s", branch.t1},
             {"overlap", branch.overlap},
             {"report", report_json(report)}};
    emit(opt, out.dump(2) + "\n");
    return kOk;
  }

  if (cmd_sweep->parsed()) {
    const ParsedConfig cfg = load_config(config_path);
    // CLI flags override [sweep] defaults from the config.
    std::string param = sweep_param;
    double from = 0.0, to = 0.0;
    int points = sweep_points;
    std::set<Method> methods;
    std::optional<std::string> param2;
    double from2 = 0.0, to2 = 0.0;
    int points2 = 0;

    if (cfg.sweep) {
      if (param.empty()) param = cfg.sweep->param;
      if (points == 0) points = cfg.sweep->points;
      if (sweep_from.empty()) from = cfg.sweep->from;
      if (sweep_to.empty()) to = cfg.sweep->to;
      for (const auto& name : cfg.sweep->methods) methods.insert(method_from_name(name));
      if (cfg.sweep->param2 && sweep_param2.empty()) {
        param2 = cfg.sweep->param2;
        from2 = cfg.sweep->from2;
        to2 = cfg.sweep->to2;
        points2 = cfg.sweep->points2;
      }
    }
    if (param.empty()) throw ConfigError("sweep needs --param (or a [sweep] section)");
    if (!sweep_from.empty()) from = parse_cli_quantity(sweep_from, path_dimension(param));
    if (!sweep_to.empty()) to = parse_cli_quantity(sweep_to, path_dimension(param));
    if (points <= 0) throw ConfigError("sweep needs --points > 0");
    if (!sweep_methods.empty()) methods = parse_methods(sweep_methods);
    if (methods.empty()) methods = {Method::Exact, Method::Eq11};
    if (!sweep_param2.empty()) {
      param2 = sweep_param2;
      from2 = parse_cli_quantity(sweep_from2, path_dimension(sweep_param2));
      to2 = parse_cli_quantity(sweep_to2, path_dimension(sweep_param2));
      points2 = sweep_points2;
    }

    SweepResult result;
    if (param2) {
      if (points2 <= 0) throw ConfigError("sweep needs --points2 > 0 for a 2-D sweep");
      result = sweep_2d(cfg.system, param, linspace(from, to, points), *param2,
                        linspace(from2, to2, points2), methods, threads);
    } else {
      result = sweep_1d(cfg.system, param, linspace(from, to, points), methods, threads);
    }
    if (opt.format == "json") {
      json out{{"param", param}, {"csv", result.to_csv()}};
      emit(opt, out.dump(2) + "\n");
    } else {
      emit(opt, result.to_csv());
    }
    return kOk;
  }

  if (cmd_driven->parsed()) {
    const ParsedConfig cfg = load_config(config_path);
    const ValidatedSystem system{cfg.system};
    const NormalModeBasis basis = diagonalize_modes(system, cfg.drive);
    if (driven_points < 2) throw ConfigError("driven needs --points >= 2");
    std::vector<double> grid = linspace(0.0, nbar_max, driven_points);
    const DrivenCurve curve =
        normalized_purcell_curve(system, basis, cfg.drive, grid, threads);

    CsvWriter csv;
    csv.header({"n_bar", "ratio_exact", "ratio_analytic", "direct_part", "interference_part"});
    for (const auto& p : curve.points) {
      csv.begin_row();
      csv.field(p.n_bar);
      csv.field(p.ratio_exact);
      csv.field(p.ratio_analytic);
      csv.field(p.direct_part);
      csv.field(p.interference_part);
      csv.end_row();
    }
    if (opt.format == "json") {
      json out{{"n_crit", curve.n_crit},
               {"chi_eff0_rad_per_s", curve.chi_eff0},
               {"gamma_exact_0_per_s", curve.gamma_exact_0},
               {"gamma_analytic_0_per_s", curve.gamma_analytic_0},
               // Predicted scaling band for the cross-interference sum in
               // (1 + n/n_crit) powers; annotation only, not asserted.
               {"interference_scaling_band", json::array({3.0, 4.0})},
               {"csv", csv.buffer}};
      emit(opt, out.dump(2) + "\n");
    } else {
      emit(opt, csv.buffer);
    }
    return kOk;
  }

  if (cmd_ring->parsed()) {
    RingSpec ring;
    ring.radius = ring_radius;
    ring.v_eff = ring_veff;
    ring.theta_junction = normalize_phase(ring_theta_j * pi / 180.0);
    ring.theta_asym = normalize_phase(ring_theta_a * pi / 180.0);
    ring.delta_asym = ring_delta;
    ring.feature_sign = ring_bite ? -1 : +1;
    const auto ladder = ring_resonances(ring, ring_nmax);

    if (opt.format == "json") {
      json modes = json::array();
      for (int n = 0; n <= ring_nmax; ++n) {
        modes.push_back({{"n", n},
                         {"omega_rad_per_s", ladder[static_cast<size_t>(n)]},
                         {"f_GHz", ladder[static_cast<size_t>(n)] / (two_pi * 1e9)},
                         {"junction_factor", junction_coupling_pattern(n, ring)},
                         {"pair_factor", degenerate_pair_coupling(n, ring)}});
      }
      json jnm = json::array();
      for (int n = 0; n <= ring_nmax; ++n) {
        json row = json::array();
        for (int m = 0; m <= ring_nmax; ++m) row.push_back(perturbation_coupling(n, m, ring));
        jnm.push_back(row);
      }
      emit(opt, json{{"modes", modes}, {"perturbation_coupling", jnm}}.dump(2) + "\n");
    } else {
      CsvWriter csv;
      csv.header({"n", "omega_rad_per_s", "f_GHz", "junction_factor", "pair_factor"});
      for (int n = 0; n <= ring_nmax; ++n) {
        csv.begin_row();
        csv.field(static_cast<double>(n));
        csv.field(ladder[static_cast<size_t>(n)]);
        csv.field(ladder[static_cast<size_t>(n)] / (two_pi * 1e9));
        csv.field(junction_coupling_pattern(n, ring));
        csv.field(degenerate_pair_coupling(n, ring));
        csv.end_row();
      }
      emit(opt, csv.buffer);
    }
    return kOk;
  }

  if (cmd_capdiff->parsed()) {
    const auto sym = read_capacitance_csv(cap_sym);
    const auto asym = read_capacitance_csv(cap_asym);
    const auto cmp = capacitance_diff(sym, asym);
    if (opt.format == "json") {
      emit(opt, json{{"labels", cmp.labels},
                     {"ratio", matrix_json(cmp.ratio)},
                     {"relative_diff", matrix_json(cmp.relative_diff)}}
                        .dump(2) +
                    "\n");
    } else {
      std::string out = "# ratio (c_asym / c_sym)\n";
      out += matrix_csv(cmp.labels, cmp.ratio, "node");
      out += "# relative difference ((c_asym - c_sym) / c_sym)\n";
      out += matrix_csv(cmp.labels, cmp.relative_diff, "node");
      emit(opt, out);
    }
    return kOk;
  }

  if (cmd_variance->parsed()) {
    const DecayChannelStats a{var_ta, var_va};
    const DecayChannelStats b{var_tb, var_vb};
    const auto propagated = variance_propagation(a, b);
    json out{{"mean_t_s", propagated.total.mean_t},
             {"var_t_s2", propagated.total.var_t},
             {"warnings", propagated.warnings}};
    if (var_mc > 0) {
      const auto mc = monte_carlo_variance(a, b, var_mc, var_seed);
      out["monte_carlo"] = {{"samples", var_mc},
                            {"seed", var_seed},
                            {"mean_t_s", mc.mean_t},
                            {"var_t_s2", mc.var_t}};
    }
    if (opt.format == "csv") {
      CsvWriter csv;
      csv.header({"mean_t_s", "var_t_s2"});
      csv.begin_row();
      csv.field(propagated.total.mean_t);
      csv.field(propagated.total.var_t);
      csv.end_row();
      emit(opt, csv.buffer);
    } else {
      emit(opt, out.dump(2) + "\n");
    }
    return kOk;
  }

  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ValidationError& e) {
    return fail("validation", e.what(), kValidation);
  } catch (const ConfigError& e) {
    return fail("config", e.what(), kValidation);
  } catch (const SingularConfigError& e) {
    return fail("singular-configuration", e.what(), kNumerical);
  } catch (const IoError& e) {
    return fail("io", e.what(), kIo);
  } catch (const NumericalError& e) {
    return fail("numerical", e.what(), kNumerical);
  } catch (const std::exception& e) {
    return fail("numerical", e.what(), kNumerical);
  }
}
