#include "purcell/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "purcell/eigensolver.hpp"
#include "purcell/errors.hpp"
#include "purcell/format.hpp"
#include "purcell/parallel.hpp"
#include "purcell/perturbative.hpp"
#include "purcell/rng.hpp"

namespace purcell {

std::string method_name(Method m) {
  switch (m) {
    case Method::Exact: return "exact";
    case Method::Eq11: return "eq11";
    case Method::AppC: return "appC";
    case Method::AppC2: return "appC2";
    case Method::AppD: return "appD";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  if (name == "exact") return Method::Exact;
  if (name == "eq11") return Method::Eq11;
  if (name == "appC") return Method::AppC;
  if (name == "appC2") return Method::AppC2;
  if (name == "appD") return Method::AppD;
  throw ConfigError("unknown method '" + name + "' (expected exact, eq11, appC, appC2, appD)");
}

namespace {

int parse_index(const std::string& path, size_t& pos, const std::string& what, int limit) {
  if (pos >= path.size() || path[pos] != '[')
    throw ConfigError("parameter path '" + path + "': expected '[' for " + what);
  ++pos;
  size_t end = path.find(']', pos);
  if (end == std::string::npos)
    throw ConfigError("parameter path '" + path + "': missing ']'");
  int idx = 0;
  try {
    idx = std::stoi(path.substr(pos, end - pos));
  } catch (const std::exception&) {
    throw ConfigError("parameter path '" + path + "': malformed index");
  }
  if (idx < 0 || idx >= limit)
    throw ConfigError("parameter path '" + path + "': " + what + " index " +
                      std::to_string(idx) + " out of range [0, " + std::to_string(limit) + ")");
  pos = end + 1;
  return idx;
}

}  // namespace

struct ParamPathAccess {
  static ParamPath make(const std::string& text) {
    ParamPath p;
    p.text = text;
    return p;
  }
};

ParamPath ParamPath::parse(const std::string& path, const SystemSpec& reference) {
  const int m = reference.mode_count();
  ParamPath out;
  out.text = path;

  if (path == "qubit.omega_q") {
    out.kind_ = Kind::QubitOmega;
    return out;
  }
  if (path == "qubit.alpha" || path == "qubit.anharmonicity") {
    out.kind_ = Kind::QubitAlpha;
    return out;
  }
  if (path.rfind("modes[", 0) == 0) {
    size_t pos = 5;
    out.kind_ = Kind::ModeField;
    out.index_a_ = parse_index(path, pos, "mode", m);
    if (pos >= path.size() || path[pos] != '.')
      throw ConfigError("parameter path '" + path + "': expected '.field' after mode index");
    const std::string field = path.substr(pos + 1);
    static const std::vector<std::string> fields = {"omega", "kappa", "g", "phi", "epsilon"};
    auto it = std::find(fields.begin(), fields.end(), field);
    if (it == fields.end())
      throw ConfigError("parameter path '" + path + "': unknown mode field '" + field +
                        "' (omega, kappa, g, phi, epsilon)");
    out.mode_field_ = static_cast<int>(it - fields.begin());
    out.phase_ = field == "phi";
    return out;
  }
  if (path.rfind("couplings.J", 0) == 0) {
    size_t pos = 11;
    out.kind_ = Kind::CouplingJ;
    out.index_a_ = parse_index(path, pos, "row", m);
    out.index_b_ = parse_index(path, pos, "column", m);
    if (out.index_a_ == out.index_b_)
      throw ConfigError("parameter path '" + path + "': diagonal J entries are fixed at zero");
    return out;
  }
  if (path.rfind("couplings.theta", 0) == 0) {
    size_t pos = 15;
    out.kind_ = Kind::CouplingTheta;
    out.phase_ = true;
    out.index_a_ = parse_index(path, pos, "row", m);
    out.index_b_ = parse_index(path, pos, "column", m);
    if (out.index_a_ == out.index_b_)
      throw ConfigError("parameter path '" + path + "': diagonal theta entries are fixed at zero");
    return out;
  }
  throw ConfigError("unknown parameter path '" + path +
                    "' (qubit.omega_q, qubit.alpha, modes[i].{omega,kappa,g,phi,epsilon}, "
                    "couplings.J[i][j], couplings.theta[i][j])");
}

void ParamPath::apply(SystemSpec& spec, double value) const {
  switch (kind_) {
    case Kind::QubitOmega:
      spec.qubit.omega_q = value;
      return;
    case Kind::QubitAlpha:
      spec.qubit.anharmonicity = value;
      return;
    case Kind::ModeField: {
      ModeSpec& mode = spec.modes[static_cast<size_t>(index_a_)];
      switch (mode_field_) {
        case 0: mode.omega = value; return;
        case 1: mode.kappa = value; return;
        case 2: mode.g = value; return;
        case 3: mode.phi = value; return;
        case 4: mode.epsilon = value; return;
      }
      return;
    }
    case Kind::CouplingJ:
      spec.couplings.J(index_a_, index_b_) = value;
      spec.couplings.J(index_b_, index_a_) = value;
      return;
    case Kind::CouplingTheta:
      spec.couplings.theta(index_a_, index_b_) = value;
      spec.couplings.theta(index_b_, index_a_) = -value;
      return;
  }
}

std::vector<double> linspace(double from, double to, int points) {
  if (points < 1) throw ConfigError("grid needs at least one point");
  std::vector<double> grid(static_cast<size_t>(points));
  if (points == 1) {
    grid[0] = from;
    return grid;
  }
  for (int i = 0; i < points; ++i)
    grid[static_cast<size_t>(i)] = from + (to - from) * i / (points - 1);
  return grid;
}

namespace {

const double kNan = std::numeric_limits<double>::quiet_NaN();

void evaluate_point(const SystemSpec& spec, const std::set<Method>& methods,
                    SweepRecord& record) {
  record.gamma_exact = kNan;
  record.gamma_eq11 = kNan;
  record.gamma_appc = kNan;
  record.gamma_appc2 = kNan;
  record.gamma_appd = kNan;
  record.t1_exact = kNan;
  record.t1_eq11 = kNan;
  record.overlap = kNan;

  ValidationReport report = validate_system(spec);
  if (!report.ok()) {
    record.diagnostics = report.errors.front();
    return;
  }
  const ValidatedSystem system{spec};

  std::string diag;
  auto note = [&](const std::string& s) {
    if (!diag.empty()) diag += "; ";
    diag += s;
  };

  if (methods.count(Method::Exact)) {
    try {
      const QubitBranch branch = purcell_rate_exact(system);
      record.gamma_exact = branch.gamma_e;
      record.t1_exact = branch.t1;
      record.overlap = branch.overlap;
      for (const auto& d : branch.diagnostics) note(d);
    } catch (const Error& e) {
      note(e.what());
    }
  }
  try {
    if (methods.count(Method::Eq11)) {
      const DecayReport r = gamma_eff(system);
      record.gamma_eq11 = r.gamma_eff;
      record.t1_eq11 = r.gamma_eff > 0 ? 1.0 / r.gamma_eff
                                       : std::numeric_limits<double>::infinity();
    }
    if (methods.count(Method::AppC))
      record.gamma_appc = -2.0 * lambda_e_pert(system).imag();
    if (methods.count(Method::AppC2)) record.gamma_appc2 = gamma_second_order(system);
    if (methods.count(Method::AppD))
      record.gamma_appd = gamma_density_matrix(system, true).gamma_dm;
  } catch (const Error& e) {
    note(e.what());
  }
  record.diagnostics = diag;
}

}  // namespace

SweepResult sweep_1d(const SystemSpec& base, const std::string& param,
                     const std::vector<double>& grid, const std::set<Method>& methods,
                     int threads) {
  const ParamPath path = ParamPath::parse(param, base);
  SweepResult result;
  result.axis_a = {param, grid};
  result.methods = methods;
  result.records.resize(grid.size());

  parallel_for_indexed(grid.size(), threads, [&](size_t i) {
    SystemSpec spec = base;
    path.apply(spec, grid[i]);
    result.records[i].a = grid[i];
    evaluate_point(spec, methods, result.records[i]);
  });
  return result;
}

SweepResult sweep_2d(const SystemSpec& base, const std::string& param_a,
                     const std::vector<double>& grid_a, const std::string& param_b,
                     const std::vector<double>& grid_b, const std::set<Method>& methods,
                     int threads) {
  if (param_a == param_b) throw ConfigError("sweep_2d needs two distinct parameter paths");
  const ParamPath path_a = ParamPath::parse(param_a, base);
  const ParamPath path_b = ParamPath::parse(param_b, base);

  SweepResult result;
  result.axis_a = {param_a, grid_a};
  result.axis_b = SweepAxis{param_b, grid_b};
  result.methods = methods;
  result.records.resize(grid_a.size() * grid_b.size());

  parallel_for_indexed(result.records.size(), threads, [&](size_t idx) {
    const size_t ia = idx / grid_b.size();
    const size_t ib = idx % grid_b.size();
    SystemSpec spec = base;
    path_a.apply(spec, grid_a[ia]);
    path_b.apply(spec, grid_b[ib]);
    result.records[idx].a = grid_a[ia];
    result.records[idx].b = grid_b[ib];
    evaluate_point(spec, methods, result.records[idx]);
  });
  return result;
}

std::string SweepResult::to_csv() const {
  CsvWriter csv;
  std::vector<std::string> cols;
  cols.push_back(axis_a.param + "_rad_per_s_or_rad");
  if (axis_b) cols.push_back(axis_b->param + "_rad_per_s_or_rad");
  auto has = [&](Method m) { return methods.count(m) > 0; };
  if (has(Method::Exact)) {
    cols.push_back("gamma_exact_per_s");
    cols.push_back("t1_exact_s");
    cols.push_back("overlap");
  }
  if (has(Method::Eq11)) {
    cols.push_back("gamma_eq11_per_s");
    cols.push_back("t1_eq11_s");
  }
  if (has(Method::AppC)) cols.push_back("gamma_appC_per_s");
  if (has(Method::AppC2)) cols.push_back("gamma_appC2_per_s");
  if (has(Method::AppD)) cols.push_back("gamma_appD_per_s");
  cols.push_back("diagnostics");
  csv.header(cols);

  for (const auto& r : records) {
    csv.begin_row();
    csv.field(r.a);
    if (axis_b) csv.field(r.b);
    if (has(Method::Exact)) {
      csv.field(r.gamma_exact);
      csv.field(r.t1_exact);
      csv.field(r.overlap);
    }
    if (has(Method::Eq11)) {
      csv.field(r.gamma_eq11);
      csv.field(r.t1_eq11);
    }
    if (has(Method::AppC)) csv.field(r.gamma_appc);
    if (has(Method::AppC2)) csv.field(r.gamma_appc2);
    if (has(Method::AppD)) csv.field(r.gamma_appd);
    csv.field(r.diagnostics);
    csv.end_row();
  }
  return csv.buffer;
}

double combine_t1(double gamma_rad, double q_internal, double omega_q) {
  if (gamma_rad < 0 || omega_q <= 0 || !(q_internal > 0))
    throw NumericalError("combine_t1 needs gamma_rad >= 0, omega_q > 0, Q > 0");
  const double intrinsic_rate = std::isinf(q_internal) ? 0.0 : omega_q / q_internal;
  const double total = gamma_rad + intrinsic_rate;
  return total > 0 ? 1.0 / total : std::numeric_limits<double>::infinity();
}

std::vector<SweetSpot> find_sweet_spots(const SweepResult& sweep, Method method,
                                        double min_relative_prominence) {
  if (sweep.axis_b) throw ConfigError("find_sweet_spots expects a 1-D sweep");
  const auto& records = sweep.records;
  const int n = static_cast<int>(records.size());

  auto t1_of = [&](int i) -> double {
    const auto& r = records[static_cast<size_t>(i)];
    const double gamma = method == Method::Exact ? r.gamma_exact
                         : method == Method::Eq11 ? r.gamma_eq11
                         : method == Method::AppC ? r.gamma_appc
                         : method == Method::AppC2 ? r.gamma_appc2
                                                   : r.gamma_appd;
    if (std::isnan(gamma)) return kNan;
    return gamma > 0 ? 1.0 / gamma : std::numeric_limits<double>::infinity();
  };

  std::vector<SweetSpot> spots;
  for (int i = 1; i + 1 < n; ++i) {
    const double t1 = t1_of(i);
    if (std::isnan(t1) || std::isinf(t1)) {
      if (std::isinf(t1)) {
        // A perfect transmission zero is trivially a sweet spot.
        SweetSpot spot;
        spot.index = i;
        spot.position = records[static_cast<size_t>(i)].a;
        spot.t1 = t1;
        spot.width = 0.0;
        spots.push_back(spot);
      }
      continue;
    }
    // Leftmost point of a plateau counts as the peak.
    if (!(t1 > t1_of(i - 1)) || !(t1 >= t1_of(i + 1))) continue;

    // Walk outward to the valley floor on each side, stopping at a higher
    // peak (standard prominence definition).
    double left_min = t1, right_min = t1;
    for (int k = i - 1; k >= 0; --k) {
      const double v = t1_of(k);
      if (std::isnan(v)) break;
      if (v > t1) break;
      left_min = std::min(left_min, v);
    }
    for (int k = i + 1; k < n; ++k) {
      const double v = t1_of(k);
      if (std::isnan(v)) break;
      if (v > t1) break;
      right_min = std::min(right_min, v);
    }
    const double baseline = std::max(left_min, right_min);
    if (!(baseline > 0) || t1 / baseline < min_relative_prominence) continue;

    SweetSpot spot;
    spot.index = i;
    spot.position = records[static_cast<size_t>(i)].a;
    spot.t1 = t1;

    // Width at half prominence, linearly interpolated.
    const double level = baseline + 0.5 * (t1 - baseline);
    double left_x = records.front().a, right_x = records.back().a;
    for (int k = i - 1; k >= 0; --k) {
      const double v = t1_of(k);
      if (std::isnan(v) || v <= level) {
        const double v1 = std::isnan(v) ? level : v;
        const double x0 = records[static_cast<size_t>(k)].a;
        const double x1 = records[static_cast<size_t>(k) + 1].a;
        const double v2 = t1_of(k + 1);
        left_x = v2 == v1 ? x0 : x0 + (x1 - x0) * (level - v1) / (v2 - v1);
        break;
      }
    }
    for (int k = i + 1; k < n; ++k) {
      const double v = t1_of(k);
      if (std::isnan(v) || v <= level) {
        const double v1 = t1_of(k - 1);
        const double x0 = records[static_cast<size_t>(k) - 1].a;
        const double x1 = records[static_cast<size_t>(k)].a;
        const double v2 = std::isnan(v) ? level : v;
        right_x = v1 == v2 ? x1 : x0 + (x1 - x0) * (v1 - level) / (v1 - v2);
        break;
      }
    }
    spot.width = right_x - left_x;
    spots.push_back(spot);
  }
  // Deterministic ordering: ascending position (ties impossible on a grid).
  std::sort(spots.begin(), spots.end(),
            [](const SweetSpot& a, const SweetSpot& b) { return a.position < b.position; });
  return spots;
}

VariancePropagation variance_propagation(const DecayChannelStats& a,
                                         const DecayChannelStats& b) {
  if (!(a.mean_t > 0) || !(b.mean_t > 0))
    throw NumericalError("variance_propagation needs positive mean times");
  if (a.var_t < 0 || b.var_t < 0)
    throw NumericalError("variance_propagation needs nonnegative variances");

  VariancePropagation out;
  const double t_tot = 1.0 / (1.0 / a.mean_t + 1.0 / b.mean_t);
  const double t4 = t_tot * t_tot * t_tot * t_tot;
  const double var = t4 * (a.var_t / std::pow(a.mean_t, 4) + b.var_t / std::pow(b.mean_t, 4));
  out.total = {t_tot, var};

  auto check = [&](const DecayChannelStats& c, const char* name) {
    const double ratio = std::sqrt(c.var_t) / c.mean_t;
    if (ratio > 0.3)
      out.warnings.push_back(std::string(name) + ": fluctuation ratio " +
                             format_double(ratio, 3) +
                             " exceeds 0.3; first-order propagation degrades");
  };
  check(a, "channel a");
  check(b, "channel b");
  return out;
}

DecayChannelStats monte_carlo_variance(const DecayChannelStats& a, const DecayChannelStats& b,
                                       int64_t samples, uint64_t seed) {
  if (samples < 10000) throw NumericalError("monte_carlo_variance needs >= 1e4 samples");
  const CounterRng rng(seed);
  const double sa = std::sqrt(a.var_t);
  const double sb = std::sqrt(b.var_t);

  auto draw = [&](double mean, double sigma, uint64_t counter, uint64_t stream) {
    // Truncated below at 10% of the mean so rates stay positive; the
    // retry chain is part of the counter so chunking cannot reorder it.
    for (int retry = 0; retry < 64; ++retry) {
      const double t = mean + sigma * rng.normal(counter, stream + 16 * retry);
      if (t > 0.1 * mean) return t;
    }
    return 0.1 * mean;
  };

  // Single-pass Welford in index order; with counter-based draws the
  // result is reproducible for a given (samples, seed) pair.
  double mean = 0.0;
  double m2 = 0.0;
  int64_t count = 0;
  for (int64_t i = 0; i < samples; ++i) {
    const double ta = sa == 0.0 ? a.mean_t : draw(a.mean_t, sa, static_cast<uint64_t>(i), 0);
    const double tb = sb == 0.0 ? b.mean_t : draw(b.mean_t, sb, static_cast<uint64_t>(i), 1);
    const double t_tot = 1.0 / (1.0 / ta + 1.0 / tb);
    ++count;
    const double delta = t_tot - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (t_tot - mean);
  }
  return {mean, m2 / static_cast<double>(count - 1)};
}

}  // namespace purcell
