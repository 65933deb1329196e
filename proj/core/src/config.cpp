#include "purcell/config.hpp"

#include "purcell/errors.hpp"
#include "purcell/format.hpp"
#include "purcell/units.hpp"

namespace purcell {

namespace {

double quantity_field(const toml::Value& table, const std::string& key, Dimension dim,
                      double fallback, bool required = false) {
  auto v = toml::find(table, key);
  if (!v) {
    if (required) throw ConfigError("missing required key '" + key + "'", table.line());
    return fallback;
  }
  if (v->is_number() && dim != Dimension::Dimensionless)
    throw ConfigError("'" + key + "': bare number; every physical field needs a unit tag "
                      "(write e.g. \"10 GHz\")",
                      v->line());
  if (dim == Dimension::Dimensionless && v->is_number()) return v->as_number();
  return parse_quantity(v->as_string(), dim).value;
}

MatrixXd matrix_field(const toml::Value& couplings, const std::string& key, int m, Dimension dim) {
  auto v = toml::find(couplings, key);
  if (!v) return MatrixXd::Zero(m, m);
  const auto& rows = v->as_array();
  const int n = static_cast<int>(rows.size());
  if (n != m)
    throw ConfigError("couplings." + key + " must be " + std::to_string(m) + "x" +
                          std::to_string(m) + " (one row per mode)",
                      v->line());
  MatrixXd out(m, m);
  for (int i = 0; i < m; ++i) {
    const auto& row = rows[static_cast<size_t>(i)]->as_array();
    if (static_cast<int>(row.size()) != m)
      throw ConfigError("couplings." + key + " row " + std::to_string(i) + " has " +
                            std::to_string(row.size()) + " entries, expected " +
                            std::to_string(m),
                        rows[static_cast<size_t>(i)]->line());
    for (int j = 0; j < m; ++j) {
      const auto& cell = *row[static_cast<size_t>(j)];
      if (cell.is_number() && cell.as_number() == 0.0) {
        out(i, j) = 0.0;  // bare 0 allowed: no unit ambiguity
      } else {
        out(i, j) = parse_quantity(cell.as_string(), dim).value;
      }
    }
  }
  return out;
}

}  // namespace

ParsedConfig to_angular(const toml::Value& document) {
  ParsedConfig out;

  const toml::Value& qubit = toml::require(document, "qubit");
  out.system.qubit.omega_q =
      quantity_field(qubit, "frequency", Dimension::AngularFrequency, 0.0, true);
  out.system.qubit.anharmonicity =
      quantity_field(qubit, "anharmonicity", Dimension::AngularFrequency, 0.0);
  out.system.qubit.drive_amplitude =
      quantity_field(qubit, "drive_amplitude", Dimension::AngularFrequency, 0.0);
  out.system.qubit.drive_frequency =
      quantity_field(qubit, "drive_frequency", Dimension::AngularFrequency, 0.0);

  auto modes = toml::find(document, "modes");
  if (!modes) throw ConfigError("missing [[modes]] sections");
  const auto& mode_list = modes->as_array();
  for (const auto& entry : mode_list) {
    ModeSpec mode;
    mode.omega = quantity_field(*entry, "frequency", Dimension::AngularFrequency, 0.0, true);
    mode.kappa = quantity_field(*entry, "kappa", Dimension::AngularFrequency, 0.0, true);
    mode.g = quantity_field(*entry, "g", Dimension::AngularFrequency, 0.0, true);
    mode.phi = quantity_field(*entry, "phi", Dimension::Phase, 0.0);
    mode.epsilon = quantity_field(*entry, "epsilon", Dimension::AngularFrequency, 0.0);
    mode.omega_p = quantity_field(*entry, "drive_frequency", Dimension::AngularFrequency, 0.0);
    if (auto label = toml::find(*entry, "label")) mode.label = label->as_string();
    out.system.modes.push_back(std::move(mode));
  }
  const int m = out.system.mode_count();

  if (auto couplings = toml::find(document, "couplings")) {
    out.system.couplings.J = matrix_field(*couplings, "J", m, Dimension::AngularFrequency);
    out.system.couplings.theta = matrix_field(*couplings, "theta", m, Dimension::Phase);
  } else {
    out.system.couplings = CouplingGraph::none(m);
  }

  out.drive.epsilon.resize(m);
  for (int i = 0; i < m; ++i) out.drive.epsilon[i] = out.system.modes[static_cast<size_t>(i)].epsilon;

  if (auto drive = toml::find(document, "drive")) {
    out.drive.omega_p = quantity_field(*drive, "omega_p", Dimension::AngularFrequency, 0.0);
    if (auto dom = toml::find(*drive, "dominant_mode"))
      out.drive.dominant_mode = static_cast<int>(dom->as_integer());
    if (auto nc = toml::find(*drive, "n_crit")) out.drive.n_crit_override = nc->as_number();
    if (auto ck = toml::find(*drive, "cross_kerr_stark"))
      out.drive.cross_kerr_stark = ck->as_bool();
    if (out.drive.dominant_mode >= m)
      throw ConfigError("drive.dominant_mode out of range", drive->line());
  }

  if (auto sweep = toml::find(document, "sweep")) {
    SweepSection s;
    s.param = toml::require(*sweep, "param").as_string();
    // Sweep bounds share the swept parameter's dimension; phases use rad/deg.
    const Dimension dim = s.param.find("theta") != std::string::npos ||
                                  s.param.find("phi") != std::string::npos
                              ? Dimension::Phase
                              : Dimension::AngularFrequency;
    s.from = quantity_field(*sweep, "from", dim, 0.0, true);
    s.to = quantity_field(*sweep, "to", dim, 0.0, true);
    s.points = static_cast<int>(toml::require(*sweep, "points").as_integer());
    if (auto p2 = toml::find(*sweep, "param2")) {
      s.param2 = p2->as_string();
      const Dimension dim2 = s.param2->find("theta") != std::string::npos ||
                                     s.param2->find("phi") != std::string::npos
                                 ? Dimension::Phase
                                 : Dimension::AngularFrequency;
      s.from2 = quantity_field(*sweep, "from2", dim2, 0.0, true);
      s.to2 = quantity_field(*sweep, "to2", dim2, 0.0, true);
      s.points2 = static_cast<int>(toml::require(*sweep, "points2").as_integer());
    }
    if (auto methods = toml::find(*sweep, "methods")) {
      for (const auto& v : methods->as_array()) s.methods.push_back(v->as_string());
    }
    out.sweep = std::move(s);
  }

  return out;
}

ParsedConfig parse_config_text(const std::string& text) { return to_angular(toml::parse(text)); }

ParsedConfig load_config(const std::string& path) {
  return to_angular(toml::parse_file(path));
}

std::string render_config(const SystemSpec& system, const DriveSpec* drive) {
  std::string out;
  auto line = [&](const std::string& s) { out += s + "\n"; };

  line("[qubit]");
  line("frequency = \"" + render_angular(system.qubit.omega_q, "GHz") + "\"");
  line("anharmonicity = \"" + render_angular(system.qubit.anharmonicity, "GHz") + "\"");
  line("drive_amplitude = \"" + render_angular(system.qubit.drive_amplitude, "GHz") + "\"");
  line("drive_frequency = \"" + render_angular(system.qubit.drive_frequency, "GHz") + "\"");

  for (const auto& mode : system.modes) {
    line("");
    line("[[modes]]");
    if (!mode.label.empty()) line("label = \"" + mode.label + "\"");
    line("frequency = \"" + render_angular(mode.omega, "GHz") + "\"");
    line("kappa = \"" + render_angular(mode.kappa, "MHz") + "\"");
    line("g = \"" + render_angular(mode.g, "MHz") + "\"");
    line("phi = \"" + render_phase(mode.phi) + "\"");
    line("epsilon = \"" + render_angular(mode.epsilon, "MHz") + "\"");
    line("drive_frequency = \"" + render_angular(mode.omega_p, "GHz") + "\"");
  }

  const int m = system.mode_count();
  line("");
  line("[couplings]");
  auto matrix = [&](const char* key, const MatrixXd& mat, bool phase) {
    std::string s = std::string(key) + " = [";
    for (int i = 0; i < m; ++i) {
      s += i ? ",\n  [" : "\n  [";
      for (int j = 0; j < m; ++j) {
        if (j) s += ", ";
        if (mat(i, j) == 0.0) {
          s += "0";
        } else {
          s += "\"" + (phase ? render_phase(mat(i, j)) : render_angular(mat(i, j), "MHz")) + "\"";
        }
      }
      s += "]";
    }
    s += "\n]";
    line(s);
  };
  matrix("J", system.couplings.J, false);
  matrix("theta", system.couplings.theta, true);

  if (drive) {
    line("");
    line("[drive]");
    line("omega_p = \"" + render_angular(drive->omega_p, "GHz") + "\"");
    if (drive->dominant_mode >= 0)
      line("dominant_mode = " + std::to_string(drive->dominant_mode));
    if (drive->n_crit_override)
      line("n_crit = " + format_double(*drive->n_crit_override, 15));
    if (drive->cross_kerr_stark) line("cross_kerr_stark = true");
  }
  return out;
}

}  // namespace purcell
