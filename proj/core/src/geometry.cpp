#include "purcell/geometry.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "purcell/errors.hpp"

namespace purcell {

double azimuthal_nu(double omega, const RingSpec& ring) {
  if (omega < 0) throw NumericalError("azimuthal_nu: omega must be >= 0");
  return omega * ring.radius / ring.v_eff;
}

std::vector<double> ring_resonances(const RingSpec& ring, int n_max) {
  if (n_max < 0) throw NumericalError("ring_resonances: n_max must be >= 0");
  const double step = ring.v_eff / ring.radius;
  std::vector<double> omega(static_cast<size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) omega[static_cast<size_t>(n)] = n * step;
  return omega;
}

double junction_coupling_pattern(int n, const RingSpec& ring) {
  if (n < 0) throw NumericalError("junction_coupling_pattern: n must be >= 0");
  return std::cos(n * ring.theta_junction);
}

double perturbation_coupling(int n, int m, const RingSpec& ring) {
  if (n < 0 || m < 0) throw NumericalError("perturbation_coupling: orders must be >= 0");
  // Grouped so that the (n, m) symmetry is exact in floating point.
  const double overlap = std::cos(n * ring.theta_asym) * std::cos(m * ring.theta_asym);
  return ring.feature_sign * ring.delta_asym * overlap;
}

double degenerate_pair_coupling(int n, const RingSpec& ring) {
  if (n < 0) throw NumericalError("degenerate_pair_coupling: n must be >= 0");
  const double rel = ring.theta_asym - ring.theta_junction;
  return ring.feature_sign * ring.delta_asym * std::cos(n * rel) * std::sin(n * rel);
}

CapacitanceMatrix read_capacitance_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open capacitance CSV '" + path + "'");

  CapacitanceMatrix out;
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty capacitance CSV '" + path + "'");

  auto split = [](const std::string& s) {
    std::vector<std::string> fields;
    std::stringstream ss(s);
    std::string field;
    while (std::getline(ss, field, ',')) {
      while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
        field.erase(field.begin());
      while (!field.empty() && (field.back() == ' ' || field.back() == '\r' ||
                                field.back() == '\t'))
        field.pop_back();
      fields.push_back(field);
    }
    return fields;
  };

  std::vector<std::string> header = split(line);
  if (header.size() < 2) throw IoError("capacitance CSV needs a label header row");
  out.labels.assign(header.begin() + 1, header.end());
  const int n = static_cast<int>(out.labels.size());
  out.values.resize(n, n);

  int row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = split(line);
    if (static_cast<int>(fields.size()) != n + 1)
      throw IoError("capacitance CSV row " + std::to_string(row + 1) + " has " +
                    std::to_string(fields.size() - 1) + " values, expected " + std::to_string(n));
    if (row >= n) throw IoError("capacitance CSV has more rows than labels");
    if (fields[0] != out.labels[static_cast<size_t>(row)])
      throw IoError("capacitance CSV row label '" + fields[0] + "' does not match header '" +
                    out.labels[static_cast<size_t>(row)] + "'");
    for (int j = 0; j < n; ++j) {
      try {
        out.values(row, j) = std::stod(fields[static_cast<size_t>(j) + 1]);
      } catch (const std::exception&) {
        throw IoError("capacitance CSV: malformed number '" + fields[static_cast<size_t>(j) + 1] +
                      "'");
      }
    }
    ++row;
  }
  if (row != n) throw IoError("capacitance CSV has fewer rows than labels");

  const double scale = out.values.cwiseAbs().maxCoeff();
  const double asym = (out.values - out.values.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9 * scale)
    throw ValidationError({"capacitance matrix in '" + path + "' is not symmetric"});
  return out;
}

CapacitanceComparison capacitance_diff(const CapacitanceMatrix& c_sym,
                                       const CapacitanceMatrix& c_asym) {
  if (c_sym.labels != c_asym.labels)
    throw ValidationError({"capacitance matrices have mismatched labels"});
  const int n = static_cast<int>(c_sym.labels.size());
  CapacitanceComparison out;
  out.labels = c_sym.labels;
  out.ratio.resize(n, n);
  out.relative_diff.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (c_sym.values(i, j) == 0.0)
        throw SingularConfigError("capacitance_diff: zero entry in the symmetric matrix at (" +
                                  c_sym.labels[static_cast<size_t>(i)] + ", " +
                                  c_sym.labels[static_cast<size_t>(j)] + ")");
      out.ratio(i, j) = c_asym.values(i, j) / c_sym.values(i, j);
      out.relative_diff(i, j) = (c_asym.values(i, j) - c_sym.values(i, j)) / c_sym.values(i, j);
    }
  }
  return out;
}

}  // namespace purcell
