#include "purcell/units.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include "purcell/errors.hpp"
#include "purcell/format.hpp"

namespace purcell {

namespace {

struct UnitDef {
  Dimension dimension;
  double scale;      // multiplies the parsed number into canonical units
  bool f_valued;     // frequency-like units get the extra 2pi
};

const std::map<std::string, UnitDef>& unit_table() {
  static const std::map<std::string, UnitDef> table = {
      {"Hz", {Dimension::AngularFrequency, 1.0, true}},
      {"kHz", {Dimension::AngularFrequency, 1e3, true}},
      {"MHz", {Dimension::AngularFrequency, 1e6, true}},
      {"GHz", {Dimension::AngularFrequency, 1e9, true}},
      {"rad/s", {Dimension::AngularFrequency, 1.0, false}},
      {"deg", {Dimension::Phase, pi / 180.0, false}},
      {"rad", {Dimension::Phase, 1.0, false}},
      {"s", {Dimension::Time, 1.0, false}},
      {"ms", {Dimension::Time, 1e-3, false}},
      {"us", {Dimension::Time, 1e-6, false}},
      {"ns", {Dimension::Time, 1e-9, false}},
      {"m", {Dimension::Length, 1.0, false}},
      {"mm", {Dimension::Length, 1e-3, false}},
      {"um", {Dimension::Length, 1e-6, false}},
      {"m/s", {Dimension::Velocity, 1.0, false}},
  };
  return table;
}

const char* dimension_name(Dimension d) {
  switch (d) {
    case Dimension::AngularFrequency: return "frequency/rate";
    case Dimension::Phase: return "phase";
    case Dimension::Time: return "time";
    case Dimension::Length: return "length";
    case Dimension::Velocity: return "velocity";
    case Dimension::Dimensionless: return "dimensionless";
  }
  return "?";
}

}  // namespace

double normalize_phase(double radians) {
  double r = std::remainder(radians, two_pi);  // (-pi, pi) plus the edge cases
  if (r <= -pi) r += two_pi;
  return r;
}

Quantity parse_quantity(const std::string& text, Dimension expected) {
  size_t begin = text.find_first_not_of(" \t");
  if (begin == std::string::npos) throw ConfigError("empty quantity");

  const char* first = text.data() + begin;
  const char* last = text.data() + text.size();
  double number = 0.0;
  auto res = std::from_chars(first, last, number);
  if (res.ec != std::errc())
    throw ConfigError("malformed quantity '" + text + "': expected <number> <unit>");

  size_t unit_begin = static_cast<size_t>(res.ptr - text.data());
  unit_begin = text.find_first_not_of(" \t", unit_begin);
  std::string unit =
      unit_begin == std::string::npos ? std::string{} : text.substr(unit_begin);
  while (!unit.empty() && (unit.back() == ' ' || unit.back() == '\t')) unit.pop_back();

  if (expected == Dimension::Dimensionless) {
    if (!unit.empty())
      throw ConfigError("'" + text + "': dimensionless field must not carry a unit");
    return {number, expected};
  }
  if (unit.empty())
    throw ConfigError("'" + text + "': missing unit tag (expected a " +
                      dimension_name(expected) + " unit)");

  auto it = unit_table().find(unit);
  if (it == unit_table().end()) throw ConfigError("unknown unit '" + unit + "' in '" + text + "'");
  const UnitDef& def = it->second;
  if (def.dimension != expected)
    throw ConfigError("'" + text + "': expected a " + dimension_name(expected) + " unit, got '" +
                      unit + "'");

  double value = number * def.scale;
  if (def.f_valued) value *= two_pi;
  if (expected == Dimension::Phase) value = normalize_phase(value);
  return {value, expected};
}

std::string render_angular(double omega_rad_s, const std::string& unit, int digits) {
  auto it = unit_table().find(unit);
  if (it == unit_table().end() || it->second.dimension != Dimension::AngularFrequency)
    throw ConfigError("unknown frequency unit '" + unit + "'");
  double v = omega_rad_s / it->second.scale;
  if (it->second.f_valued) v /= two_pi;
  return format_double(v, digits) + " " + unit;
}

std::string render_phase(double radians, int digits) {
  return format_double(normalize_phase(radians), digits) + " rad";
}

}  // namespace purcell
