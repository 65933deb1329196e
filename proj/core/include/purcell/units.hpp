#pragma once

#include <string>

#include "purcell/types.hpp"

namespace purcell {

// Config files carry f-values ("10 GHz" means omega/2pi = 10 GHz); the
// internal representation is always angular (rad/s). Conversion happens
// exactly once at the config boundary.

enum class Dimension {
  AngularFrequency,  // Hz/kHz/MHz/GHz (f-valued, scaled by 2pi) or rad/s
  Phase,             // deg or rad, normalized to (-pi, pi]
  Time,              // s, ms, us, ns
  Length,            // m, mm, um
  Velocity,          // m/s
  Dimensionless,     // bare number, no unit tag allowed
};

struct Quantity {
  double value = 0.0;  // canonical units: rad/s, rad, s, m, m/s, or pure
  Dimension dimension = Dimension::Dimensionless;
};

// Parses "10 GHz", "-0.5 MHz", "270 deg", "1.5 rad", "1 mm", ... The unit
// tag is mandatory for every dimensionful quantity; a bare number is only
// accepted for Dimension::Dimensionless.
Quantity parse_quantity(const std::string& text, Dimension expected);

// Normalizes an angle to (-pi, pi].
double normalize_phase(double radians);

// Inverse of the boundary conversion: renders an angular rad/s value back
// as an f-valued string in the given unit ("GHz", "MHz", ...), and a phase
// back into "rad". Used by round-trip serialization.
std::string render_angular(double omega_rad_s, const std::string& unit, int digits = 15);
std::string render_phase(double radians, int digits = 15);

}  // namespace purcell
