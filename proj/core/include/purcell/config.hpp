#pragma once

#include <optional>
#include <string>
#include <vector>

#include "purcell/driven.hpp"
#include "purcell/system.hpp"
#include "purcell/toml.hpp"

namespace purcell {

// Sweep defaults carried by the optional [sweep] section; CLI flags
// override any of them.
struct SweepSection {
  std::string param;
  double from = 0.0;  // canonical units (already converted)
  double to = 0.0;
  int points = 0;
  std::optional<std::string> param2;
  double from2 = 0.0;
  double to2 = 0.0;
  int points2 = 0;
  std::vector<std::string> methods;
};

struct ParsedConfig {
  SystemSpec system;
  DriveSpec drive;
  std::optional<SweepSection> sweep;
};

// Boundary conversion: every f-valued field is multiplied into rad/s,
// phases are normalized to (-pi, pi]. Unit tags are mandatory.
ParsedConfig to_angular(const toml::Value& document);

ParsedConfig load_config(const std::string& path);
ParsedConfig parse_config_text(const std::string& text);

// Inverse serialization (frequencies in GHz, phases in rad; 15 significant
// digits) so that parse(render(parse(x))) reproduces parse(x) to 12
// significant digits.
std::string render_config(const SystemSpec& system, const DriveSpec* drive = nullptr);

}  // namespace purcell
