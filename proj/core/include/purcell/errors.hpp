#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace purcell {

// Exit-code taxonomy used by the CLI: validation/config -> 1,
// numerical failures -> 2, I/O -> 3.

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& msg, int line = 0, int column = 0)
      : Error(line > 0 ? msg + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"
                       : msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> issues)
      : Error(join(issues)), issues_(std::move(issues)) {}
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& issues) {
    std::string out = "system validation failed:";
    for (const auto& s : issues) out += "\n  - " + s;
    return out;
  }
  std::vector<std::string> issues_;
};

// Vanishing perturbative denominator, pole of a dispersive formula, or a
// driven lossless mode exactly on resonance.
class SingularConfigError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace purcell
