#pragma once

#include <string>
#include <vector>

#include "purcell/types.hpp"

namespace purcell {

// Locale-independent numeric formatting (std::to_chars). All file and
// stdout output goes through these so repeated runs are byte-identical.

// General format ("%.{digits}g" equivalent). Default precision is 9
// significant digits and can be overridden by the PURCELL_FLOAT_DIGITS
// environment variable (clamped to [3, 17]).
std::string format_double(double v);
std::string format_double(double v, int digits);

int output_digits();

std::string format_complex(Complex v, int digits);
inline std::string format_complex(Complex v) { return format_complex(v, output_digits()); }

struct CsvWriter {
  std::string buffer;

  void header(const std::vector<std::string>& cols);
  void begin_row();
  void field(const std::string& s);
  void field(double v);
  void end_row();

 private:
  bool row_start_ = true;
};

}  // namespace purcell
