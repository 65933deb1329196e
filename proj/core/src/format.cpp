#include "purcell/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace purcell {

int output_digits() {
  static const int digits = [] {
    if (const char* env = std::getenv("PURCELL_FLOAT_DIGITS")) {
      const int d = std::atoi(env);
      if (d >= 3 && d <= 17) return d;
    }
    return 9;
  }();
  return digits;
}

std::string format_double(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

std::string format_double(double v) { return format_double(v, output_digits()); }

std::string format_complex(Complex v, int digits) {
  std::string s = format_double(v.real(), digits);
  const std::string im = format_double(v.imag(), digits);
  if (!im.empty() && im[0] == '-') {
    s += im;
  } else {
    s += "+" + im;
  }
  s += "i";
  return s;
}

void CsvWriter::header(const std::vector<std::string>& cols) {
  for (size_t i = 0; i < cols.size(); ++i) {
    if (i) buffer += ',';
    buffer += cols[i];
  }
  buffer += '\n';
}

void CsvWriter::begin_row() { row_start_ = true; }

void CsvWriter::field(const std::string& s) {
  if (!row_start_) buffer += ',';
  row_start_ = false;
  buffer += s;
}

void CsvWriter::field(double v) { field(format_double(v)); }

void CsvWriter::end_row() { buffer += '\n'; }

}  // namespace purcell
