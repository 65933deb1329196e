#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace purcell::toml {

// Minimal TOML-subset reader covering what config files need:
//   - comments (#), [tables], [[arrays of tables]]
//   - key = value with strings, numbers, booleans and (nested) arrays
// No dotted keys, datetimes or multiline strings. Parse errors carry
// line and column; the full grammar is documented in docs/config.md.

class Value;
using ValuePtr = std::shared_ptr<Value>;

class Value {
 public:
  using Array = std::vector<ValuePtr>;
  using Table = std::map<std::string, ValuePtr>;
  using Storage = std::variant<std::string, double, int64_t, bool, Array, Table>;

  Value(Storage v, int line) : storage_(std::move(v)), line_(line) {}

  int line() const { return line_; }

  bool is_string() const { return std::holds_alternative<std::string>(storage_); }
  bool is_number() const {
    return std::holds_alternative<double>(storage_) || std::holds_alternative<int64_t>(storage_);
  }
  bool is_integer() const { return std::holds_alternative<int64_t>(storage_); }
  bool is_bool() const { return std::holds_alternative<bool>(storage_); }
  bool is_array() const { return std::holds_alternative<Array>(storage_); }
  bool is_table() const { return std::holds_alternative<Table>(storage_); }

  // Typed accessors; throw ConfigError with location on mismatch.
  const std::string& as_string() const;
  double as_number() const;
  int64_t as_integer() const;
  bool as_bool() const;
  const Array& as_array() const;
  const Table& as_table() const;

  Table& table();

 private:
  Storage storage_;
  int line_;
};

// Root table of a parsed document. [[name]] sections accumulate into an
// array value under `name`.
Value parse(const std::string& text);
Value parse_file(const std::string& path);

// Lookup helpers on a table value. `find` returns nullptr when absent.
const ValuePtr find(const Value& table, const std::string& key);
const Value& require(const Value& table, const std::string& key);

}  // namespace purcell::toml
