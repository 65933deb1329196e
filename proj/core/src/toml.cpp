#include "purcell/toml.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "purcell/errors.hpp"

namespace purcell::toml {

const std::string& Value::as_string() const {
  if (!is_string()) throw ConfigError("expected a string value", line_);
  return std::get<std::string>(storage_);
}

double Value::as_number() const {
  if (std::holds_alternative<double>(storage_)) return std::get<double>(storage_);
  if (std::holds_alternative<int64_t>(storage_))
    return static_cast<double>(std::get<int64_t>(storage_));
  throw ConfigError("expected a numeric value", line_);
}

int64_t Value::as_integer() const {
  if (!is_integer()) throw ConfigError("expected an integer value", line_);
  return std::get<int64_t>(storage_);
}

bool Value::as_bool() const {
  if (!is_bool()) throw ConfigError("expected a boolean value", line_);
  return std::get<bool>(storage_);
}

const Value::Array& Value::as_array() const {
  if (!is_array()) throw ConfigError("expected an array value", line_);
  return std::get<Array>(storage_);
}

const Value::Table& Value::as_table() const {
  if (!is_table()) throw ConfigError("expected a table value", line_);
  return std::get<Table>(storage_);
}

Value::Table& Value::table() {
  if (!is_table()) throw ConfigError("expected a table value", line_);
  return std::get<Table>(storage_);
}

namespace {

struct Cursor {
  const std::string& text;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  char advance() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(msg, line, col); }

  void skip_ws_inline() {
    while (!done() && (peek() == ' ' || peek() == '\t')) advance();
  }

  void skip_comment() {
    while (!done() && peek() != '\n') advance();
  }

  // Whitespace, newlines and comments.
  void skip_filler() {
    while (!done()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (c == '#') {
        skip_comment();
      } else {
        break;
      }
    }
  }
};

bool is_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string parse_key(Cursor& cur) {
  cur.skip_ws_inline();
  std::string key;
  while (!cur.done() && is_key_char(cur.peek())) key += cur.advance();
  if (key.empty()) cur.fail("expected a key");
  return key;
}

std::string parse_basic_string(Cursor& cur) {
  cur.advance();  // opening quote
  std::string out;
  while (true) {
    if (cur.done() || cur.peek() == '\n') cur.fail("unterminated string");
    char c = cur.advance();
    if (c == '"') break;
    if (c == '\\') {
      if (cur.done()) cur.fail("unterminated escape");
      char e = cur.advance();
      switch (e) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: cur.fail(std::string("unsupported escape \\") + e);
      }
    } else {
      out += c;
    }
  }
  return out;
}

ValuePtr parse_value(Cursor& cur);

ValuePtr parse_array(Cursor& cur) {
  const int line = cur.line;
  cur.advance();  // '['
  Value::Array items;
  while (true) {
    cur.skip_filler();
    if (cur.done()) cur.fail("unterminated array");
    if (cur.peek() == ']') {
      cur.advance();
      break;
    }
    items.push_back(parse_value(cur));
    cur.skip_filler();
    if (cur.done()) cur.fail("unterminated array");
    if (cur.peek() == ',') {
      cur.advance();
    } else if (cur.peek() != ']') {
      cur.fail("expected ',' or ']' in array");
    }
  }
  return std::make_shared<Value>(Value::Storage(std::move(items)), line);
}

ValuePtr parse_number(Cursor& cur) {
  const int line = cur.line;
  std::string tok;
  while (!cur.done()) {
    char c = cur.peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.' ||
        c == 'e' || c == 'E' || c == '_') {
      if (c != '_') tok += c;
      cur.advance();
    } else {
      break;
    }
  }
  if (tok.empty()) cur.fail("expected a number");
  const bool integral = tok.find_first_of(".eE") == std::string::npos;
  if (integral) {
    int64_t v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
      cur.fail("malformed integer '" + tok + "'");
    return std::make_shared<Value>(Value::Storage(v), line);
  }
  double v = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    cur.fail("malformed number '" + tok + "'");
  return std::make_shared<Value>(Value::Storage(v), line);
}

ValuePtr parse_value(Cursor& cur) {
  cur.skip_ws_inline();
  if (cur.done()) cur.fail("expected a value");
  const char c = cur.peek();
  const int line = cur.line;
  if (c == '"') return std::make_shared<Value>(Value::Storage(parse_basic_string(cur)), line);
  if (c == '[') return parse_array(cur);
  if (std::isalpha(static_cast<unsigned char>(c))) {
    std::string word;
    while (!cur.done() && is_key_char(cur.peek())) word += cur.advance();
    if (word == "true") return std::make_shared<Value>(Value::Storage(true), line);
    if (word == "false") return std::make_shared<Value>(Value::Storage(false), line);
    cur.fail("unrecognized value '" + word + "' (strings must be quoted)");
  }
  return parse_number(cur);
}

void expect_line_end(Cursor& cur) {
  cur.skip_ws_inline();
  if (cur.done()) return;
  if (cur.peek() == '#') {
    cur.skip_comment();
    return;
  }
  if (cur.peek() == '\n' || cur.peek() == '\r') return;
  cur.fail("unexpected trailing content");
}

}  // namespace

Value parse(const std::string& text) {
  Cursor cur{text};
  Value root(Value::Storage(Value::Table{}), 0);
  Value* current = &root;

  while (true) {
    cur.skip_filler();
    if (cur.done()) break;
    const int line = cur.line;

    if (cur.peek() == '[') {
      cur.advance();
      const bool array_of_tables = !cur.done() && cur.peek() == '[';
      if (array_of_tables) cur.advance();
      const std::string name = parse_key(cur);
      cur.skip_ws_inline();
      if (cur.done() || cur.peek() != ']') cur.fail("expected ']'");
      cur.advance();
      if (array_of_tables) {
        if (cur.done() || cur.peek() != ']') cur.fail("expected ']]'");
        cur.advance();
      }
      expect_line_end(cur);

      auto& table = root.table();
      auto entry = std::make_shared<Value>(Value::Storage(Value::Table{}), line);
      if (array_of_tables) {
        auto it = table.find(name);
        if (it == table.end()) {
          it = table.emplace(name, std::make_shared<Value>(Value::Storage(Value::Array{}), line))
                   .first;
        } else if (!it->second->is_array()) {
          throw ConfigError("section [[" + name + "]] conflicts with earlier [" + name + "]",
                            line);
        }
        auto& arr = const_cast<Value::Array&>(it->second->as_array());
        arr.push_back(entry);
      } else {
        if (table.count(name)) throw ConfigError("duplicate section [" + name + "]", line);
        table.emplace(name, entry);
      }
      current = entry.get();
      continue;
    }

    const std::string key = parse_key(cur);
    cur.skip_ws_inline();
    if (cur.done() || cur.peek() != '=') cur.fail("expected '=' after key '" + key + "'");
    cur.advance();
    ValuePtr value = parse_value(cur);
    expect_line_end(cur);

    auto& table = current->table();
    if (table.count(key)) throw ConfigError("duplicate key '" + key + "'", line);
    table.emplace(key, std::move(value));
  }
  return root;
}

Value parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const ValuePtr find(const Value& table, const std::string& key) {
  const auto& t = table.as_table();
  auto it = t.find(key);
  return it == t.end() ? nullptr : it->second;
}

const Value& require(const Value& table, const std::string& key) {
  auto v = find(table, key);
  if (!v) throw ConfigError("missing required key '" + key + "'", table.line());
  return *v;
}

}  // namespace purcell::toml
