#include "toml.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "dshock/error.hpp"

namespace dshock::toml {

namespace {

[[noreturn]] void fail_at(int line, int col, const std::string& msg) {
  std::ostringstream s;
  s << "line " << line << ", column " << col << ": " << msg;
  throw Error(Errc::kParse, s.str());
}

bool bare_key_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '-';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Value run() {
    Value root = Value::table(1, 1);
    Value* current = &root;
    while (true) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        current = header(root);
      } else {
        key_value(*current);
      }
      end_of_line();
    }
    return root;
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek(std::size_t k = 0) const { return pos_ + k < text_.size() ? text_[pos_ + k] : '\0'; }
  char get() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(line_, col_, msg); }

  void skip_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) get();
  }
  void skip_comment() {
    if (peek() == '#') {
      while (!eof() && peek() != '\n') get();
    }
  }
  void skip_blank_lines() {
    while (!eof()) {
      skip_ws();
      skip_comment();
      if (peek() == '\r' && peek(1) == '\n') get();
      if (peek() == '\n') {
        get();
        continue;
      }
      break;
    }
  }
  // Whitespace, comments and newlines inside arrays.
  void skip_ws_nl() {
    while (!eof()) {
      skip_ws();
      skip_comment();
      if (peek() == '\r' && peek(1) == '\n') get();
      if (peek() == '\n') {
        get();
        continue;
      }
      break;
    }
  }
  void end_of_line() {
    skip_ws();
    skip_comment();
    if (peek() == '\r' && peek(1) == '\n') get();
    if (eof()) return;
    if (peek() != '\n') fail(std::string("unexpected '") + peek() + "' after value");
    get();
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  std::string simple_key() {
    if (peek() == '"') return basic_string();
    if (peek() == '\'') return literal_string();
    std::string k;
    while (!eof() && bare_key_char(peek())) k += get();
    if (k.empty()) fail("expected a key");
    return k;
  }
  std::vector<std::string> dotted_key() {
    std::vector<std::string> parts;
    skip_ws();
    parts.push_back(simple_key());
    skip_ws();
    while (peek() == '.') {
      get();
      skip_ws();
      parts.push_back(simple_key());
      skip_ws();
    }
    return parts;
  }

  // Descends through (and creates) intermediate tables; the last element of
  // an array of tables is used.
  Value& descend(Value& from, const std::string& key, int line, int col) {
    Value* v = from.find(key);
    if (!v) return from.insert(key, Value::table(line, col));
    if (v->is_array() && !v->as_array().empty() && v->as_array().back().is_table() &&
        arrays_of_tables_.count(v)) {
      return v->as_array().back();
    }
    if (!v->is_table()) fail_at(line, col, "key '" + key + "' is not a table");
    return *v;
  }

  Value* header(Value& root) {
    const int line = line_, col = col_;
    get();
    const bool array = peek() == '[';
    if (array) get();
    const auto parts = dotted_key();
    expect(']');
    if (array) expect(']');
    Value* t = &root;
    for (std::size_t k = 0; k + 1 < parts.size(); ++k) t = &descend(*t, parts[k], line, col);
    const std::string& last = parts.back();
    if (array) {
      Value* arr = t->find(last);
      if (!arr) {
        arr = &t->insert(last, Value::array(line, col));
        arrays_of_tables_.insert(arr);
      } else if (!arrays_of_tables_.count(arr)) {
        fail_at(line, col, "key '" + last + "' is not an array of tables");
      }
      arr->as_array().push_back(Value::table(line, col));
      return &arr->as_array().back();
    }
    Value* existing = t->find(last);
    if (existing) {
      if (!existing->is_table() || defined_.count(existing)) {
        fail_at(line, col, "table [" + join(parts) + "] defined twice");
      }
      defined_.insert(existing);
      return existing;
    }
    Value& created = t->insert(last, Value::table(line, col));
    defined_.insert(&created);
    return &created;
  }

  static std::string join(const std::vector<std::string>& parts) {
    std::string s;
    for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? "." : "") + parts[k];
    return s;
  }

  void key_value(Value& table) {
    const int line = line_, col = col_;
    const auto parts = dotted_key();
    expect('=');
    skip_ws();
    Value* t = &table;
    for (std::size_t k = 0; k + 1 < parts.size(); ++k) t = &descend(*t, parts[k], line, col);
    if (t->find(parts.back())) fail_at(line, col, "duplicate key '" + join(parts) + "'");
    t->insert(parts.back(), value());
  }

  Value value() {
    const int line = line_, col = col_;
    const char c = peek();
    if (c == '"') {
      if (peek(1) == '"' && peek(2) == '"') fail("multi-line strings are not supported");
      return Value::string(basic_string(), line, col);
    }
    if (c == '\'') {
      if (peek(1) == '\'' && peek(2) == '\'') fail("multi-line strings are not supported");
      return Value::string(literal_string(), line, col);
    }
    if (c == '[') return array_value();
    if (c == '{') return inline_table();
    if (text_.substr(pos_, 4) == "true" && !bare_key_char(peek(4))) {
      for (int k = 0; k < 4; ++k) get();
      return Value::boolean(true, line, col);
    }
    if (text_.substr(pos_, 5) == "false" && !bare_key_char(peek(5))) {
      for (int k = 0; k < 5; ++k) get();
      return Value::boolean(false, line, col);
    }
    return number();
  }

  std::string basic_string() {
    expect('"');
    std::string s;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      const char c = get();
      if (c == '"') break;
      if (c != '\\') {
        s += c;
        continue;
      }
      if (eof()) fail("unterminated escape");
      const char e = get();
      switch (e) {
        case '"': s += '"'; break;
        case '\\': s += '\\'; break;
        case 'n': s += '\n'; break;
        case 't': s += '\t'; break;
        case 'r': s += '\r'; break;
        case 'b': s += '\b'; break;
        case 'f': s += '\f'; break;
        default: fail(std::string("unsupported escape '\\") + e + "'");
      }
    }
    return s;
  }
  std::string literal_string() {
    expect('\'');
    std::string s;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      const char c = get();
      if (c == '\'') break;
      s += c;
    }
    return s;
  }

  Value array_value() {
    Value arr = Value::array(line_, col_);
    get();
    skip_ws_nl();
    while (true) {
      if (eof()) fail("unterminated array");
      if (peek() == ']') break;
      arr.as_array().push_back(value());
      skip_ws_nl();
      if (peek() == ',') {
        get();
        skip_ws_nl();
      } else if (!eof() && peek() != ']') {
        fail("expected ',' or ']' in array");
      }
    }
    get();
    return arr;
  }

  Value inline_table() {
    Value t = Value::table(line_, col_);
    get();
    skip_ws();
    if (peek() == '}') {
      get();
      return t;
    }
    while (true) {
      key_value(t);
      skip_ws();
      if (peek() == ',') {
        get();
        continue;
      }
      expect('}');
      return t;
    }
  }

  Value number() {
    const int line = line_, col = col_;
    std::string tok;
    while (!eof() && (bare_key_char(peek()) || peek() == '+' || peek() == '.' || peek() == ':')) {
      tok += get();
    }
    if (tok.empty()) fail("expected a value");
    const bool date_like = tok.size() >= 10 && tok[4] == '-' && tok[7] == '-' &&
                           std::isdigit(static_cast<unsigned char>(tok[0]));
    if (tok.find(':') != std::string::npos || date_like) {
      fail_at(line, col, "dates and times are not supported");
    }
    std::string clean;
    for (std::size_t k = 0; k < tok.size(); ++k) {
      if (tok[k] != '_') {
        clean += tok[k];
        continue;
      }
      const bool ok = k > 0 && k + 1 < tok.size() && std::isdigit(static_cast<unsigned char>(tok[k - 1])) &&
                      std::isdigit(static_cast<unsigned char>(tok[k + 1]));
      if (!ok) fail_at(line, col, "misplaced '_' in number '" + tok + "'");
    }
    std::string body = clean;
    double sign = 1.0;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
      sign = body[0] == '-' ? -1.0 : 1.0;
      body.erase(0, 1);
    }
    if (body == "inf") return Value::floating(sign * std::numeric_limits<double>::infinity(), line, col);
    if (body == "nan") return Value::floating(std::numeric_limits<double>::quiet_NaN(), line, col);
    const bool is_float = body.find_first_of(".eE") != std::string::npos;
    if (body.empty() || !std::isdigit(static_cast<unsigned char>(body[0]))) {
      fail_at(line, col, "invalid value '" + tok + "'");
    }
    if (!is_float) {
      if (body.size() > 1 && body[0] == '0') fail_at(line, col, "leading zero in '" + tok + "'");
      long long v = 0;
      const auto [p, ec] = std::from_chars(clean.data() + (clean[0] == '+'), clean.data() + clean.size(), v);
      if (ec != std::errc() || p != clean.data() + clean.size()) {
        fail_at(line, col, "invalid integer '" + tok + "'");
      }
      return Value::integer(v, line, col);
    }
    const std::size_t dot = body.find('.');
    if (dot != std::string::npos &&
        (dot + 1 >= body.size() || !std::isdigit(static_cast<unsigned char>(body[dot + 1])))) {
      fail_at(line, col, "a decimal point must be followed by a digit in '" + tok + "'");
    }
    double v = 0.0;
    const auto [p, ec] = std::from_chars(clean.data() + (clean[0] == '+'), clean.data() + clean.size(), v);
    if (ec != std::errc() || p != clean.data() + clean.size()) {
      fail_at(line, col, "invalid number '" + tok + "'");
    }
    return Value::floating(v, line, col);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  std::set<const Value*> defined_;
  std::set<const Value*> arrays_of_tables_;
};

}  // namespace

Value Value::boolean(bool b, int line, int col) {
  Value v;
  v.kind_ = Kind::kBool;
  v.b_ = b;
  v.line_ = line;
  v.col_ = col;
  return v;
}
Value Value::integer(long long i, int line, int col) {
  Value v;
  v.kind_ = Kind::kInt;
  v.i_ = i;
  v.line_ = line;
  v.col_ = col;
  return v;
}
Value Value::floating(double d, int line, int col) {
  Value v;
  v.kind_ = Kind::kFloat;
  v.d_ = d;
  v.line_ = line;
  v.col_ = col;
  return v;
}
Value Value::string(std::string s, int line, int col) {
  Value v;
  v.kind_ = Kind::kString;
  v.s_ = std::move(s);
  v.line_ = line;
  v.col_ = col;
  return v;
}
Value Value::array(int line, int col) {
  Value v;
  v.kind_ = Kind::kArray;
  v.line_ = line;
  v.col_ = col;
  return v;
}
Value Value::table(int line, int col) {
  Value v;
  v.kind_ = Kind::kTable;
  v.line_ = line;
  v.col_ = col;
  return v;
}

std::string Value::where() const {
  return "line " + std::to_string(line_) + ", column " + std::to_string(col_);
}

std::string to_string(Value::Kind k) {
  switch (k) {
    case Value::Kind::kBool: return "boolean";
    case Value::Kind::kInt: return "integer";
    case Value::Kind::kFloat: return "float";
    case Value::Kind::kString: return "string";
    case Value::Kind::kArray: return "array";
    case Value::Kind::kTable: return "table";
  }
  return "?";
}

void Value::kind_error(const char* wanted) const {
  fail_at(line_, col_, std::string("expected ") + wanted + ", found " + to_string(kind_));
}

bool Value::as_bool() const {
  if (kind_ != Kind::kBool) kind_error("boolean");
  return b_;
}
long long Value::as_int() const {
  if (kind_ != Kind::kInt) kind_error("integer");
  return i_;
}
double Value::as_double() const {
  if (kind_ == Kind::kInt) return static_cast<double>(i_);
  if (kind_ != Kind::kFloat) kind_error("number");
  return d_;
}
const std::string& Value::as_string() const {
  if (kind_ != Kind::kString) kind_error("string");
  return s_;
}
const Value::Array& Value::as_array() const {
  if (kind_ != Kind::kArray) kind_error("array");
  return arr_;
}
Value::Array& Value::as_array() {
  if (kind_ != Kind::kArray) kind_error("array");
  return arr_;
}
const Value::Table& Value::as_table() const {
  if (kind_ != Kind::kTable) kind_error("table");
  return table_;
}
Value::Table& Value::as_table() {
  if (kind_ != Kind::kTable) kind_error("table");
  return table_;
}

const Value* Value::find(std::string_view key) const {
  if (kind_ != Kind::kTable) return nullptr;
  for (const auto& [k, v] : table_) {
    if (k == key) return &v;
  }
  return nullptr;
}
Value* Value::find(std::string_view key) {
  return const_cast<Value*>(static_cast<const Value&>(*this).find(key));
}
Value& Value::insert(std::string key, Value v) {
  table_.emplace_back(std::move(key), std::move(v));
  return table_.back().second;
}

Value parse(std::string_view text) { return Parser(text).run(); }

Value parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kParse, "cannot open config file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  try {
    return parse(s.str());
  } catch (const Error& e) {
    throw Error(Errc::kParse, path + ": " + e.what());
  }
}

const Value* find_path(const Value& root, std::string_view path) {
  const Value* v = &root;
  while (!path.empty()) {
    const std::size_t dot = path.find('.');
    const std::string_view key = path.substr(0, dot);
    v = v->find(key);
    if (!v) return nullptr;
    path = dot == std::string_view::npos ? std::string_view{} : path.substr(dot + 1);
  }
  return v;
}

const Value& require(const Value& root, std::string_view path) {
  if (const Value* v = find_path(root, path)) return *v;
  // Point at the deepest existing table.
  const Value* t = &root;
  std::string_view rest = path;
  while (!rest.empty()) {
    const std::size_t dot = rest.find('.');
    const Value* next = t->find(rest.substr(0, dot));
    if (!next || !next->is_table()) break;
    t = next;
    rest = dot == std::string_view::npos ? std::string_view{} : rest.substr(dot + 1);
  }
  std::string msg = "missing key '" + std::string(path) + "'";
  fail_at(t->line(), t->column(), msg);
}

double get_double(const Value& root, std::string_view path, double fallback) {
  const Value* v = find_path(root, path);
  return v ? v->as_double() : fallback;
}
long long get_int(const Value& root, std::string_view path, long long fallback) {
  const Value* v = find_path(root, path);
  return v ? v->as_int() : fallback;
}
bool get_bool(const Value& root, std::string_view path, bool fallback) {
  const Value* v = find_path(root, path);
  return v ? v->as_bool() : fallback;
}
std::string get_string(const Value& root, std::string_view path, const std::string& fallback) {
  const Value* v = find_path(root, path);
  return v ? v->as_string() : fallback;
}
std::vector<double> get_doubles(const Value& root, std::string_view path,
                                std::vector<double> fallback) {
  const Value* v = find_path(root, path);
  if (!v) return fallback;
  std::vector<double> out;
  for (const Value& e : v->as_array()) out.push_back(e.as_double());
  return out;
}

State to_state(const Value& v) {
  const auto& a = v.as_array();
  if (a.size() != 2) fail_at(v.line(), v.column(), "a state needs exactly two numbers [u, v]");
  return {a[0].as_double(), a[1].as_double()};
}

State get_state(const Value& root, std::string_view path) { return to_state(require(root, path)); }

}  // namespace dshock::toml
