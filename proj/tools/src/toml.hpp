#ifndef DSHOCK_TOOLS_TOML_HPP_
#define DSHOCK_TOOLS_TOML_HPP_

#include <list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dshock/state.hpp"

// Subset of TOML used by the configuration files: tables, arrays of tables,
// dotted and quoted keys, basic and literal single-line strings, integers,
// floats (including inf/nan and underscores), booleans, arrays spanning lines
// and inline tables. Dates and multi-line strings are rejected. Errors are
// dshock::Error(kParse) with "line L, column C" positions.
namespace dshock::toml {

class Value {
 public:
  enum class Kind { kBool, kInt, kFloat, kString, kArray, kTable };
  using Array = std::vector<Value>;
  // list: node addresses stay valid while a document is being built
  using Table = std::list<std::pair<std::string, Value>>;

  Value() : kind_(Kind::kTable) {}
  static Value boolean(bool b, int line, int col);
  static Value integer(long long i, int line, int col);
  static Value floating(double d, int line, int col);
  static Value string(std::string s, int line, int col);
  static Value array(int line, int col);
  static Value table(int line, int col);

  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return col_; }
  std::string where() const;

  bool is_table() const { return kind_ == Kind::kTable; }
  bool is_array() const { return kind_ == Kind::kArray; }
  bool is_number() const { return kind_ == Kind::kInt || kind_ == Kind::kFloat; }

  // Typed access; a kind mismatch throws kParse naming the position.
  bool as_bool() const;
  long long as_int() const;
  double as_double() const;  // ints convert
  const std::string& as_string() const;
  const Array& as_array() const;
  Array& as_array();
  const Table& as_table() const;
  Table& as_table();

  // Table lookup by a plain (undotted) key.
  const Value* find(std::string_view key) const;
  Value* find(std::string_view key);
  Value& insert(std::string key, Value v);

 private:
  [[noreturn]] void kind_error(const char* wanted) const;

  Kind kind_;
  bool b_ = false;
  long long i_ = 0;
  double d_ = 0.0;
  std::string s_;
  Array arr_;
  Table table_;
  int line_ = 1;
  int col_ = 1;
};

std::string to_string(Value::Kind k);

Value parse(std::string_view text);
Value parse_file(const std::string& path);

// Lookups on a root document with dotted paths ("run.cells"). Missing keys
// throw kParse naming the path and the enclosing table's position.
const Value* find_path(const Value& root, std::string_view path);
const Value& require(const Value& root, std::string_view path);
double get_double(const Value& root, std::string_view path, double fallback);
long long get_int(const Value& root, std::string_view path, long long fallback);
bool get_bool(const Value& root, std::string_view path, bool fallback);
std::string get_string(const Value& root, std::string_view path, const std::string& fallback);
std::vector<double> get_doubles(const Value& root, std::string_view path,
                                std::vector<double> fallback);
// Two-element numeric array.
State get_state(const Value& root, std::string_view path);
State to_state(const Value& v);

}  // namespace dshock::toml

#endif  // DSHOCK_TOOLS_TOML_HPP_
