#ifndef DSHOCK_CSV_HPP_
#define DSHOCK_CSV_HPP_

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dshock {

// Scientific notation, 17 significant digits, '.' decimal separator.
std::string format_double(double x);

// Header row plus LF-terminated records. Cells are either numbers (formatted
// with format_double), integers or strings; strings containing a comma, quote
// or line break are quoted.
class CsvTable {
 public:
  using Cell = std::variant<double, long long, std::string>;

  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<Cell> row);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace dshock

#endif  // DSHOCK_CSV_HPP_
