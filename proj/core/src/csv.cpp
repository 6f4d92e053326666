#include "dshock/csv.hpp"

#include <cstdio>
#include <fstream>

#include "dshock/error.hpp"

namespace dshock {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<Cell> row) {
  if (row.size() != header_.size()) {
    throw Error(Errc::kInvalidInput, "CSV row width does not match header");
  }
  rows_.push_back(std::move(row));
}

namespace {

// Quotes fields holding a separator, quote or line break.
void append_field(std::string& out, const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) {
    out += s;
    return;
  }
  out += '"';
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
}

}  // namespace

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t k = 0; k < header_.size(); ++k) {
    if (k) out += ',';
    out += header_[k];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      const Cell& c = row[k];
      if (const auto* d = std::get_if<double>(&c)) {
        out += format_double(*d);
      } else if (const auto* i = std::get_if<long long>(&c)) {
        out += std::to_string(*i);
      } else {
        append_field(out, std::get<std::string>(c));
      }
    }
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(Errc::kInvalidInput, "cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw Error(Errc::kInvalidInput, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace dshock
