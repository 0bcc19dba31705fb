#include "covertsim/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace covertsim::harness {

std::string format_g9(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

void CsvTable::set_header(std::vector<std::string> columns) {
  header_ = std::move(columns);
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw std::invalid_argument("CsvTable: row width does not match header");
  }
  rows_.push_back(std::move(cells));
}

std::string CsvTable::to_string() const {
  std::string out;
  if (!comment_.empty()) {
    out += "# ";
    out += comment_;
    out += '\n';
  }
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out += ',';
    out += header_[i];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

void CsvTable::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("csv: cannot open '" + path + "' for writing");
  }
  out << to_string();
  if (!out) {
    throw std::runtime_error("csv: write failed for '" + path + "'");
  }
}

}  // namespace covertsim::harness
