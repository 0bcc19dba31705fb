#ifndef COVERTSIM_CSV_HPP
#define COVERTSIM_CSV_HPP

#include <string>
#include <vector>

namespace covertsim::harness {

// Doubles in CSV output carry 9 significant digits.
std::string format_g9(double value);

// A plot-ready CSV: one leading comment line (config hash + seed), one
// header row, then data rows. Cells are pre-rendered strings so the byte
// output is exactly reproducible.
class CsvTable {
 public:
  void set_comment(std::string comment) { comment_ = std::move(comment); }
  void set_header(std::vector<std::string> columns);
  void add_row(std::vector<std::string> cells);

  std::size_t row_count() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  std::string to_string() const;
  // Throws std::runtime_error with the path on any I/O failure.
  void write_file(const std::string& path) const;

 private:
  std::string comment_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace covertsim::harness

#endif  // COVERTSIM_CSV_HPP
