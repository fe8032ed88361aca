#pragma once

#include <string>
#include <vector>

namespace glasslab {

// CSV writer with explicit fixed formatting (no locale dependence) and
// atomic write-temp-then-rename.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> cells);
  std::string to_string() const;

  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string fmt_g(double v, int digits = 17);  // shortest full-precision
std::string fmt_fixed(double v, int decimals);

void write_file_atomic(const std::string& path, const std::string& content);
std::uint64_t fnv1a64(const std::string& data);

}  // namespace glasslab
