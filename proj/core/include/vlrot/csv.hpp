#pragma once

#include <filesystem>
#include <string>
#include <vector>

// CSV output: header row, then data rows, '.' decimal, '\n' terminators.
// Numbers use the shortest text that round-trips the double. Files are
// written to <name>.tmp and renamed, so an abort never leaves partial rows.

namespace vlrot {

std::string format_double(double v);

class CsvWriter {
 public:
  CsvWriter(std::filesystem::path path, std::vector<std::string> header);

  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);

  /// Write-then-rename commit. No file appears if never called.
  void commit();

 private:
  std::filesystem::path path_;
  std::string body_;
  std::size_t columns_;
};

/// One row of a CSV file split into cells.
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

}  // namespace vlrot
