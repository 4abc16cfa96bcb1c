#include "vlrot/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "vlrot/errors.hpp"

namespace vlrot {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

CsvWriter::CsvWriter(std::filesystem::path path, std::vector<std::string> header)
    : path_(std::move(path)), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) body_ += ',';
    body_ += header[i];
  }
  body_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_)
    throw config_error("csv row has " + std::to_string(values.size()) + " cells, expected " +
                       std::to_string(columns_));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) body_ += ',';
    body_ += format_double(values[i]);
  }
  body_ += '\n';
}

void CsvWriter::raw_row(const std::string& line) {
  body_ += line;
  body_ += '\n';
}

void CsvWriter::commit() {
  const std::filesystem::path tmp = path_.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw config_error("cannot open " + tmp.string());
    os << body_;
    if (!os) throw config_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path_);
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw config_error("cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace vlrot
