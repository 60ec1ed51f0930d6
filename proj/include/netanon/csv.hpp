#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netanon {

// 6 significant digits, "nan" for NaN; the single numeric format used by
// every CSV the tool emits.
std::string format_double(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name; throws when absent.
  std::size_t column(const std::string& name) const;
};

// Minimal comma-separated reader; fields never contain commas or quotes in
// any schema this tool writes.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

std::string join_csv_row(const std::vector<std::string>& fields);

}  // namespace netanon
