#include "netanon/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "netanon/error.hpp"

namespace netanon {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw Error("missing CSV column: " + name);
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t lineno = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = s.find(',', start);
      if (comma == std::string::npos) {
        fields.push_back(s.substr(start));
        break;
      }
      fields.push_back(s.substr(start, comma - start));
      start = comma + 1;
    }
    if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r')
      fields.back().pop_back();
    return fields;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split(line);
    if (table.header.empty()) {
      table.header = std::move(fields);
    } else {
      if (fields.size() != table.header.size())
        throw ParseError("CSV row has " + std::to_string(fields.size()) +
                             " fields, expected " + std::to_string(table.header.size()),
                         lineno);
      table.rows.push_back(std::move(fields));
    }
  }
  if (table.header.empty()) throw Error("empty CSV input");
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open CSV: " + path);
  return read_csv(in);
}

std::string join_csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += fields[i];
  }
  out += '\n';
  return out;
}

}  // namespace netanon
