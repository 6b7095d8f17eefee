#include "expwave/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace expwave {

std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);  // binary: LF on every platform
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << header << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << format_g17(row[i]);
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

bool parse_double(const std::string& s, double* v) {
  const char* p = s.c_str();
  char* end = nullptr;
  errno = 0;
  *v = std::strtod(p, &end);
  if (end == p || errno == ERANGE) return false;
  while (*end == ' ' || *end == '\t') ++end;
  return *end == '\0';
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty CSV file: " + path);
  table.header = split_fields(line);
  double probe;
  if (!table.header.empty() && parse_double(table.header[0], &probe))
    throw std::runtime_error("CSV header row required: " + path);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != table.header.size()) {
      std::ostringstream os;
      os << path << ":" << lineno << ": expected " << table.header.size()
         << " fields, got " << fields.size();
      throw std::runtime_error(os.str());
    }
    std::vector<double> row(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (!parse_double(fields[i], &row[i])) {
        std::ostringstream os;
        os << path << ":" << lineno << ": cannot parse '" << fields[i] << "'";
        throw std::runtime_error(os.str());
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace expwave
