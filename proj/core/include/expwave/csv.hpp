#pragma once

#include <string>
#include <vector>

namespace expwave {

/// Formats with 17 significant digits; round-trips any double exactly.
std::string format_g17(double v);

/// Comma separator, LF line endings, header row first.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Requires a non-numeric header row; every body cell must parse as double.
CsvTable read_csv(const std::string& path);

}  // namespace expwave
