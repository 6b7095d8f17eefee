#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "expwave/csv.hpp"

using namespace expwave;

namespace {
std::string temp_file(const char* stem) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path() / "expwave_csv_tests";
  std::filesystem::create_directories(dir);
  return (dir / (std::string(stem) + std::to_string(counter++) + ".csv")).string();
}

void put(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
}
}  // namespace

TEST_CASE("format_g17 round-trips doubles exactly") {
  for (double v : {std::numbers::pi, 0.1, -1.0 / 3.0, 1e-300, 6.02214076e23,
                   0.0, -0.0, 2.0}) {
    const double back = std::stod(format_g17(v));
    CHECK(back == v);
  }
}

TEST_CASE("write/read round-trip is bit-exact") {
  const std::string path = temp_file("roundtrip");
  const std::vector<std::vector<double>> rows = {
      {1.0, std::numbers::pi, -0.1},
      {2.0, 1.0 / 3.0, 1e-17},
      {3.0, -2.5, 100.0},
  };
  write_csv(path, "a,b,c", rows);
  const CsvTable t = read_csv(path);
  REQUIRE(t.header.size() == 3);
  CHECK(t.header[0] == "a");
  CHECK(t.header[2] == "c");
  REQUIRE(t.rows.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(t.rows[i][j] == rows[i][j]);
}

TEST_CASE("written files use LF endings and end with a newline") {
  const std::string path = temp_file("lf");
  write_csv(path, "x,y", {{1.5, 2.5}});
  std::ifstream in(path, std::ios::binary);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(content.find('\r') == std::string::npos);
  REQUIRE_FALSE(content.empty());
  CHECK(content.back() == '\n');
  CHECK(content.substr(0, 4) == "x,y\n");
}

TEST_CASE("repeated writes are byte-identical") {
  const std::string p1 = temp_file("det"), p2 = temp_file("det");
  const std::vector<std::vector<double>> rows = {{std::sqrt(2.0), 1.0 / 7.0}};
  write_csv(p1, "u,v", rows);
  write_csv(p2, "u,v", rows);
  std::ifstream a(p1, std::ios::binary), b(p2, std::ios::binary);
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
}

TEST_CASE("read validation failures are specific") {
  const std::string missing = temp_file("missing");
  CHECK_THROWS_AS(read_csv(missing), std::runtime_error);

  const std::string empty = temp_file("empty");
  put(empty, "");
  CHECK_THROWS_AS(read_csv(empty), std::runtime_error);

  const std::string numeric_header = temp_file("numhdr");
  put(numeric_header, "1.0,2.0\n3.0,4.0\n");
  CHECK_THROWS_AS(read_csv(numeric_header), std::runtime_error);

  const std::string ragged = temp_file("ragged");
  put(ragged, "a,b\n1.0,2.0\n3.0\n");
  CHECK_THROWS_AS(read_csv(ragged), std::runtime_error);

  const std::string garbage = temp_file("garbage");
  put(garbage, "a,b\n1.0,fnord\n");
  CHECK_THROWS_AS(read_csv(garbage), std::runtime_error);
}
