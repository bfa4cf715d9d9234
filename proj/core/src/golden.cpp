#include "slet/golden.hpp"

#include <cfenv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef SLET_DATA_DIR
#define SLET_DATA_DIR "data"
#endif

namespace slet::golden {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int count_decimals(const std::string& s) {
  const auto dot = s.find('.');
  if (dot == std::string::npos) return 0;
  int n = 0;
  for (auto i = dot + 1; i < s.size() && std::isdigit(s[i]); ++i) ++n;
  return n;
}

}  // namespace

Table load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open golden fixture: " + path);

  Table table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto cells = split_csv(t);
    if (!have_header) {
      for (const auto& c : cells) table.columns.push_back(trim(c));
      have_header = true;
      continue;
    }
    Row row;
    for (std::size_t i = 0; i < cells.size() && i < table.columns.size(); ++i) {
      const std::string cell = trim(cells[i]);
      if (cell.empty()) continue;
      const std::string& col = table.columns[i];
      row.raw[col] = cell;
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end && *end == '\0') {
        row.values[col] = v;
        row.decimals[col] = count_decimals(cell);
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header)
    throw std::runtime_error("golden fixture has no header row: " + path);
  return table;
}

std::string data_dir(const std::string& override_dir) {
  if (!override_dir.empty()) return override_dir;
  if (const char* env = std::getenv("SLET_GOLDEN_DIR"); env && *env)
    return env;
  return std::string(SLET_DATA_DIR) + "/golden";
}

double round_to(double value, int decimals) {
  double scale = 1.0;
  for (int i = 0; i < decimals; ++i) scale *= 10.0;
  // nearbyint honours the default round-to-nearest-even mode
  return std::nearbyint(value * scale) / scale;
}

}  // namespace slet::golden
