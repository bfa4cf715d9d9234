#pragma once

#include <map>
#include <string>
#include <vector>

namespace slet::golden {

/// One row of a golden fixture. Values are parsed doubles; `decimals` keeps
/// the printed precision of each cell so comparisons can round half-even to
/// the published number of digits.
struct Row {
  std::map<std::string, double> values;
  std::map<std::string, int> decimals;
  std::map<std::string, std::string> raw;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

/// Parses a fixture CSV: '#' comment lines, one header row, '.' decimal
/// separator. Empty cells are skipped. Throws std::runtime_error on I/O or
/// format errors.
Table load(const std::string& path);

/// Directory containing the golden fixtures: explicit argument if non-empty,
/// else $SLET_GOLDEN_DIR, else the compiled-in source data directory.
std::string data_dir(const std::string& override_dir = {});

/// Round half-to-even at `decimals` fractional digits.
double round_to(double value, int decimals);

}  // namespace slet::golden
