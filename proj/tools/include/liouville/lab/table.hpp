#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "liouville/lab/run_config.hpp"

namespace liouville::lab {

/// Numeric table written as CSV (header row, '\n' endings) or as a JSON array
/// of records. Values print with 17 significant digits.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row);
  /// Writes `<name>.csv` or `<name>.json` into dir and returns the path.
  std::filesystem::path write(const std::filesystem::path& dir, OutputFormat format) const;
};

/// printf("%.17g"), with integers printed without exponent.
std::string format_number(double x);

}  // namespace liouville::lab
