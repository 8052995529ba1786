#include "liouville/lab/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace liouville::lab {

std::string format_number(double x) {
  char buf[40];
  if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", x);
  } else {
    std::snprintf(buf, sizeof buf, "%.17g", x);
  }
  return buf;
}

void Table::add(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("row width does not match columns of " + name);
  }
  rows.push_back(std::move(row));
}

std::filesystem::path Table::write(const std::filesystem::path& dir, OutputFormat format) const {
  const auto path = dir / (name + (format == OutputFormat::Csv ? ".csv" : ".json"));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (format == OutputFormat::Csv) {
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
      out << '\n';
    }
  } else {
    // written by hand so number formatting matches the CSV output
    out << "[";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      out << (r ? ",\n " : "\n ") << "{";
      for (std::size_t c = 0; c < columns.size(); ++c) {
        const double v = rows[r][c];
        out << (c ? ", " : "") << '"' << columns[c] << "\": "
            << (std::isfinite(v) ? format_number(v) : std::string("null"));
      }
      out << "}";
    }
    out << "\n]\n";
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
  return path;
}

}  // namespace liouville::lab
