#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qes::cli {

using Cell = std::variant<double, std::string>;

/// Column-major agnostic result table shared by the CSV, JSON and SVG writers.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  /// Numeric values of one column; string cells and NaN come back as NaN.
  std::vector<double> column(std::size_t index) const;
};

/// One header row, comma separated, numbers through format_number.
void write_csv(std::ostream& out, const Table& table);

/// {"columns": [...], "rows": [[...], ...]} with numbers rounded to the
/// 12 significant digits used in CSV; NaN and infinities become null.
nlohmann::ordered_json to_json(const Table& table);

/// A double as it appears in every emitted JSON document.
nlohmann::ordered_json json_number(double x);

}  // namespace qes::cli
