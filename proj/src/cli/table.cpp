#include "qes/cli/table.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "qes/format.hpp"

namespace qes::cli {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row width does not match the header");
  rows.push_back(std::move(row));
}

std::vector<double> Table::column(std::size_t index) const {
  std::vector<double> values;
  values.reserve(rows.size());
  for (const auto& row : rows) {
    const double* x = std::get_if<double>(&row.at(index));
    values.push_back(x ? *x : std::numeric_limits<double>::quiet_NaN());
  }
  return values;
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t k = 0; k < table.columns.size(); ++k) out << (k ? "," : "") << table.columns[k];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out << ",";
      if (const double* x = std::get_if<double>(&row[k])) {
        out << format_number(*x);
      } else {
        out << std::get<std::string>(row[k]);
      }
    }
    out << "\n";
  }
}

nlohmann::ordered_json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_to_output(x);
}

nlohmann::ordered_json to_json(const Table& table) {
  nlohmann::ordered_json doc;
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto entry = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (const double* x = std::get_if<double>(&cell)) {
        entry.push_back(json_number(*x));
      } else {
        entry.push_back(std::get<std::string>(cell));
      }
    }
    rows.push_back(std::move(entry));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

}  // namespace qes::cli
