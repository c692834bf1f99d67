#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace fcast::cli {

/// Empty cell, number, count, flag or text.
using Cell = std::variant<std::monostate, double, std::size_t, bool, std::string>;

/// Column-ordered result table shared by every output format, so the CSV,
/// JSON and SVG views never disagree.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  [[nodiscard]] std::size_t column_index(const std::string& name) const;
};

/// Header row then one line per row; numbers as "%.9g", flags as 0/1, empty
/// cells empty, LF line endings.
void write_csv(const Table& table, std::ostream& out);

/// Array of per-row objects keyed by column name. Doubles go through the same
/// 9-significant-digit formatting as the CSV.
nlohmann::ordered_json table_records(const Table& table);

struct PlotSeries {
  std::string label;
  std::string x_column;
  std::string y_column;
};

/// Static SVG 1.1 line chart with labelled axes and one <path> per series.
/// Coordinates are read from `table`; empty cells break the line.
void write_svg_plot(const Table& table, const std::vector<PlotSeries>& series,
                    const std::string& title, const std::string& x_label,
                    const std::string& y_label, std::ostream& out);

}  // namespace fcast::cli
