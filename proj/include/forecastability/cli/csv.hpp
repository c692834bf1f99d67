#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace fcast::cli {

/// Parses a decimal number with '.' as the separator, independent of locale.
/// Returns false unless the whole field (after trimming blanks) is consumed.
bool parse_double(std::string_view field, double& out);

std::vector<std::string> split_fields(std::string_view line);

/// Reads a series from either a single value column or (index, value) pairs.
/// A first row that is not entirely numeric is treated as a header. Blank
/// lines are skipped. Throws ParseError with the offending line number.
std::vector<double> read_series_csv(std::istream& in);
std::vector<double> read_series_csv_file(const std::string& path);

struct ProbeRow {
  std::size_t t_index = 0;
  std::size_t horizon = 0;
  double log_density = 0.0;
};

/// Reads (t_index, horizon, log_density) rows. With a header, columns are
/// matched by name in any order; without one they are taken positionally.
std::vector<ProbeRow> read_probe_csv(std::istream& in);
std::vector<ProbeRow> read_probe_csv_file(const std::string& path);

/// "%.9g": the fixed formatting of every reported number.
std::string format_number(double v);

/// "%.17g": round-trip exact, used for series data.
std::string format_exact(double v);

}  // namespace fcast::cli
