#include "forecastability/cli/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>

#include "forecastability/error.hpp"

namespace fcast::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

bool parse_index(std::string_view field, std::size_t& out) {
  double v = 0.0;
  if (!parse_double(field, v) || v < 0.0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    return false;
  }
  out = static_cast<std::size_t>(v);
  return true;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return in;
}

std::string where(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

}  // namespace

bool parse_double(std::string_view field, double& out) {
  field = trim(field);
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  const auto res = std::from_chars(field.data(), field.data() + field.size(), out);
  return res.ec == std::errc() && res.ptr == field.data() + field.size();
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> read_series_csv(std::istream& in) {
  std::vector<double> values;
  std::optional<std::size_t> width;
  std::string line;
  std::size_t line_no = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    std::vector<double> nums(fields.size());
    bool numeric = true;
    for (std::size_t i = 0; i < fields.size(); ++i) numeric &= parse_double(fields[i], nums[i]);
    if (first_row) {
      first_row = false;
      if (fields.size() > 2) throw ParseError(where(line_no) + "expected 1 or 2 columns");
      width = fields.size();
      if (!numeric) continue;  // header
    }
    if (fields.size() != *width) {
      throw ParseError(where(line_no) + "expected " + std::to_string(*width) + " columns, got " +
                       std::to_string(fields.size()));
    }
    if (!numeric) throw ParseError(where(line_no) + "non-numeric value");
    values.push_back(nums.back());
  }
  if (values.empty()) throw ParseError("no observations in input");
  return values;
}

std::vector<double> read_series_csv_file(const std::string& path) {
  auto in = open(path);
  return read_series_csv(in);
}

std::vector<ProbeRow> read_probe_csv(std::istream& in) {
  std::vector<ProbeRow> rows;
  std::size_t col_t = 0, col_h = 1, col_ld = 2;
  std::string line;
  std::size_t line_no = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 3) throw ParseError(where(line_no) + "probe rows need 3 columns");
    if (first_row) {
      first_row = false;
      double dummy = 0.0;
      if (!parse_double(fields[0], dummy)) {
        std::optional<std::size_t> t, h, ld;
        for (std::size_t i = 0; i < 3; ++i) {
          if (fields[i] == "t_index") t = i;
          if (fields[i] == "horizon") h = i;
          if (fields[i] == "log_density") ld = i;
        }
        if (!t || !h || !ld) {
          throw ParseError(where(line_no) + "probe header must name t_index, horizon, log_density");
        }
        col_t = *t;
        col_h = *h;
        col_ld = *ld;
        continue;
      }
    }
    ProbeRow row;
    if (!parse_index(fields[col_t], row.t_index) || !parse_index(fields[col_h], row.horizon) ||
        !parse_double(fields[col_ld], row.log_density)) {
      throw ParseError(where(line_no) + "malformed probe row");
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw ParseError("probe file has no rows");
  return rows;
}

std::vector<ProbeRow> read_probe_csv_file(const std::string& path) {
  auto in = open(path);
  return read_probe_csv(in);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string format_exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace fcast::cli
