#include "forecastability/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

#include "forecastability/cli/csv.hpp"
#include "forecastability/error.hpp"

namespace fcast::cli {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string cell_text(const Cell& cell) {
  return std::visit(overloaded{
                        [](std::monostate) { return std::string{}; },
                        [](double v) { return format_number(v); },
                        [](std::size_t v) { return std::to_string(v); },
                        [](bool v) { return std::string(v ? "1" : "0"); },
                        [](const std::string& v) { return v; },
                    },
                    cell);
}

std::optional<double> cell_number(const Cell& cell) {
  // Plot from the formatted text so the SVG shows exactly what the CSV says.
  if (const auto* d = std::get_if<double>(&cell)) {
    double v = 0.0;
    parse_double(format_number(*d), v);
    return v;
  }
  if (const auto* n = std::get_if<std::size_t>(&cell)) return static_cast<double>(*n);
  return std::nullopt;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

}  // namespace

std::size_t Table::column_index(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw ConfigError("table has no column " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

nlohmann::ordered_json table_records(const Table& table) {
  auto records = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& name = table.columns[i];
      std::visit(overloaded{
                     [&](std::monostate) { rec[name] = nullptr; },
                     [&](double v) { rec[name] = *cell_number(v); },
                     [&](std::size_t v) { rec[name] = v; },
                     [&](bool v) { rec[name] = v; },
                     [&](const std::string& v) { rec[name] = v; },
                 },
                 row[i]);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void write_svg_plot(const Table& table, const std::vector<PlotSeries>& series,
                    const std::string& title, const std::string& x_label,
                    const std::string& y_label, std::ostream& out) {
  constexpr double width = 720, height = 440;
  constexpr double left = 80, right = 30, top = 50, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  struct Point {
    std::optional<double> x, y;
  };
  std::vector<std::vector<Point>> data;
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = 0.0, y_hi = 0.0;
  for (const auto& s : series) {
    const std::size_t xi = table.column_index(s.x_column);
    const std::size_t yi = table.column_index(s.y_column);
    auto& pts = data.emplace_back();
    for (const auto& row : table.rows) {
      Point p{cell_number(row[xi]), cell_number(row[yi])};
      if (p.x && p.y) {
        x_lo = std::min(x_lo, *p.x);
        x_hi = std::max(x_hi, *p.x);
        y_lo = std::min(y_lo, *p.y);
        y_hi = std::max(y_hi, *p.y);
      }
      pts.push_back(p);
    }
  }
  if (!std::isfinite(x_lo)) x_lo = 0.0, x_hi = 1.0;
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  y_hi += 0.05 * (y_hi - y_lo);

  auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return top + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"16\">" << xml_escape(title) << "</text>\n";

  // Axes and ticks.
  out << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\"/>\n</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  constexpr int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double xv = x_lo + (x_hi - x_lo) * i / ticks;
    const double yv = y_lo + (y_hi - y_lo) * i / ticks;
    out << "<line x1=\"" << coord(px(xv)) << "\" y1=\"" << top + plot_h << "\" x2=\""
        << coord(px(xv)) << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << coord(px(xv)) << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n"
        << "<line x1=\"" << left - 5 << "\" y1=\"" << coord(py(yv)) << "\" x2=\"" << left
        << "\" y2=\"" << coord(py(yv)) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << left - 8 << "\" y=\"" << coord(py(yv) + 4)
        << "\" text-anchor=\"end\">" << tick_label(yv) << "</text>\n";
  }
  out << "</g>\n"
      << "<text class=\"x-label\" x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << xml_escape(x_label) << "</text>\n"
      << "<text class=\"y-label\" x=\"20\" y=\"" << top + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 20 " << top + plot_h / 2 << ")\">" << xml_escape(y_label)
      << "</text>\n";

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  for (std::size_t s = 0; s < series.size(); ++s) {
    std::string d;
    bool pen_down = false;
    for (const auto& p : data[s]) {
      if (!p.x || !p.y) {
        pen_down = false;
        continue;
      }
      d += (d.empty() ? "" : " ");
      d += pen_down ? "L" : "M";
      d += coord(px(*p.x)) + "," + coord(py(*p.y));
      pen_down = true;
    }
    out << "<path class=\"profile\" data-label=\"" << xml_escape(series[s].label) << "\" d=\"" << d
        << "\" fill=\"none\" stroke=\"" << palette[s % 4] << "\" stroke-width=\"2\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace fcast::cli
