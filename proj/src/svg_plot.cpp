// Copyright 2026 The nppt-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <sstream>

#include "nppt/harness.hpp"

namespace nppt::cli {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 400;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 20;
constexpr double kBottom = 50;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
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

std::string fmt(const char* pattern, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (hi - lo > 0) return;
    const double half = std::max(0.5, std::abs(lo) * 0.1);
    lo -= half;
    hi += half;
  }
};

using Series = std::vector<std::pair<double, double>>;

}  // namespace

std::string render_svg_plot(const std::string& csv_text, const std::string& x_column,
                            const std::vector<std::string>& y_columns) {
  if (y_columns.empty()) throw PlotInputError("no y columns requested");
  std::istringstream lines(csv_text);
  std::string line;
  if (!std::getline(lines, line)) throw PlotInputError("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_row(line);

  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw PlotInputError("column '" + name + "' not in CSV header");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t xi = column(x_column);
  std::vector<std::size_t> yi;
  for (const auto& name : y_columns) yi.push_back(column(name));

  std::vector<Series> series(y_columns.size());
  Range xr;
  Range yr;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_row(line);
    if (xi >= cells.size()) continue;
    const auto x = parse_number(cells[xi]);
    if (!x) continue;
    for (std::size_t s = 0; s < yi.size(); ++s) {
      if (yi[s] >= cells.size()) continue;
      const auto y = parse_number(cells[yi[s]]);
      if (!y) continue;
      series[s].emplace_back(*x, *y);
      xr.add(*x);
      yr.add(*y);
    }
  }
  if (!(xr.lo <= xr.hi)) throw PlotInputError("no numeric rows to plot");
  xr.pad();
  yr.pad();

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw
      << "\" y2=\"" << kTop + ph << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + ph << "\" stroke=\"black\"/>\n";
  if (yr.lo < 0 && yr.hi > 0) {
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << fmt("%.2f", py(0)) << "\" x2=\""
        << kLeft + pw << "\" y2=\"" << fmt("%.2f", py(0))
        << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  }
  svg << "<text x=\"" << kLeft << "\" y=\"" << kTop + ph + 16
      << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt("%.4g", xr.lo) << "</text>\n"
      << "<text x=\"" << kLeft + pw << "\" y=\"" << kTop + ph + 16
      << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt("%.4g", xr.hi) << "</text>\n"
      << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + ph
      << "\" font-size=\"11\" text-anchor=\"end\">" << fmt("%.4g", yr.lo) << "</text>\n"
      << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + 4
      << "\" font-size=\"11\" text-anchor=\"end\">" << fmt("%.4g", yr.hi) << "</text>\n";

  std::string y_label;
  for (const auto& name : y_columns) y_label += (y_label.empty() ? "" : ", ") + name;
  svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10
      << "\" font-size=\"13\" text-anchor=\"middle\">" << xml_escape(x_column) << "</text>\n"
      << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" font-size=\"13\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 16 " << kTop + ph / 2 << ")\">" << xml_escape(y_label)
      << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    const auto& pts = series[s];
    if (pts.size() == 1) {
      svg << "<circle cx=\"" << fmt("%.2f", px(pts[0].first)) << "\" cy=\""
          << fmt("%.2f", py(pts[0].second)) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
    } else if (pts.size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      for (std::size_t k = 0; k < pts.size(); ++k) {
        svg << (k ? " " : "") << fmt("%.2f", px(pts[k].first)) << ','
            << fmt("%.2f", py(pts[k].second));
      }
      svg << "\"/>\n";
    }
    const double ly = kTop + 14 + 16 * static_cast<double>(s);
    svg << "<line x1=\"" << kLeft + pw - 120 << "\" y1=\"" << ly - 4 << "\" x2=\""
        << kLeft + pw - 100 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << kLeft + pw - 95 << "\" y=\"" << ly << "\" font-size=\"11\">"
        << xml_escape(y_columns[s]) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace nppt::cli
