// Copyright 2026 The Blackwell Solver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "blackwell/experiment.h"

namespace blackwell {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 460.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 180.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                   "#bcbd22", "#17becf"};

std::string Fixed(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                       std::chars_format::fixed, 2);
  if (ec != std::errc()) return "0";
  return std::string(buffer, ptr);
}

struct Series {
  std::string algorithm;
  std::vector<std::pair<double, double>> points;
};

struct DecadeRange {
  int lo;
  int hi;
};

DecadeRange Decades(double min, double max) {
  int lo = static_cast<int>(std::floor(std::log10(min)));
  int hi = static_cast<int>(std::ceil(std::log10(max)));
  if (hi <= lo) hi = lo + 1;
  return {lo, hi};
}

std::string Escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

bool IsAggregate(const TraceRow& row) {
  return row.run_id.rfind("mean:", 0) == 0;
}

}  // namespace

std::string RenderSvg(const std::vector<TraceRow>& rows, PlotAxis axis) {
  if (rows.empty()) throw DomainError("plot: no rows");
  // Precomputed means are dropped when the raw runs are also given.
  std::set<std::string> has_raw;
  for (const TraceRow& row : rows) {
    if (!IsAggregate(row)) has_raw.insert(row.algorithm);
  }
  std::vector<TraceRow> inputs;
  for (const TraceRow& row : rows) {
    if (!IsAggregate(row) || !has_raw.count(row.algorithm)) {
      inputs.push_back(row);
    }
  }
  std::set<std::string> metrics;
  std::map<std::string, std::set<std::string>> runs_per_algorithm;
  for (const TraceRow& row : inputs) {
    metrics.insert(row.metric);
    runs_per_algorithm[row.algorithm].insert(row.run_id);
  }
  if (metrics.size() != 1) throw DomainError("plot: inputs mix metrics");
  bool needs_mean = false;
  for (const auto& [algorithm, runs] : runs_per_algorithm) {
    needs_mean = needs_mean || runs.size() > 1;
  }
  const std::vector<TraceRow> plotted =
      needs_mean ? AggregateRows(inputs) : inputs;

  std::vector<Series> series;
  std::map<std::string, std::size_t> index;
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = 0.0;
  double y_min = std::numeric_limits<double>::infinity();
  double y_max = 0.0;
  for (const TraceRow& row : plotted) {
    auto [it, inserted] = index.try_emplace(row.algorithm, series.size());
    if (inserted) series.push_back({row.algorithm, {}});
    const double x = axis == PlotAxis::kIterations
                         ? static_cast<double>(row.iteration)
                         : row.elapsed_seconds;
    const double y = row.value;
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
      continue;
    }
    series[it->second].points.emplace_back(x, y);
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
  }
  if (!(x_max > 0.0)) {
    throw DomainError("plot: no positive points for a log-log plot");
  }
  for (Series& s : series) std::sort(s.points.begin(), s.points.end());

  const DecadeRange xr = Decades(x_min, x_max);
  const DecadeRange yr = Decades(y_min, y_max);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) {
    return kLeft + plot_w * (std::log10(x) - xr.lo) / (xr.hi - xr.lo);
  };
  const auto py = [&](double y) {
    return kTop + plot_h * (1.0 - (std::log10(y) - yr.lo) / (yr.hi - yr.lo));
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << Fixed(kWidth) << "\" height=\"" << Fixed(kHeight) << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << Fixed(kWidth) << "\" height=\""
      << Fixed(kHeight) << "\" fill=\"white\"/>\n"
      << "<rect x=\"" << Fixed(kLeft) << "\" y=\"" << Fixed(kTop)
      << "\" width=\"" << Fixed(plot_w) << "\" height=\"" << Fixed(plot_h)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int d = xr.lo; d <= xr.hi; ++d) {
    const double x = kLeft + plot_w * (d - xr.lo) / (xr.hi - xr.lo);
    svg << "<line x1=\"" << Fixed(x) << "\" y1=\"" << Fixed(kTop + plot_h)
        << "\" x2=\"" << Fixed(x) << "\" y2=\"" << Fixed(kTop + plot_h + 5)
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << Fixed(x) << "\" y=\"" << Fixed(kTop + plot_h + 20)
        << "\" font-size=\"12\" text-anchor=\"middle\">1e" << d
        << "</text>\n";
  }
  for (int d = yr.lo; d <= yr.hi; ++d) {
    const double y = kTop + plot_h * (1.0 - double(d - yr.lo) / (yr.hi - yr.lo));
    svg << "<line x1=\"" << Fixed(kLeft - 5) << "\" y1=\"" << Fixed(y)
        << "\" x2=\"" << Fixed(kLeft) << "\" y2=\"" << Fixed(y)
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << Fixed(kLeft - 8) << "\" y=\"" << Fixed(y + 4)
        << "\" font-size=\"12\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  svg << "<text x=\"" << Fixed(kLeft + plot_w / 2) << "\" y=\""
      << Fixed(kHeight - 15) << "\" font-size=\"14\" text-anchor=\"middle\">"
      << (axis == PlotAxis::kIterations ? "iterations" : "seconds")
      << "</text>\n"
      << "<text x=\"20\" y=\"" << Fixed(kTop + plot_h / 2)
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << Fixed(kTop + plot_h / 2) << ")\">" << Escape(*metrics.begin())
      << "</text>\n";

  constexpr std::size_t kNumColors = sizeof(kColors) / sizeof(kColors[0]);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    const char* color = kColors[i % kNumColors];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      if (k > 0) svg << ' ';
      svg << Fixed(px(s.points[k].first)) << ',' << Fixed(py(s.points[k].second));
    }
    svg << "\"/>\n";
    const double ly = kTop + 15.0 + 18.0 * static_cast<double>(i);
    const double lx = kWidth - kRight + 15.0;
    svg << "<line x1=\"" << Fixed(lx) << "\" y1=\"" << Fixed(ly) << "\" x2=\""
        << Fixed(lx + 20) << "\" y2=\"" << Fixed(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << Fixed(lx + 26) << "\" y=\"" << Fixed(ly + 4)
        << "\" font-size=\"12\">" << Escape(s.algorithm) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace blackwell
