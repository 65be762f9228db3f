// Copyright 2026 The EFPE Solver Authors.
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

#include "efpe/bench/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "efpe/bench/experiment.hpp"
#include "efpe/bench/sweep.hpp"
#include "efpe/error.hpp"
#include "efpe/format.hpp"

namespace efpe::bench {

std::optional<PlotMetric> parse_metric(std::string_view name) {
  if (name == "exploitability") return PlotMetric::kExploitability;
  if (name == "max_regret" || name == "max_isregret") return PlotMetric::kMaxRegret;
  return std::nullopt;
}

namespace {

[[noreturn]] void mismatch(std::size_t line, const std::string& why) {
  throw Error(ErrorCode::kSchemaMismatch, "line " + std::to_string(line) + ": " + why);
}

// Splits one CSV record; only the label column may be quoted.
std::vector<std::string> split_record(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) mismatch(line_no, "unterminated quote");
  fields.push_back(std::move(field));
  return fields;
}

std::string escape_xml(std::string_view s) {
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

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::vector<Series> read_series(std::string_view csv, PlotMetric metric, std::string_view fallback_label) {
  std::vector<Series> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool labelled = false;
  while (pos < csv.size()) {
    auto end = csv.find('\n', pos);
    if (end == std::string_view::npos) end = csv.size();
    std::string_view line = csv.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1) {
      if (line == kComparisonHeader) {
        labelled = true;
      } else if (line != kTrajectoryHeader) {
        mismatch(1, "unexpected header '" + std::string(line) + "'");
      }
      continue;
    }
    if (line.empty()) continue;
    const std::vector<std::string> f = split_record(line, line_no);
    const std::size_t offset = labelled ? 1 : 0;
    if (f.size() != 6 + offset) mismatch(line_no, "expected " + std::to_string(6 + offset) + " fields");
    const std::string label = labelled ? f[0] : std::string(fallback_label);
    const auto x = parse_real(f[offset]);
    const auto y = parse_real(f[offset + (metric == PlotMetric::kExploitability ? 1 : 2)]);
    if (!x || !y) mismatch(line_no, "non-numeric field");
    auto it = std::ranges::find_if(out, [&](const Series& s) { return s.label == label; });
    if (it == out.end()) {
      out.push_back({label, {}});
      it = std::prev(out.end());
    }
    it->points.emplace_back(*x, *y);
  }
  if (line_no == 0) mismatch(1, "empty file");
  return out;
}

std::string render_svg(const std::vector<Series>& series, PlotMetric metric) {
  constexpr double kWidth = 860, kHeight = 520;
  constexpr double kLeft = 80, kRight = 250, kTop = 30, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

  auto lx = [](double x) { return std::log10(std::max(x, 1.0)); };
  auto ly = [](double y) { return std::log10(std::max(y, kPlotFloor)); };
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      x_lo = std::min(x_lo, lx(x));
      x_hi = std::max(x_hi, lx(x));
      y_lo = std::min(y_lo, ly(y));
      y_hi = std::max(y_hi, ly(y));
    }
  }
  if (!std::isfinite(x_lo)) x_lo = 0, x_hi = 1, y_lo = -1, y_hi = 0;
  x_lo = std::floor(x_lo), x_hi = std::max(std::ceil(x_hi), x_lo + 1);
  y_lo = std::floor(y_lo), y_hi = std::max(std::ceil(y_hi), y_lo + 1);
  auto px = [&](double x) { return kLeft + (lx(x) - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return kTop + (y_hi - ly(y)) / (y_hi - y_lo) * plot_h; };

  const std::string y_name = metric == PlotMetric::kExploitability ? "exploitability" : "max information-set regret";
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
                    num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(plot_w) + "\" height=\"" +
         num(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double e = x_lo; e <= x_hi + 1e-9; e += 1.0) {
    const double x = kLeft + (e - x_lo) / (x_hi - x_lo) * plot_w;
    svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x) + "\" y2=\"" + num(kTop + plot_h) +
           "\" stroke=\"#ddd\"/>\n";
    svg += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + plot_h + 18) + "\" text-anchor=\"middle\">1e" +
           std::to_string(static_cast<int>(e)) + "</text>\n";
  }
  const int y_step = std::max(1, static_cast<int>(std::ceil((y_hi - y_lo) / 10)));
  for (double e = y_lo; e <= y_hi + 1e-9; e += y_step) {
    const double y = kTop + (y_hi - e) / (y_hi - y_lo) * plot_h;
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft + plot_w) + "\" y2=\"" + num(y) +
           "\" stroke=\"#ddd\"/>\n";
    svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">1e" +
           std::to_string(static_cast<int>(e)) + "</text>\n";
  }
  svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 15) +
         "\" text-anchor=\"middle\">game tree traversals</text>\n";
  svg += "<text x=\"18\" y=\"" + num(kTop + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         num(kTop + plot_h / 2) + ")\">" + y_name + "</text>\n";

  bool any_floor = false;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    const std::string color = kColors[i % std::size(kColors)];
    const bool at_floor = std::ranges::all_of(s.points, [](const auto& p) { return p.second <= kPlotFloor; });
    any_floor = any_floor || at_floor;
    if (s.points.size() == 1) {
      svg += "<circle cx=\"" + num(px(s.points[0].first)) + "\" cy=\"" + num(py(s.points[0].second)) +
             "\" r=\"3.5\" fill=\"" + color + "\"/>\n";
    } else if (!s.points.empty()) {
      svg += "<polyline fill=\"none\" stroke-width=\"1.6\" stroke=\"" + color + "\" points=\"";
      for (const auto& [x, y] : s.points) svg += num(px(x)) + "," + num(py(y)) + " ";
      svg += "\"/>\n";
    }
    const double ly_pos = kTop + 14 + 20 * static_cast<double>(i);
    const double lx_pos = kLeft + plot_w + 16;
    svg += "<line x1=\"" + num(lx_pos) + "\" y1=\"" + num(ly_pos - 4) + "\" x2=\"" + num(lx_pos + 22) + "\" y2=\"" +
           num(ly_pos - 4) + "\" stroke-width=\"2\" stroke=\"" + color + "\"/>\n";
    svg += "<text x=\"" + num(lx_pos + 28) + "\" y=\"" + num(ly_pos) + "\">" + escape_xml(s.label) +
           (at_floor ? " *" : "") + "</text>\n";
  }
  if (any_floor) {
    svg += "<text x=\"" + num(kLeft + plot_w + 16) + "\" y=\"" + num(kTop + plot_h) +
           "\" font-size=\"10\">* all values at the 1e-16 floor</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace efpe::bench
