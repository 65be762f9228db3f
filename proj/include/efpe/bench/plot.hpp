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

#ifndef EFPE_BENCH_PLOT_HPP_
#define EFPE_BENCH_PLOT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace efpe::bench {

enum class PlotMetric { kExploitability, kMaxRegret };

std::optional<PlotMetric> parse_metric(std::string_view name);  // "exploitability", "max_regret"

// Values at or below zero are drawn at this floor on the log axis.
inline constexpr double kPlotFloor = 1e-16;

struct Series {
  std::string label;
  // (traversals, metric value), in file order.
  std::vector<std::pair<double, double>> points;
};

// Reads a comparison.csv (or a single trajectory.csv, which becomes one
// series named `fallback_label`). Throws Error(kSchemaMismatch) on a header
// or row that does not fit the schema.
std::vector<Series> read_series(std::string_view csv, PlotMetric metric, std::string_view fallback_label = "run");

// Self-contained SVG with log-scaled axes, one polyline per series (a single
// marker for one-point series) and a legend.
std::string render_svg(const std::vector<Series>& series, PlotMetric metric);

}  // namespace efpe::bench

#endif  // EFPE_BENCH_PLOT_HPP_
