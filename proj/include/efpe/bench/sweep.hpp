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

#ifndef EFPE_BENCH_SWEEP_HPP_
#define EFPE_BENCH_SWEEP_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "efpe/bench/config.hpp"
#include "efpe/bench/experiment.hpp"

namespace efpe::bench {

// Sweep file: shared key=value lines, then one "[label]" section per run.
// A section may start from a preset with "preset=table2:...". Precedence:
// section preset, shared lines, section lines, command-line overrides.
struct SweepEntry {
  std::string label;
  std::string directory;  // subdirectory name derived from the label
  ExperimentConfig config;
};

struct SweepPlan {
  std::vector<SweepEntry> entries;
  std::vector<std::string> warnings;
};

// Throws Error(kConfigInvalid) for an empty sweep or a malformed line.
SweepPlan parse_sweep(std::string_view text, const std::string& output_dir,
                      const std::vector<std::string>& overrides = {}, std::string_view origin = "sweep");

struct SweepResult {
  // Exit status of each entry, in plan order.
  std::vector<int> exit_codes;
  std::vector<std::string> failures;
  std::string comparison_path;
};

inline constexpr std::string_view kComparisonHeader =
    "label,traversals,exploitability,max_isregret,epsilon,delta,wall_ms";

// Worker cap from EFPE_THREADS (at least 1), else the hardware concurrency.
int sweep_thread_cap();

// Runs every entry (up to `parallel` at a time), continuing past failures,
// and merges the trajectories into <output_dir>/comparison.csv.
SweepResult run_sweep(const SweepPlan& plan, const std::string& output_dir, int parallel = 1,
                      const RunOptions& options = {});

// Quotes a CSV field when needed.
std::string csv_field(std::string_view text);

}  // namespace efpe::bench

#endif  // EFPE_BENCH_SWEEP_HPP_
