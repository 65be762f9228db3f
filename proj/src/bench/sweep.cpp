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

#include "efpe/bench/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "efpe/error.hpp"
#include "efpe/format.hpp"

namespace efpe::bench {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string directory_name(std::string_view label) {
  std::string out;
  for (char c : label) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                      c == '-' || c == '+';
    if (keep) {
      out += c;
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "run" : out;
}

struct Section {
  std::string label;
  KeyValues settings;
};

}  // namespace

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

SweepPlan parse_sweep(std::string_view text, const std::string& output_dir,
                      const std::vector<std::string>& overrides, std::string_view origin) {
  KeyValues shared;
  std::vector<Section> sections;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw Error(ErrorCode::kConfigInvalid,
                    std::string(origin) + ":" + std::to_string(line_no) + ": malformed section header");
      }
      sections.push_back({std::string(trim(line.substr(1, line.size() - 2))), {}});
      continue;
    }
    const auto parsed = parse_key_values(line, std::string(origin) + ":" + std::to_string(line_no));
    KeyValues& target = sections.empty() ? shared : sections.back().settings;
    target.insert(target.end(), parsed.begin(), parsed.end());
  }
  if (sections.empty()) throw Error(ErrorCode::kConfigInvalid, std::string(origin) + ": sweep lists no runs");

  SweepPlan plan;
  std::map<std::string, int> seen;
  for (const Section& section : sections) {
    std::string label = section.label;
    const int count = ++seen[label];
    if (count > 1) {
      label += " #" + std::to_string(count);
      plan.warnings.push_back("duplicate label '" + section.label + "' renamed to '" + label + "'");
    }
    ExperimentConfig config;
    for (const auto& [k, v] : section.settings) {
      if (k == "preset") apply_settings(config, preset(v));
    }
    apply_settings(config, shared);
    for (const auto& [k, v] : section.settings) {
      if (k != "preset") apply_setting(config, k, v);
    }
    for (const std::string& o : overrides) {
      const auto [k, v] = parse_override(o);
      apply_setting(config, k, v);
    }
    std::string dir = directory_name(label);
    for (int suffix = 2; std::ranges::any_of(plan.entries, [&](const SweepEntry& e) { return e.directory == dir; });
         ++suffix) {
      dir = directory_name(label) + "_" + std::to_string(suffix);
    }
    config.label = label;
    config.output_dir = (std::filesystem::path(output_dir) / dir).string();
    config.validate();
    plan.entries.push_back({label, dir, std::move(config)});
  }
  return plan;
}

int sweep_thread_cap() {
  if (const char* env = std::getenv("EFPE_THREADS")) {
    if (const auto n = parse_integer(env); n && *n >= 1) return static_cast<int>(*n);
  }
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

SweepResult run_sweep(const SweepPlan& plan, const std::string& output_dir, int parallel, const RunOptions& options) {
  const std::size_t n = plan.entries.size();
  std::vector<RunOutcome> outcomes(n);
  std::vector<std::string> errors(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        outcomes[i] = run_experiment(plan.entries[i].config, options);
        if (outcomes[i].exit_code != kExitOk) errors[i] = outcomes[i].message;
      } catch (const Error& e) {
        outcomes[i].exit_code = exit_code_for(e.code());
        errors[i] = e.what();
      } catch (const std::exception& e) {
        outcomes[i].exit_code = kExitConfigError;
        errors[i] = e.what();
      }
    }
  };
  const int workers = std::clamp(parallel, 1, std::max(1, static_cast<int>(n)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  SweepResult result;
  std::string csv(kComparisonHeader);
  csv += '\n';
  for (std::size_t i = 0; i < n; ++i) {
    result.exit_codes.push_back(outcomes[i].exit_code);
    if (!errors[i].empty()) result.failures.push_back(plan.entries[i].label + ": " + errors[i]);
    const std::string label = csv_field(plan.entries[i].label);
    for (const TrajectoryRow& row : outcomes[i].result.trajectory) csv += label + "," + format_row(row) + "\n";
  }
  std::filesystem::create_directories(output_dir);
  result.comparison_path = (std::filesystem::path(output_dir) / "comparison.csv").string();
  std::ofstream out(result.comparison_path, std::ios::binary);
  if (!out || !(out << csv)) throw Error(ErrorCode::kIoError, "cannot write '" + result.comparison_path + "'");
  return result;
}

}  // namespace efpe::bench
