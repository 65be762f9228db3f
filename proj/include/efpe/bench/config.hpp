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

#ifndef EFPE_BENCH_CONFIG_HPP_
#define EFPE_BENCH_CONFIG_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "efpe/games.hpp"
#include "efpe/solver.hpp"

namespace efpe::bench {

// One benchmark run: which game, how to solve it, where to write results.
struct ExperimentConfig {
  // Either a generated game or a serialized one.
  std::optional<GameSpec> game;
  std::string game_file;
  SolverConfig solver;
  // Recorded in metadata only; every solver here is deterministic.
  long long seed = 0;
  std::string output_dir = "out";
  std::string label;

  // Throws Error(kConfigInvalid) naming the field.
  void validate() const;
  // Short human-readable description of the game source.
  std::string game_name() const;
};

// Flat key=value settings in file order. Blank lines and lines starting with
// '#' are skipped.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues parse_key_values(std::string_view text, std::string_view origin = "config");
// "key=value" from the command line.
std::pair<std::string, std::string> parse_override(std::string_view text);

// Applies one setting. Unknown keys and malformed values throw
// Error(kConfigInvalid).
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);
void apply_settings(ExperimentConfig& config, const KeyValues& settings);

// All settings that reproduce the config, in a stable order.
KeyValues describe(const ExperimentConfig& config);

// Built-in presets with the published RTCFR+ (adp) hyperparameters:
// "table2:kuhn3", "table2:leduc3", "table2:leduc5", "table2:goofspiel3",
// "table2:goofspiel4", "table2:liarsdice5", "table2:liarsdice6".
std::vector<std::string> preset_names();
KeyValues preset(std::string_view name);

// Config from defaults, then an optional preset, then a config file, then
// overrides, in that order.
ExperimentConfig load_experiment(const std::optional<std::string>& preset_name,
                                 const std::optional<std::string>& config_path,
                                 const std::vector<std::string>& overrides);

std::string read_text_file(const std::string& path);

}  // namespace efpe::bench

#endif  // EFPE_BENCH_CONFIG_HPP_
