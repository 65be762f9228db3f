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

#ifndef EFPE_BENCH_EXPERIMENT_HPP_
#define EFPE_BENCH_EXPERIMENT_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "efpe/bench/config.hpp"
#include "efpe/error.hpp"
#include "efpe/sequence_form.hpp"
#include "efpe/solver.hpp"

namespace efpe::bench {

// Process exit statuses shared by the CLI verbs.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitSizeMismatch = 3,
  kExitToleranceNotReached = 4,
};

int exit_code_for(ErrorCode code);

inline constexpr std::string_view kTrajectoryHeader = "traversals,exploitability,max_isregret,epsilon,delta,wall_ms";

std::string format_row(const TrajectoryRow& row);
std::string trajectory_csv(const Trajectory& trajectory);

// One line per infoset: "infoset <id> player <p> <label> <action>=<prob> ...".
std::string strategy_listing(const GameTree& tree, const SequenceIndex& idx, const Profile& profile);

// "<version>" in git-describe style, fixed at build time.
std::string version_string();

struct RunOptions {
  bool verify_sizes = false;
  // Stop as soon as a logged row meets every tolerance that is set.
  std::optional<double> until_exploitability;
  std::optional<double> until_max_regret;
};

struct RunOutcome {
  int exit_code = kExitOk;
  SolveResult result;
  GameSize size;
  std::string message;
};

// Generates or loads the game named by the config.
GameTree load_game_tree(const ExperimentConfig& config);

// Throws Error(kGameSizeMismatch) when the game has a published size that
// differs, and Error(kConfigInvalid) when it has none to compare against.
void verify_game_size(const ExperimentConfig& config, const GameSize& size);

// Solves and writes trajectory.csv, final_strategy.txt and meta.json into
// config.output_dir. Library errors propagate as exceptions.
RunOutcome run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace efpe::bench

#endif  // EFPE_BENCH_EXPERIMENT_HPP_
