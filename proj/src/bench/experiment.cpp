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

#include "efpe/bench/experiment.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "efpe/error.hpp"
#include "efpe/format.hpp"
#include "efpe/games.hpp"

#ifndef EFPE_VERSION
#define EFPE_VERSION "0.0.0-unknown"
#endif

namespace efpe::bench {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kGameSizeMismatch: return kExitSizeMismatch;
    default: return kExitConfigError;
  }
}

std::string format_row(const TrajectoryRow& row) {
  return std::to_string(row.traversals) + "," + format_real(row.exploitability) + "," +
         format_real(row.max_isregret) + "," + format_real(row.epsilon) + "," + format_real(row.delta) + "," +
         std::to_string(row.wall_ms);
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::string out(kTrajectoryHeader);
  out += '\n';
  for (const TrajectoryRow& row : trajectory) {
    out += format_row(row);
    out += '\n';
  }
  return out;
}

std::string strategy_listing(const GameTree& tree, const SequenceIndex& idx, const Profile& profile) {
  std::string out;
  for (std::size_t i = 0; i < idx.num_infosets(); ++i) {
    const InfosetEntry& info = idx.infoset(static_cast<InfosetId>(i));
    const InfoSet& raw = tree.infoset(info.id);
    out += "infoset " + std::to_string(info.id) + " player " + std::to_string(info.player) + " " + raw.label;
    const auto x = profile[static_cast<std::size_t>(info.player - 1)].at(info);
    for (int a = 0; a < info.num_actions; ++a) {
      out += " " + tree.action_label(raw.actions[static_cast<std::size_t>(a)]) + "=" +
             format_real(x[static_cast<std::size_t>(a)]);
    }
    out += '\n';
  }
  return out;
}

std::string version_string() { return EFPE_VERSION; }

GameTree load_game_tree(const ExperimentConfig& config) {
  if (config.game) return generate(*config.game);
  return load_game(config.game_file);
}

void verify_game_size(const ExperimentConfig& config, const GameSize& size) {
  const auto expected = config.game ? reference_size(*config.game) : std::nullopt;
  if (!expected) {
    throw Error(ErrorCode::kConfigInvalid, "verify-sizes: no published size for " + config.game_name());
  }
  if (!(*expected == size)) {
    auto triple = [](const GameSize& s) {
      return std::to_string(s.infosets) + "/" + std::to_string(s.sequences) + "/" + std::to_string(s.leaves);
    };
    throw Error(ErrorCode::kGameSizeMismatch,
                config.game_name() + " has " + triple(size) + ", expected " + triple(*expected));
  }
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
}

bool meets(const RunOptions& o, const TrajectoryRow& row) {
  return (!o.until_exploitability || row.exploitability <= *o.until_exploitability) &&
         (!o.until_max_regret || row.max_isregret <= *o.until_max_regret);
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const SequenceFormGame game(load_game_tree(config));
  RunOutcome outcome;
  outcome.size = game_size(game);
  if (options.verify_sizes) verify_game_size(config, outcome.size);

  const bool until = options.until_exploitability || options.until_max_regret;
  bool reached = false;
  TrajectorySink sink;
  if (until) {
    sink = [&](const LogPoint& point) {
      reached = meets(options, point.row);
      return !reached;
    };
  }
  outcome.result = solve(game, config.solver, sink);
  const auto wall_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  const std::filesystem::path dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create '" + dir.string() + "': " + ec.message());
  write_file(dir / "trajectory.csv", trajectory_csv(outcome.result.trajectory));
  write_file(dir / "final_strategy.txt", strategy_listing(game.tree, game.index, outcome.result.strategy));

  nlohmann::ordered_json meta;
  meta["version"] = version_string();
  meta["label"] = config.label;
  meta["game"] = {{"name", game.tree.name().empty() ? config.game_name() : game.tree.name()},
                  {"infosets", outcome.size.infosets},
                  {"sequences", outcome.size.sequences},
                  {"leaves", outcome.size.leaves}};
  nlohmann::ordered_json settings = nlohmann::ordered_json::object();
  for (const auto& [k, v] : describe(config)) settings[k] = v;
  meta["config"] = settings;
  meta["seed"] = config.seed;
  meta["status"] = std::string(status_name(outcome.result.status));
  meta["traversals"] = outcome.result.traversals;
  meta["iterations"] = outcome.result.iterations;
  meta["rt_bspps"] = outcome.result.bspps;
  meta["final_epsilon"] = outcome.result.final_epsilon;
  meta["final_delta"] = outcome.result.final_delta;
  meta["epsilon_decays"] = outcome.result.epsilon_decays;
  if (!outcome.result.trajectory.empty()) {
    const TrajectoryRow& last = outcome.result.trajectory.back();
    meta["last_row"] = {{"traversals", last.traversals},
                        {"exploitability", last.exploitability},
                        {"max_isregret", last.max_isregret}};
  }
  meta["wall_time_ms"] = wall_ms;
  write_file(dir / "meta.json", meta.dump(2) + "\n");

  if (until && !reached) {
    outcome.exit_code = kExitToleranceNotReached;
    outcome.message = "tolerance not reached within the traversal budget";
  }
  return outcome;
}

}  // namespace efpe::bench
