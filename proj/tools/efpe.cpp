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

// Command-line front end: gen, inspect, solve, sweep, plot.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "efpe/bench/config.hpp"
#include "efpe/bench/experiment.hpp"
#include "efpe/bench/plot.hpp"
#include "efpe/bench/sweep.hpp"
#include "efpe/error.hpp"
#include "efpe/games.hpp"
#include "efpe/sequence_form.hpp"

namespace {

using namespace efpe;
using namespace efpe::bench;

int run_gen(const std::string& family_name, int rank, const std::string& out) {
  const auto family = parse_family(family_name);
  if (!family) throw Error(ErrorCode::kConfigInvalid, "family: unknown game family '" + family_name + "'");
  const GameSpec spec{*family, rank};
  const GameTree tree = generate(spec);
  if (out.empty() || out == "-") {
    write_game(tree, std::cout);
  } else {
    save_game(tree, out);
    const GameSize size = game_size(SequenceFormGame(GameTree(tree)));
    std::cout << spec.display_name() << " -> " << out << " (" << size.infosets << " infosets, " << size.sequences
              << " sequences, " << size.leaves << " leaves)\n";
  }
  return kExitOk;
}

int run_inspect(const std::string& path) {
  const SequenceFormGame game(load_game(path));
  const GameSize size = game_size(game);
  const std::string name = game.tree.name().empty() ? path : game.tree.name();
  std::cout << "Game Instance & Information Sets & Sequences & Leaves\n";
  std::cout << name << " & " << size.infosets << " & " << size.sequences << " & " << size.leaves << "\n";
  return kExitOk;
}

std::optional<std::string> opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extensive-form perfect equilibrium solver and benchmark harness"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  std::string family, gen_out;
  int rank = 3;
  auto* gen = app.add_subcommand("gen", "Generate a benchmark game and serialize it");
  gen->add_option("--family", family, "kuhn, leduc, goofspiel or liars_dice")->required();
  gen->add_option("--rank", rank, "Game size parameter")->required();
  gen->add_option("--out", gen_out, "Output file (stdout when omitted)");

  std::string inspect_path;
  auto* inspect = app.add_subcommand("inspect", "Print the size of a serialized game");
  inspect->add_option("path", inspect_path, "Game file")->required();

  std::string config_path, preset_name, solve_out;
  std::vector<std::string> overrides;
  bool verify_sizes = false;
  std::optional<double> until_exploitability, until_max_regret;
  auto* solve_cmd = app.add_subcommand("solve", "Run one experiment");
  solve_cmd->add_option("--config", config_path, "key=value config file");
  solve_cmd->add_option("--preset", preset_name, "Built-in preset, e.g. table2:kuhn3");
  solve_cmd->add_option("--set", overrides, "Override one setting (key=value); repeatable");
  solve_cmd->add_option("--out", solve_out, "Output directory");
  solve_cmd->add_flag("--verify-sizes", verify_sizes, "Fail unless the game matches its published size");
  solve_cmd->add_option("--until-exploitability", until_exploitability, "Stop once exploitability is below this");
  solve_cmd->add_option("--until-max-regret", until_max_regret, "Stop once max infoset regret is below this");

  std::string sweep_path, sweep_out = "out";
  std::vector<std::string> sweep_overrides;
  int parallel = 1;
  auto* sweep = app.add_subcommand("sweep", "Run every entry of a sweep file");
  sweep->add_option("file", sweep_path, "Sweep file")->required();
  sweep->add_option("--out", sweep_out, "Output directory");
  sweep->add_option("--parallel", parallel, "Concurrent runs (capped by EFPE_THREADS)")->check(CLI::PositiveNumber);
  sweep->add_option("--set", sweep_overrides, "Override applied to every entry; repeatable");

  std::string plot_csv, plot_out, metric_name = "exploitability";
  auto* plot = app.add_subcommand("plot", "Render a comparison or trajectory CSV as SVG");
  plot->add_option("csv", plot_csv, "comparison.csv or trajectory.csv")->required();
  plot->add_option("--metric", metric_name, "exploitability or max_regret");
  plot->add_option("--out", plot_out, "Output SVG (stdout when omitted)");

  auto* presets = app.add_subcommand("presets", "List built-in presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfigError;
  }

  try {
    if (*gen) return run_gen(family, rank, gen_out);
    if (*inspect) return run_inspect(inspect_path);
    if (*presets) {
      for (const std::string& name : preset_names()) std::cout << name << "\n";
      return kExitOk;
    }
    if (*solve_cmd) {
      if (!solve_out.empty()) overrides.push_back("output_dir=" + solve_out);
      const ExperimentConfig config = load_experiment(opt(preset_name), opt(config_path), overrides);
      RunOptions options;
      options.verify_sizes = verify_sizes;
      options.until_exploitability = until_exploitability;
      options.until_max_regret = until_max_regret;
      const RunOutcome outcome = run_experiment(config, options);
      const auto& last = outcome.result.trajectory;
      std::cout << config.game_name() << ": " << status_name(outcome.result.status) << " after "
                << outcome.result.traversals << " traversals";
      if (!last.empty()) {
        std::cout << ", exploitability " << last.back().exploitability << ", max regret "
                  << last.back().max_isregret;
      }
      std::cout << "\nresults in " << config.output_dir << "\n";
      if (!outcome.message.empty()) std::cerr << outcome.message << "\n";
      return outcome.exit_code;
    }
    if (*sweep) {
      const SweepPlan plan = parse_sweep(read_text_file(sweep_path), sweep_out, sweep_overrides, sweep_path);
      for (const std::string& w : plan.warnings) std::cerr << "warning: " << w << "\n";
      const int cap = sweep_thread_cap();
      const SweepResult result = run_sweep(plan, sweep_out, std::min(parallel, cap));
      for (const std::string& f : result.failures) std::cerr << "failed: " << f << "\n";
      std::cout << plan.entries.size() << " runs, comparison in " << result.comparison_path << "\n";
      int rc = kExitOk;
      for (int code : result.exit_codes) rc = std::max(rc, code);
      return rc;
    }
    if (*plot) {
      const auto metric = parse_metric(metric_name);
      if (!metric) throw Error(ErrorCode::kConfigInvalid, "metric: expected exploitability or max_regret");
      const std::string svg = render_svg(read_series(read_text_file(plot_csv), *metric), *metric);
      if (plot_out.empty() || plot_out == "-") {
        std::cout << svg;
      } else {
        std::ofstream out(plot_out);
        if (!out || !(out << svg)) throw Error(ErrorCode::kIoError, "cannot write " + plot_out);
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
