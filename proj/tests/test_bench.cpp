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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "efpe/bench/config.hpp"
#include "efpe/bench/experiment.hpp"
#include "efpe/bench/plot.hpp"
#include "efpe/bench/sweep.hpp"
#include "efpe/error.hpp"

using namespace efpe;
using namespace efpe::bench;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("efpe_test_bench_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) { return read_text_file(p.string()); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kIoError;
}

}  // namespace

TEST_CASE("key=value parsing") {
  const KeyValues kv = parse_key_values("# comment\n\nfamily = leduc\nrank=5\r\n", "test");
  REQUIRE(kv.size() == 2);
  CHECK(kv[0] == std::pair<std::string, std::string>{"family", "leduc"});
  CHECK(kv[1].second == "5");
  CHECK(parse_override("mu=0.5").second == "0.5");
  CHECK(code_of([] { parse_key_values("no equals sign\n"); }) == ErrorCode::kConfigInvalid);
  CHECK(code_of([] { parse_override("=3"); }) == ErrorCode::kConfigInvalid);
}

TEST_CASE("settings apply and describe round-trips") {
  ExperimentConfig c;
  apply_settings(c, parse_key_values("family=goofspiel\nrank=3\nalgorithm=cfr+\nepsilon=0\nbudget=500\n"
                                     "eval_every=50\nvariant=drm\ndrm_alpha=2\nN=7\nalternating=false\n"));
  CHECK(c.game->family == GameFamily::kGoofspiel);
  CHECK(c.solver.algorithm == Algorithm::kCfrPlus);
  CHECK(c.solver.rule.variant == RegretVariant::kDRM);
  CHECK(c.solver.rule.alpha == 2.0);
  CHECK(c.solver.num_bspp == 7);
  CHECK_FALSE(c.solver.alternating);
  ExperimentConfig d;
  apply_settings(d, describe(c));
  CHECK(describe(d) == describe(c));
  apply_setting(d, "N", "none");
  CHECK_FALSE(d.solver.num_bspp.has_value());
  CHECK(code_of([&] { apply_setting(d, "colour", "red"); }) == ErrorCode::kConfigInvalid);
  CHECK(code_of([&] { apply_setting(d, "mu", "lots"); }) == ErrorCode::kConfigInvalid);
  CHECK(code_of([&] { apply_setting(d, "family", "chess"); }) == ErrorCode::kConfigInvalid);
}

TEST_CASE("presets carry the published hyperparameters") {
  CHECK(preset_names().size() == 7);
  const ExperimentConfig k = load_experiment(std::string("table2:kuhn3"), std::nullopt, {});
  CHECK(k.game->family == GameFamily::kKuhn);
  CHECK(k.solver.inner_iterations == 5);
  CHECK(k.solver.mu == 0.01);
  CHECK(k.solver.epsilon == 0.1);
  CHECK(k.solver.delta == 1.0);
  CHECK(k.solver.gamma == 0.5);
  CHECK(k.solver.perturbation == PerturbationMode::kAdaptive);
  const ExperimentConfig l = load_experiment(std::string("leduc3"), std::nullopt, {"T=7"});
  CHECK(l.solver.inner_iterations == 7);
  CHECK(l.solver.gamma == 0.1);
  const ExperimentConfig d = load_experiment(std::string("table2:liarsdice6"), std::nullopt, {});
  CHECK(d.solver.inner_iterations == 1);
  CHECK(d.game->rank == 6);
  CHECK(code_of([] { (void)load_experiment(std::string("table2:chess"), std::nullopt, {}); }) ==
        ErrorCode::kConfigInvalid);
}

TEST_CASE("experiment writes its artifacts") {
  const fs::path dir = scratch_dir("run");
  ExperimentConfig c = load_experiment(std::string("table2:kuhn3"), std::nullopt,
                                       {"budget=400", "output_dir=" + (dir / "a").string(), "seed=42"});
  RunOptions verify;
  verify.verify_sizes = true;
  const RunOutcome out = run_experiment(c, verify);
  CHECK(out.exit_code == kExitOk);
  const std::string csv = slurp(dir / "a" / "trajectory.csv");
  CHECK(csv.starts_with(std::string(kTrajectoryHeader) + "\n"));
  CHECK(csv == trajectory_csv(out.result.trajectory));
  const auto meta = nlohmann::json::parse(slurp(dir / "a" / "meta.json"));
  CHECK(meta["game"]["infosets"] == 12);
  CHECK(meta["seed"] == 42);
  CHECK(meta["config"]["family"] == "kuhn");
  CHECK(meta["status"] == "budget_exhausted");
  const std::string strat = slurp(dir / "a" / "final_strategy.txt");
  CHECK(strat.starts_with("infoset 0 player 1 "));

  // Identical config, identical bytes.
  c.output_dir = (dir / "b").string();
  run_experiment(c);
  CHECK(slurp(dir / "b" / "trajectory.csv") == csv);
}

TEST_CASE("rows use 17 significant digits") {
  TrajectoryRow row{100, 0.1, 1.0 / 3.0, 0.0, 1e-300, 7};
  CHECK(format_row(row) == "100,0.10000000000000001,0.33333333333333331,0,1e-300,7");
}

TEST_CASE("tolerances and size checks map to exit codes") {
  const fs::path dir = scratch_dir("exit");
  ExperimentConfig c = load_experiment(std::string("table2:kuhn3"), std::nullopt,
                                       {"budget=200", "output_dir=" + dir.string()});
  RunOptions until;
  until.until_exploitability = 1e-30;
  CHECK(run_experiment(c, until).exit_code == kExitToleranceNotReached);
  until.until_exploitability = 1.0;
  CHECK(run_experiment(c, until).result.status == SolveStatus::kStopped);
  CHECK(code_of([&] { verify_game_size(c, {1, 2, 3}); }) == ErrorCode::kGameSizeMismatch);
  CHECK(exit_code_for(ErrorCode::kGameSizeMismatch) == kExitSizeMismatch);
  CHECK(exit_code_for(ErrorCode::kConfigInvalid) == kExitConfigError);
  ExperimentConfig other = c;
  other.game = GameSpec{GameFamily::kKuhn, 4};
  CHECK(code_of([&] { verify_game_size(other, {1, 2, 3}); }) == ErrorCode::kConfigInvalid);
}

TEST_CASE("sweep files") {
  const std::string text =
      "budget=300\neval_every=100\n"
      "[adaptive]\npreset=table2:kuhn3\n"
      "[fixed eps]\npreset=table2:kuhn3\nperturbation=fixed\nepsilon=0.01\n"
      "[adaptive]\npreset=table2:kuhn3\nmu=0\n"
      "[cfr+]\nfamily=kuhn\nrank=3\nalgorithm=cfr+\nepsilon=0\n";
  const fs::path dir = scratch_dir("sweep");
  const SweepPlan plan = parse_sweep(text, dir.string(), {"eval_every=150"});
  REQUIRE(plan.entries.size() == 4);
  CHECK(plan.warnings.size() == 1);
  CHECK(plan.entries[2].label == "adaptive #2");
  CHECK(plan.entries[1].config.solver.perturbation == PerturbationMode::kFixed);
  // Shared lines override the preset; overrides win over everything.
  CHECK(plan.entries[0].config.solver.traversal_budget == 300);
  CHECK(plan.entries[0].config.solver.eval_every == 150);
  CHECK(plan.entries[2].config.solver.mu == 0.0);

  const SweepResult result = run_sweep(plan, dir.string(), 2);
  CHECK(result.failures.empty());
  CHECK(result.exit_codes == std::vector<int>{0, 0, 0, 0});
  const std::string comparison = slurp(result.comparison_path);
  CHECK(comparison.starts_with(std::string(kComparisonHeader) + "\n"));
  CHECK(comparison.find("\"adaptive #2\"") == std::string::npos);
  CHECK(comparison.find("adaptive #2,") != std::string::npos);

  // The same sweep run serially produces the same comparison.
  const fs::path dir2 = scratch_dir("sweep_serial");
  const SweepPlan plan2 = parse_sweep(text, dir2.string(), {"eval_every=150"});
  CHECK(slurp(run_sweep(plan2, dir2.string(), 1).comparison_path) == comparison);

  CHECK(code_of([] { parse_sweep("budget=1\n", "out"); }) == ErrorCode::kConfigInvalid);
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("plain") == "plain");
}

TEST_CASE("sweeps continue past failing entries") {
  const fs::path dir = scratch_dir("sweep_fail");
  const SweepPlan plan = parse_sweep(
      "budget=100\n[ok]\npreset=table2:kuhn3\n[bad]\nfamily=kuhn\nrank=3\ngame_file=/nonexistent.efg\n", dir.string());
  const SweepResult result = run_sweep(plan, dir.string(), 1);
  CHECK(result.exit_codes[0] == 0);
  CHECK(result.exit_codes[1] != 0);
  CHECK(result.failures.size() == 1);
}

TEST_CASE("plot reads both csv shapes and renders svg") {
  const std::string comparison = std::string(kComparisonHeader) +
                                 "\nA,100,0.5,0.25,0.1,1,0\nA,200,0.1,0.05,0.1,1,0\n\"B, zero\",100,0,0,0,0,0\n";
  const auto series = read_series(comparison, PlotMetric::kExploitability);
  REQUIRE(series.size() == 2);
  CHECK(series[0].points.size() == 2);
  CHECK(series[1].label == "B, zero");
  const std::string svg = render_svg(series, PlotMetric::kExploitability);
  CHECK(svg.starts_with("<svg"));
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("<circle") != std::string::npos);
  CHECK(svg.find("1e-16 floor") != std::string::npos);

  const std::string traj = std::string(kTrajectoryHeader) + "\n100,0.5,0.25,0.1,1,0\n";
  const auto single = read_series(traj, PlotMetric::kMaxRegret, "run");
  REQUIRE(single.size() == 1);
  CHECK(single[0].points[0].second == 0.25);

  CHECK(code_of([] { read_series("a,b\n1,2\n", PlotMetric::kExploitability); }) == ErrorCode::kSchemaMismatch);
  CHECK(code_of([&] { read_series(traj + "1,2\n", PlotMetric::kExploitability); }) == ErrorCode::kSchemaMismatch);
  CHECK(parse_metric("max_regret") == PlotMetric::kMaxRegret);
  CHECK_FALSE(parse_metric("speed").has_value());
}

TEST_CASE("version is fixed at build time") { CHECK_FALSE(version_string().empty()); }
