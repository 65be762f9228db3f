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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.
//
//   acceptance [--cli <path to efpe>] [--only 1,2,...]

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "efpe/bench/config.hpp"
#include "efpe/bench/experiment.hpp"
#include "efpe/format.hpp"
#include "efpe/games.hpp"
#include "efpe/metrics.hpp"
#include "efpe/perturbation.hpp"
#include "efpe/regret.hpp"
#include "efpe/solver.hpp"
#include "support/oracles.hpp"

using namespace efpe;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("efpe_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Runs a shell command and captures stdout.
std::pair<int, std::string> run_command(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, out};
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {status, out};
}

bench::ExperimentConfig preset_config(const std::string& name, const std::vector<std::string>& overrides = {}) {
  return bench::load_experiment(name, std::nullopt, overrides);
}

// --- 1 -----------------------------------------------------------------------

Verdict game_sizes(const std::string& cli) {
  const std::vector<std::string> expected = {
      "Kuhn Poker (3) & 12 & 26 & 30",          "Leduc Poker (3) & 288 & 674 & 1116",
      "Leduc Poker (5) & 780 & 1822 & 5500",    "Goofspiel (3) & 546 & 668 & 216",
      "Goofspiel (4) & 34952 & 42658 & 13824",  "Liar's Dice (5) & 5120 & 10232 & 25575",
      "Liar's Dice (6) & 24576 & 49142 & 147420",
  };
  const fs::path dir = scratch("sizes");
  const auto specs = reference_instances();
  int matched = 0;
  std::string mismatch;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const std::string file = (dir / (specs[k].family_name() + std::to_string(specs[k].rank) + ".efg")).string();
    const auto gen = run_command("'" + cli + "' gen --family " + specs[k].family_name() + " --rank " +
                                 std::to_string(specs[k].rank) + " --out '" + file + "'");
    const auto [rc, text] = run_command("'" + cli + "' inspect '" + file + "'");
    std::istringstream lines(text);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    if (gen.first == 0 && rc == 0 && row == expected[k]) {
      ++matched;
    } else if (mismatch.empty()) {
      mismatch = "; got '" + row + "'";
    }
  }
  return {matched == 7, std::to_string(matched) + "/7 instances match" + mismatch};
}

// --- 2 -----------------------------------------------------------------------

Verdict kuhn_value() {
  const SequenceFormGame g(kuhn(3));
  SolverConfig c;
  c.algorithm = Algorithm::kCfrPlus;
  c.num_bspp = 1'000'000;
  c.eval_every = 2'000'000;
  const SolveResult r = solve(g, c);
  const Profile& avg = r.strategy;
  const SequenceStrategy q1 = behavior_to_sequence(avg[0], g.index);
  const SequenceStrategy q2 = behavior_to_sequence(avg[1], g.index);
  // Player 1 can guarantee -BR2(avg1) and concedes at most BR1(avg2).
  const double lower = -best_response(g, 2, q1).value;
  const double upper = best_response(g, 1, q2).value;
  const oracle::TreeStrategy ts = oracle::from_profile(g.tree, g.index, avg);
  const double lower_enum = -oracle::enumerated_best_response(g.tree, 2, ts);
  const double upper_enum = oracle::enumerated_best_response(g.tree, 1, ts);
  const double target = -1.0 / 18.0;
  const double err = std::max(std::abs(lower - target), std::abs(upper - target));
  const double cross = std::max(std::abs(lower - lower_enum), std::abs(upper - upper_enum));
  return {r.iterations == 1'000'000 && err <= 1e-6 && cross <= 1e-12,
          "value bracket [" + format_real(lower) + ", " + format_real(upper) + "], |err| " + sci(err) +
              ", enumeration gap " + sci(cross)};
}

// --- 3 -----------------------------------------------------------------------

Verdict gda_equivalence() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0), unit(0.0, 1.0);
  double worst = 0.0;
  int runs = 0;
  for (RegretVariant variant : {RegretVariant::kRM, RegretVariant::kRMPlus}) {
    for (int trial = 0; trial < 20; ++trial) {
      const int n = trial < 10 ? 3 : 4;
      MatrixGame game{n, n, std::vector<double>(static_cast<std::size_t>(n * n))};
      for (double& v : game.payoff) v = u(rng);
      const double eps = unit(rng) * 0.9 / n;
      const double mu = unit(rng) * 0.5;
      std::array<NfgPlayer, 2> a = {make_nfg_player(n, {variant}, eps, mu), make_nfg_player(n, {variant}, eps, mu)};
      std::array<GdaPlayer, 2> b = {make_gda_player(n, {variant}, eps, mu), make_gda_player(n, {variant}, eps, mu)};
      for (int step = 0; step < 100; ++step) {
        rtrm_nfg_step(game, a);
        gda_closed_form_step(game, b);
        for (std::size_t i = 0; i < 2; ++i) {
          for (std::size_t k = 0; k < a[i].x.size(); ++k) worst = std::max(worst, std::abs(a[i].x[k] - b[i].x[k]));
        }
      }
      ++runs;
    }
  }
  return {worst <= 1e-10, std::to_string(runs) + " games x 100 steps, max gap " + sci(worst)};
}

// --- 4 -----------------------------------------------------------------------

Verdict reduction_chain() {
  const SequenceFormGame g(kuhn(3));
  double worst = 0.0;
  for (bool alternating : {false, true}) {
    SolverConfig c;
    c.rule = {RegretVariant::kRM};
    c.alternating = alternating;
    c.num_bspp = 50;
    Solver solver(g, c);
    oracle::TreeCfr cfr(g.tree, false, alternating);
    for (int t = 0; t < 50; ++t) {
      solver.begin_bspp();
      solver.iterate();
      cfr.iterate();
      const oracle::TreeStrategy mine = oracle::from_profile(g.tree, g.index, solver.current());
      for (std::size_t i = 0; i < mine.size(); ++i) {
        for (std::size_t a = 0; a < mine[i].size(); ++a) {
          worst = std::max(worst, std::abs(mine[i][a] - cfr.strategy()[i][a]));
        }
      }
    }
  }
  return {worst <= 1e-12, "50 iterations, simultaneous and alternating, max gap " + sci(worst)};
}

// --- 5 -----------------------------------------------------------------------

Verdict polytope_safety() {
  const bench::ExperimentConfig cfg = preset_config("table2:leduc3");
  const SequenceFormGame g(generate(*cfg.game));
  double worst = -1.0;
  double worst_seq = 0.0;
  long long points = 0;
  solve(g, cfg.solver, [&](const LogPoint& p) {
    ++points;
    for (InfosetId iid = 0; iid < static_cast<InfosetId>(g.index.num_infosets()); ++iid) {
      const InfosetEntry& info = g.index.infoset(iid);
      const double eps = p.infoset_epsilon[static_cast<std::size_t>(iid)];
      for (double x : p.profile[static_cast<std::size_t>(info.player - 1)].at(info)) worst = std::max(worst, eps - x);
    }
    const SequenceLowerBounds lb = sequence_lower_bounds(g.index, p.infoset_epsilon);
    for (int pl = 1; pl <= 2; ++pl) {
      const SequenceStrategy q = behavior_to_sequence(p.profile[static_cast<std::size_t>(pl - 1)], g.index);
      for (std::size_t s = 0; s < q.q.size(); ++s) {
        worst_seq = std::max(worst_seq, (lb.player(pl)[s] - q.q[s]) / lb.player(pl)[s]);
      }
    }
    return true;
  });
  return {points > 0 && worst <= 1e-13 && worst_seq <= 1e-12,
          std::to_string(points) + " logged points, max(eps - min entry) " + sci(worst) +
              ", max relative sequence-bound violation " + sci(worst_seq)};
}

// --- 6, 7 --------------------------------------------------------------------

// First logged row meeting both tolerances, if any.
std::optional<TrajectoryRow> first_reaching(const Trajectory& t, double expl_tol, double regret_tol,
                                            long long within) {
  for (const TrajectoryRow& row : t) {
    if (row.traversals > within) break;
    if (row.exploitability <= expl_tol && row.max_isregret <= regret_tol) return row;
  }
  return std::nullopt;
}

std::string row_text(const TrajectoryRow& row) {
  return "traversals " + std::to_string(row.traversals) + ", exploitability " + sci(row.exploitability) +
         ", r^max " + sci(row.max_isregret) + ", eps " + sci(row.epsilon);
}

Verdict kuhn_convergence(const Trajectory& t) {
  const auto hit = first_reaching(t, 1e-6, 1e-6, 100'000);
  if (hit) return {true, "reached at " + row_text(*hit)};
  return {false, t.empty() ? "no rows" : "not reached; last " + row_text(t.back())};
}

Verdict liars_dice(const Trajectory& ld5, double stretch_budget_traversals) {
  Verdict v;
  const auto hit = first_reaching(ld5, INFINITY, 1e-8, 10'000);
  std::string text = hit ? "LD5 r^max < 1e-8 at " + row_text(*hit) : "LD5 not below 1e-8 within 1e4";
  // Strictly below: first_reaching is inclusive.
  const bool ld5_ok = hit && hit->max_isregret < 1e-8;

  const bench::ExperimentConfig cfg = preset_config("table2:liarsdice6");
  const SequenceFormGame g(generate(*cfg.game));
  SolverConfig c = cfg.solver;
  c.traversal_budget = static_cast<long long>(stretch_budget_traversals);
  c.eval_every = 1000;
  const auto start = std::chrono::steady_clock::now();
  std::optional<TrajectoryRow> reached;
  TrajectoryRow best{};
  best.max_isregret = INFINITY;
  TrajectoryRow last{};
  solve(g, c, [&](const LogPoint& p) {
    last = p.row;
    if (p.row.max_isregret < best.max_isregret) best = p.row;
    if (p.row.max_isregret < 1e-10) {
      reached = p.row;
      return false;
    }
    return std::chrono::steady_clock::now() - start < std::chrono::minutes(20);
  });
  const double minutes =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / 60.0;
  char mins[32];
  std::snprintf(mins, sizeof mins, "%.1f", minutes);
  if (reached) {
    text += "; LD6 r^max < 1e-10 at " + row_text(*reached) + " (" + mins + " min)";
  } else {
    text += "; LD6 stretch not reached in " + std::string(mins) + " min (best r^max " + sci(best.max_isregret) +
            " at traversal " + std::to_string(best.traversals) + "; last " + row_text(last) + ")";
  }
  v.pass = ld5_ok && reached.has_value() && minutes < 20.0;
  v.detail = text;
  return v;
}

// --- 8 -----------------------------------------------------------------------

Verdict epsilon_tradeoff() {
  const SequenceFormGame g(leduc(3));
  std::map<double, TrajectoryRow> last;
  for (double eps : {0.1, 0.01, 0.001}) {
    SolverConfig c;
    c.rule = {RegretVariant::kRMPlus};
    c.inner_iterations = 200;
    c.mu = 1e-4;
    c.perturbation = PerturbationMode::kFixed;
    c.epsilon = eps;
    c.traversal_budget = 100'000;
    c.eval_every = 100'000;
    last[eps] = solve(g, c).trajectory.back();
  }
  const TrajectoryRow& hi = last[0.1];
  const TrajectoryRow& mid = last[0.01];
  const TrajectoryRow& lo = last[0.001];
  const bool regret_order = hi.max_isregret < mid.max_isregret && mid.max_isregret < lo.max_isregret;
  const bool expl_order = hi.exploitability > mid.exploitability && mid.exploitability > lo.exploitability;
  std::string text;
  for (double eps : {0.1, 0.01, 0.001}) {
    char e[16];
    std::snprintf(e, sizeof e, "%g", eps);
    text += "eps " + std::string(e) + ": expl " + sci(last[eps].exploitability) + " r^max " +
            sci(last[eps].max_isregret) + "; ";
  }
  text.resize(text.size() - 2);
  return {regret_order && expl_order, text};
}

// --- 9 -----------------------------------------------------------------------

Verdict metric_cross_validation() {
  const SequenceFormGame g(kuhn(3));
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 0.25);
  double worst_expl = 0.0, worst_regret = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double eps = u(rng);
    const oracle::TreeStrategy ts = oracle::random_strategy(g.tree, rng, std::max(eps, 1e-3));
    const Profile prof = oracle::to_profile(g.tree, g.index, ts);
    worst_expl = std::max(worst_expl, std::abs(exploitability(g, prof) - oracle::enumerated_exploitability(g.tree, ts)));
    const std::vector<double> eps_vec(g.tree.num_infosets(), eps);
    const std::vector<double> brute = oracle::deviation_regrets(g.tree, ts, eps_vec);
    double brute_max = 0.0;
    for (double r : brute) brute_max = std::max(brute_max, r);
    worst_regret = std::max(worst_regret, std::abs(max_info_set_regret(g, prof, eps).max_regret - brute_max));
  }
  return {worst_expl <= 1e-12 && worst_regret <= 1e-12,
          "20 profiles, exploitability gap " + sci(worst_expl) + ", r^max gap " + sci(worst_regret)};
}

// --- 10 ----------------------------------------------------------------------

struct PresetRuns {
  std::map<std::string, Trajectory> trajectories;
  Verdict determinism;
};

PresetRuns run_presets() {
  PresetRuns out;
  const fs::path dir = scratch("presets");
  int identical = 0;
  std::string differing;
  for (const std::string& name : bench::preset_names()) {
    std::string csv[2];
    for (int rep = 0; rep < 2; ++rep) {
      bench::ExperimentConfig c = preset_config(name);
      c.output_dir = (dir / (name.substr(name.find(':') + 1) + "_" + std::to_string(rep))).string();
      const bench::RunOutcome o = bench::run_experiment(c);
      csv[rep] = bench::read_text_file((fs::path(c.output_dir) / "trajectory.csv").string());
      if (rep == 0) out.trajectories[name] = o.result.trajectory;
    }
    if (!csv[0].empty() && csv[0] == csv[1]) {
      ++identical;
    } else {
      differing += " " + name;
    }
  }
  out.determinism = {identical == static_cast<int>(bench::preset_names().size()),
                     std::to_string(identical) + "/" + std::to_string(bench::preset_names().size()) +
                         " presets byte-identical over two runs of 1e5 traversals" +
                         (differing.empty() ? "" : "; differ:" + differing)};
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::string cli = "efpe";
  std::vector<int> only;
  double stretch_budget = 1.5e6;
  app.add_option("--cli", cli, "Path to the efpe executable");
  app.add_option("--only", only, "Run only these criteria")->delimiter(',');
  app.add_option("--stretch-budget", stretch_budget, "Traversal budget of the Liar's Dice (6) stretch run");
  CLI11_PARSE(app, argc, argv);
  const std::set<int> selected(only.begin(), only.end());
  auto wanted = [&](int k) { return selected.empty() || selected.contains(k); };

  std::optional<PresetRuns> presets;
  auto preset_runs = [&]() -> PresetRuns& {
    if (!presets) presets = run_presets();
    return *presets;
  };

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"game sizes", [&] { return game_sizes(cli); }},
      {"kuhn game value", kuhn_value},
      {"rtrm/gda equivalence", gda_equivalence},
      {"reduction to plain cfr", reduction_chain},
      {"perturbed-polytope safety", polytope_safety},
      {"kuhn convergence", [&] { return kuhn_convergence(preset_runs().trajectories.at("table2:kuhn3")); }},
      {"liar's dice convergence",
       [&] { return liars_dice(preset_runs().trajectories.at("table2:liarsdice5"), stretch_budget); }},
      {"fixed-epsilon trade-off", epsilon_tradeoff},
      {"metric cross-validation", metric_cross_validation},
      {"determinism", [&] { return preset_runs().determinism; }},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    if (!wanted(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[k].first << ", " << timing
              << "): " << v.detail << std::endl;
    if (!v.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
