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

#ifndef EFPE_SOLVER_HPP_
#define EFPE_SOLVER_HPP_

#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "efpe/perturbation.hpp"
#include "efpe/regret.hpp"
#include "efpe/sequence_form.hpp"

namespace efpe {

enum class Algorithm { kCfrPlus, kRtcfr };
enum class PerturbationMode { kFixed, kAdaptive };

std::string_view algorithm_name(Algorithm algorithm);  // "cfr+", "rtcfr"
std::optional<Algorithm> parse_algorithm(std::string_view name);
std::string_view perturbation_name(PerturbationMode mode);  // "fixed", "adaptive"
std::optional<PerturbationMode> parse_perturbation(std::string_view name);

struct SolverConfig {
  Algorithm algorithm = Algorithm::kRtcfr;
  // Regret rule for RTCFR. CFR+ always uses RM+.
  RegretRule rule;
  // RT weight; ignored by CFR+.
  double mu = 0.0;
  // Iterations per RT-BSPP (T) and number of RT-BSPPs (N). CFR+ runs N*T
  // iterations.
  long long inner_iterations = 1;
  std::optional<long long> num_bspp;
  PerturbationMode perturbation = PerturbationMode::kFixed;
  // Fixed epsilon, or the initial epsilon in adaptive mode.
  double epsilon = 0.0;
  double delta = 1.0;
  double gamma = 0.5;
  // Adaptive decay leaves epsilon unchanged once eps*gamma would drop below
  // this; delta keeps decaying.
  double epsilon_floor = 1e-12;
  // Alternating updates cost two traversals per iteration; simultaneous
  // updates share one walk.
  bool alternating = true;
  long long eval_every = 10;
  std::optional<long long> traversal_budget;
  // Emit a row at traversal 0 before the first update.
  bool log_initial = false;
  // Fill wall_ms from the clock; off by default so trajectories are
  // byte-reproducible.
  bool wall_clock = false;

  // Throws Error(kConfigInvalid) naming the offending field.
  void validate() const;
};

struct TrajectoryRow {
  long long traversals = 0;
  double exploitability = 0.0;
  double max_isregret = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  long long wall_ms = 0;
};

using Trajectory = std::vector<TrajectoryRow>;

struct LogPoint {
  const TrajectoryRow& row;
  // The evaluated profile: last iterate for RTCFR, quadratic average for CFR+.
  const Profile& profile;
  // Perturbation in force at each infoset, indexed by InfosetId.
  std::span<const double> infoset_epsilon;
  long long bspp = 0;
  long long iteration = 0;
};

// Called at every logged point; returning false stops the solve.
using TrajectorySink = std::function<bool(const LogPoint&)>;

// Running t^2-weighted average of realization plans, normalized by sum t^2.
class QuadraticAverage {
 public:
  QuadraticAverage() = default;
  explicit QuadraticAverage(std::size_t size) : sum_(size, 0.0) {}

  void add(std::span<const double> q, long long t);
  bool empty() const { return weight_ == 0.0; }
  std::vector<double> value() const;

 private:
  std::vector<double> sum_;
  double weight_ = 0.0;
};

class Solver {
 public:
  Solver(const SequenceFormGame& game, SolverConfig config);

  const SolverConfig& config() const { return config_; }
  const SequenceFormGame& game() const { return game_; }

  const Profile& current() const { return x_; }
  const Profile& reference() const { return x_ref_; }
  // Quadratic average of the iterates (CFR+ only; empty before the first
  // iteration or for RTCFR).
  std::optional<Profile> average() const;
  // The profile a solve reports: average for CFR+, last iterate otherwise.
  Profile output() const;

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  std::span<const double> infoset_epsilon() const { return infoset_epsilon_; }
  const PerturbedBasis& basis(InfosetId id) const { return bases_[static_cast<std::size_t>(id)]; }
  std::span<const double> cumulative_regret(InfosetId id) const;

  long long traversals() const { return traversals_; }
  long long iterations() const { return iterations_; }
  long long bspp_index() const { return bspp_; }
  int epsilon_decays() const { return decays_; }

  // One iteration: 1 traversal simultaneous, 2 alternating.
  void iterate();
  // RT-BSPP boundary: x_ref <- x and, in adaptive mode, the r^max check
  // (counted as one traversal).
  void begin_bspp();
  // Decay epsilon and delta when r_max < delta; returns whether it fired.
  bool adaptive_step(double r_max);
  // r^max of the current iterate in the current perturbed game.
  double current_max_regret() const;

  TrajectoryRow evaluate(long long wall_ms = 0) const;

 private:
  void rebuild_bases();
  void update_player(int player, std::span<double> w);
  void accumulate_average(int player, std::span<const double> q);

  const SequenceFormGame& game_;
  SolverConfig config_;
  RegretRule rule_;
  bool alternating_;
  Profile x_;
  Profile x_ref_;
  std::array<std::vector<double>, 2> regrets_;
  std::vector<PerturbedBasis> bases_;
  std::vector<double> infoset_epsilon_;
  std::array<QuadraticAverage, 2> average_;
  std::array<std::vector<double>, 2> q_;
  std::array<std::vector<double>, 2> w_;
  std::vector<double> scratch_;
  double epsilon_;
  double delta_;
  long long traversals_ = 0;
  long long iterations_ = 0;
  long long bspp_ = 0;
  int decays_ = 0;
};

enum class SolveStatus { kCompleted, kBudgetExhausted, kStopped };

std::string_view status_name(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::kCompleted;
  Profile strategy;
  Trajectory trajectory;
  long long traversals = 0;
  long long iterations = 0;
  long long bspps = 0;
  double final_epsilon = 0.0;
  double final_delta = 0.0;
  int epsilon_decays = 0;
};

// Runs N*T iterations or until the traversal budget, whichever comes first,
// logging every eval_every traversals. Evaluation passes are not counted.
SolveResult solve(const SequenceFormGame& game, const SolverConfig& config, const TrajectorySink& sink = {});

}  // namespace efpe

#endif  // EFPE_SOLVER_HPP_
