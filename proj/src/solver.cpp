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

#include "efpe/solver.hpp"

#include <algorithm>
#include <cmath>

#include "efpe/counterfactual.hpp"
#include "efpe/error.hpp"
#include "efpe/format.hpp"
#include "efpe/metrics.hpp"

namespace efpe {

std::string_view algorithm_name(Algorithm algorithm) {
  return algorithm == Algorithm::kCfrPlus ? "cfr+" : "rtcfr";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "cfr+" || name == "cfrplus") return Algorithm::kCfrPlus;
  if (name == "rtcfr") return Algorithm::kRtcfr;
  return std::nullopt;
}

std::string_view perturbation_name(PerturbationMode mode) {
  return mode == PerturbationMode::kFixed ? "fixed" : "adaptive";
}

std::optional<PerturbationMode> parse_perturbation(std::string_view name) {
  if (name == "fixed") return PerturbationMode::kFixed;
  if (name == "adaptive" || name == "adp") return PerturbationMode::kAdaptive;
  return std::nullopt;
}

std::string_view status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::kCompleted: return "completed";
    case SolveStatus::kBudgetExhausted: return "budget_exhausted";
    case SolveStatus::kStopped: return "stopped";
  }
  return "?";
}

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::kConfigInvalid, field + ": " + why);
}

}  // namespace

void SolverConfig::validate() const {
  if (algorithm == Algorithm::kCfrPlus && perturbation != PerturbationMode::kFixed) {
    invalid("perturbation", "cfr+ supports fixed perturbation only");
  }
  if (!(mu >= 0.0) || !std::isfinite(mu)) invalid("mu", "must be a finite value >= 0");
  if (inner_iterations < 1) invalid("T", "must be >= 1");
  if (num_bspp && *num_bspp < 1) invalid("N", "must be >= 1");
  if (!(epsilon >= 0.0) || !(epsilon < 0.5)) invalid("epsilon", "must be in [0, 0.5)");
  if (!(gamma > 0.0) || !(gamma < 1.0)) invalid("gamma", "must be in (0, 1), got " + format_real(gamma));
  if (perturbation == PerturbationMode::kAdaptive && !(delta > 0.0 && std::isfinite(delta))) {
    invalid("delta", "must be a finite value > 0");
  }
  if (!(epsilon_floor >= 0.0)) invalid("epsilon_floor", "must be >= 0");
  if (rule.variant == RegretVariant::kDRM && (!std::isfinite(rule.alpha) || !std::isfinite(rule.beta))) {
    invalid("drm", "alpha and beta must be finite");
  }
  if (eval_every < 1) invalid("eval_every", "must be >= 1");
  if (traversal_budget && *traversal_budget < eval_every) invalid("budget", "must be >= eval_every");
  if (!traversal_budget && !num_bspp) invalid("budget", "set a traversal budget or N");
}

// ---------------------------------------------------------------------------

void QuadraticAverage::add(std::span<const double> q, long long t) {
  const double w = static_cast<double>(t) * static_cast<double>(t);
  for (std::size_t s = 0; s < q.size(); ++s) sum_[s] += w * q[s];
  weight_ += w;
}

std::vector<double> QuadraticAverage::value() const {
  std::vector<double> out(sum_.size());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = sum_[s] / weight_;
  return out;
}

// ---------------------------------------------------------------------------

Solver::Solver(const SequenceFormGame& game, SolverConfig config)
    : game_(game),
      config_(std::move(config)),
      alternating_(config_.alternating),
      epsilon_(config_.epsilon),
      delta_(config_.delta) {
  config_.validate();
  rule_ = config_.algorithm == Algorithm::kCfrPlus ? RegretRule{RegretVariant::kRMPlus} : config_.rule;
  const SequenceIndex& idx = game_.index;
  x_ = uniform_profile(idx);
  x_ref_ = x_;
  std::size_t widest = 1;
  for (int p = 1; p <= 2; ++p) {
    const std::size_t n = idx.player(p).num_sequences;
    regrets_[static_cast<std::size_t>(p - 1)].assign(n, 0.0);
    q_[static_cast<std::size_t>(p - 1)].assign(n, 0.0);
    w_[static_cast<std::size_t>(p - 1)].assign(n, 0.0);
    if (config_.algorithm == Algorithm::kCfrPlus) average_[static_cast<std::size_t>(p - 1)] = QuadraticAverage(n);
  }
  for (std::size_t i = 0; i < idx.num_infosets(); ++i) {
    widest = std::max(widest, static_cast<std::size_t>(idx.infoset(static_cast<InfosetId>(i)).num_actions));
  }
  scratch_.assign(3 * widest, 0.0);
  bases_.resize(idx.num_infosets());
  infoset_epsilon_.assign(idx.num_infosets(), 0.0);
  rebuild_bases();
  // The uniform start lies in every perturbed simplex, so no projection is
  // needed here.
}

void Solver::rebuild_bases() {
  for (std::size_t i = 0; i < bases_.size(); ++i) {
    const int n = game_.index.infoset(static_cast<InfosetId>(i)).num_actions;
    infoset_epsilon_[i] = effective_epsilon(epsilon_, n);
    bases_[i] = PerturbedBasis::make(n, infoset_epsilon_[i]);
  }
}

std::span<const double> Solver::cumulative_regret(InfosetId id) const {
  const InfosetEntry& info = game_.index.infoset(id);
  return std::span<const double>(regrets_[static_cast<std::size_t>(info.player - 1)])
      .subspan(static_cast<std::size_t>(info.first_sequence), static_cast<std::size_t>(info.num_actions));
}

std::optional<Profile> Solver::average() const {
  if (config_.algorithm != Algorithm::kCfrPlus || average_[0].empty()) return std::nullopt;
  Profile out;
  for (int p = 1; p <= 2; ++p) {
    const SequenceStrategy q{p, average_[static_cast<std::size_t>(p - 1)].value()};
    out[static_cast<std::size_t>(p - 1)] = sequence_to_behavior(q, game_.index);
  }
  return out;
}

Profile Solver::output() const {
  if (auto avg = average()) return *avg;
  return x_;
}

void Solver::accumulate_average(int player, std::span<const double> q) {
  if (config_.algorithm == Algorithm::kCfrPlus) average_[static_cast<std::size_t>(player - 1)].add(q, iterations_);
}

// One player's bottom-up regret update. w holds the leaf values on entry.
void Solver::update_player(int player, std::span<double> w) {
  const SequenceIndex& idx = game_.index;
  const PlayerSequences& seqs = idx.player(player);
  BehaviorStrategy& x = x_[static_cast<std::size_t>(player - 1)];
  const BehaviorStrategy& x_ref = x_ref_[static_cast<std::size_t>(player - 1)];
  std::vector<double>& regrets = regrets_[static_cast<std::size_t>(player - 1)];
  const double mu = config_.algorithm == Algorithm::kCfrPlus ? 0.0 : config_.mu;

  for (auto it = seqs.infosets.rbegin(); it != seqs.infosets.rend(); ++it) {
    const InfosetEntry& info = idx.infoset(*it);
    const auto n = static_cast<std::size_t>(info.num_actions);
    const auto first = static_cast<std::size_t>(info.first_sequence);
    const std::span<const double> v(w.data() + first, n);
    const std::span<double> xs = x.at(info);
    const std::span<const double> xr = x_ref.at(info);
    const std::span<double> vt(scratch_.data(), n);
    const std::span<double> r(scratch_.data() + n, n);
    const std::span<double> xhat(scratch_.data() + 2 * n, n);

    double parent_value = 0.0;
    for (std::size_t a = 0; a < n; ++a) parent_value += v[a] * xs[a];
    rt_transform(v, mu, xr, xs, vt);
    double u = 0.0;
    for (std::size_t a = 0; a < n; ++a) u += vt[a] * xs[a];
    const PerturbedBasis& basis = bases_[static_cast<std::size_t>(info.id)];
    basis.pull_back(vt, r);
    for (std::size_t a = 0; a < n; ++a) r[a] -= u;
    const std::span<double> cumulative(regrets.data() + first, n);
    accumulate_regret(rule_, iterations_, cumulative, r);
    regret_matching(cumulative, xhat);
    basis.to_perturbed(xhat, xs);
    w[static_cast<std::size_t>(info.parent_sequence)] += parent_value;
  }
}

void Solver::iterate() {
  ++iterations_;
  const SequenceIndex& idx = game_.index;
  std::vector<double>& q1 = q_[0];
  std::vector<double>& q2 = q_[1];
  if (alternating_) {
    realization_plan(idx.player(1), idx, x_[0].probs, q1);
    realization_plan(idx.player(2), idx, x_[1].probs, q2);
    accumulate_average(1, q1);
    leaf_values(game_, 1, q2, w_[0]);
    update_player(1, w_[0]);
    realization_plan(idx.player(1), idx, x_[0].probs, q1);
    accumulate_average(2, q2);
    leaf_values(game_, 2, q1, w_[1]);
    update_player(2, w_[1]);
    traversals_ += 2;
  } else {
    realization_plan(idx.player(1), idx, x_[0].probs, q1);
    realization_plan(idx.player(2), idx, x_[1].probs, q2);
    accumulate_average(1, q1);
    accumulate_average(2, q2);
    std::ranges::fill(w_[0], 0.0);
    std::ranges::fill(w_[1], 0.0);
    game_.utility.accumulate_both(q1, q2, w_[0], w_[1]);
    update_player(1, w_[0]);
    update_player(2, w_[1]);
    traversals_ += 1;
  }
}

double Solver::current_max_regret() const { return max_info_set_regret(game_, x_, infoset_epsilon_).max_regret; }

bool Solver::adaptive_step(double r_max) {
  if (!(r_max < delta_)) return false;
  const double next = epsilon_ * config_.gamma;
  if (next >= config_.epsilon_floor) {
    epsilon_ = next;
    rebuild_bases();
  }
  delta_ *= config_.gamma;
  ++decays_;
  return true;
}

void Solver::begin_bspp() {
  ++bspp_;
  x_ref_ = x_;
  if (config_.perturbation == PerturbationMode::kAdaptive) {
    adaptive_step(current_max_regret());
    traversals_ += 1;
  }
}

TrajectoryRow Solver::evaluate(long long wall_ms) const {
  const Profile profile = output();
  TrajectoryRow row;
  row.traversals = traversals_;
  row.exploitability = exploitability(game_, profile);
  row.max_isregret = max_info_set_regret(game_, profile, infoset_epsilon_).max_regret;
  row.epsilon = epsilon_;
  row.delta = delta_;
  row.wall_ms = wall_ms;
  return row;
}

// ---------------------------------------------------------------------------

SolveResult solve(const SequenceFormGame& game, const SolverConfig& config, const TrajectorySink& sink) {
  Solver solver(game, config);
  const auto start = std::chrono::steady_clock::now();
  SolveResult result;
  long long next_log = config.eval_every;
  bool stopped = false;

  auto elapsed_ms = [&] {
    if (!config.wall_clock) return 0LL;
    return static_cast<long long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
  };
  auto log = [&] {
    const TrajectoryRow row = solver.evaluate(elapsed_ms());
    result.trajectory.push_back(row);
    if (sink) {
      const Profile profile = solver.output();
      const LogPoint point{row, profile, solver.infoset_epsilon(), solver.bspp_index(), solver.iterations()};
      if (!sink(point)) stopped = true;
    }
  };
  // After every counted traversal: log when a multiple of eval_every has been
  // crossed, then report whether the run must end.
  auto after_step = [&] {
    if (solver.traversals() >= next_log) {
      log();
      while (next_log <= solver.traversals()) next_log += config.eval_every;
    }
    return stopped || (config.traversal_budget && solver.traversals() >= *config.traversal_budget);
  };

  if (config.log_initial) log();
  const long long total_iterations =
      config.num_bspp ? *config.num_bspp * config.inner_iterations : -1;
  bool done = stopped;
  while (!done && (!config.num_bspp || solver.bspp_index() < *config.num_bspp)) {
    solver.begin_bspp();
    if (after_step()) break;
    for (long long t = 0; t < config.inner_iterations; ++t) {
      solver.iterate();
      if (after_step()) {
        done = true;
        break;
      }
    }
  }

  if (stopped) {
    result.status = SolveStatus::kStopped;
  } else if (solver.iterations() == total_iterations) {
    result.status = SolveStatus::kCompleted;
  } else {
    result.status = SolveStatus::kBudgetExhausted;
  }
  result.strategy = solver.output();
  result.traversals = solver.traversals();
  result.iterations = solver.iterations();
  result.bspps = solver.bspp_index();
  result.final_epsilon = solver.epsilon();
  result.final_delta = solver.delta();
  result.epsilon_decays = solver.epsilon_decays();
  return result;
}

}  // namespace efpe
