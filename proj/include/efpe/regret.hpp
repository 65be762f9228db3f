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

#ifndef EFPE_REGRET_HPP_
#define EFPE_REGRET_HPP_

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "efpe/perturbation.hpp"

namespace efpe {

enum class RegretVariant { kRM, kRMPlus, kDRM };

std::string_view variant_name(RegretVariant variant);  // "rm", "rm+", "drm"
std::optional<RegretVariant> parse_variant(std::string_view name);

// Cumulative-regret rule. alpha and beta only matter for DRM, where the
// positive part of R + r is scaled by t^alpha/(t^alpha + 1) and the negative
// part by t^beta/(t^beta + 1).
struct RegretRule {
  RegretVariant variant = RegretVariant::kRMPlus;
  double alpha = 1.5;
  double beta = 0.0;
};

// v + mu (x_ref - x_cur).
void rt_transform(std::span<const double> v, double mu, std::span<const double> x_ref,
                  std::span<const double> x_cur, std::span<double> out);
std::vector<double> rt_transform(std::span<const double> v, double mu, std::span<const double> x_ref,
                                 std::span<const double> x_cur);

// vhat - <vhat, xhat> 1.
void instantaneous_regret(std::span<const double> vhat, std::span<const double> xhat, std::span<double> out);
std::vector<double> instantaneous_regret(std::span<const double> vhat, std::span<const double> xhat);

// R <- rule(R + r) for the update with 1-based index t.
void accumulate_regret(const RegretRule& rule, long long t, std::span<double> cumulative, std::span<const double> r);

// xhat = [R]+ / |[R]+|_1, or uniform when no entry is positive. Returns false
// on the uniform fallback.
bool regret_matching(std::span<const double> cumulative, std::span<double> xhat);

class RegretState {
 public:
  RegretState() = default;
  RegretState(int num_actions, RegretRule rule)
      : rule_(rule), cumulative_(static_cast<std::size_t>(num_actions), 0.0) {}

  const RegretRule& rule() const { return rule_; }
  std::span<const double> cumulative() const { return cumulative_; }
  std::span<double> cumulative() { return cumulative_; }
  long long t() const { return t_; }

  // Increments t, then applies the rule with the new t.
  void update(std::span<const double> r);
  std::vector<double> next_strategy() const;

 private:
  RegretRule rule_;
  std::vector<double> cumulative_;
  long long t_ = 0;
};

// ---------------------------------------------------------------------------
// Normal-form dynamics

// Player 1's payoff matrix, row-major; player 2 receives the negation.
struct MatrixGame {
  int rows = 0;
  int cols = 0;
  std::vector<double> payoff;

  double at(int i, int j) const { return payoff[static_cast<std::size_t>(i * cols + j)]; }
  int actions(int player) const { return player == 1 ? rows : cols; }
  // U x_{-i} from player i's point of view.
  std::vector<double> values(int player, std::span<const double> x_opp) const;
};

struct RtConfig {
  double mu = 0.0;
  std::vector<double> x_ref;
};

// One player's side of the perturbed RT regret-matching dynamics.
struct NfgPlayer {
  RegretState regrets;
  PerturbedBasis basis;
  RtConfig rt;
  // Current strategy in the perturbed simplex.
  std::vector<double> x;
};

// Starts at the uniform strategy with zero regret and x_ref = x.
NfgPlayer make_nfg_player(int num_actions, RegretRule rule, double epsilon, double mu);

// Simultaneous step for both players:
//   v = U x_{-i} + mu (x_ref - x), vhat = B^T v, r = vhat - <vhat, xhat> 1,
//   R <- rule(R + r), xhat' = RM(R), x' = B xhat'.
// <vhat, xhat> is evaluated as <v, x>, which is the same quantity.
void rtrm_nfg_step(const MatrixGame& game, std::array<NfgPlayer, 2>& players);

// Closed-form gradient step on the regret potential, in loss form:
//   g = -U x_{-i}, l = g + mu (x - x_ref), lhat = B^T l,
//   r(theta) = <lhat, xhat> 1 - lhat, theta' = rule(theta + eta r(theta)),
// with xhat the read-out of theta and x = B xhat.
struct GdaPlayer {
  std::vector<double> theta;
  PerturbedBasis basis;
  RtConfig rt;
  RegretRule rule;
  long long t = 0;
  std::vector<double> x;
};

struct ThetaReadout {
  std::vector<double> xhat;
  // True when theta has no positive entry and the uniform fallback was used.
  bool degenerate = false;
};

// [theta]+ / |[theta]+|_1. For RM+ and DRM theta is nonnegative and this is
// theta / |theta|_1; for RM the positive part keeps the read-out a
// distribution.
ThetaReadout theta_readout(std::span<const double> theta);

GdaPlayer make_gda_player(int num_actions, RegretRule rule, double epsilon, double mu);

void gda_closed_form_step(const MatrixGame& game, std::array<GdaPlayer, 2>& players, double eta = 1.0);

}  // namespace efpe

#endif  // EFPE_REGRET_HPP_
