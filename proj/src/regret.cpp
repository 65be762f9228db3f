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

#include "efpe/regret.hpp"

#include <algorithm>
#include <cmath>

namespace efpe {

std::string_view variant_name(RegretVariant variant) {
  switch (variant) {
    case RegretVariant::kRM: return "rm";
    case RegretVariant::kRMPlus: return "rm+";
    case RegretVariant::kDRM: return "drm";
  }
  return "?";
}

std::optional<RegretVariant> parse_variant(std::string_view name) {
  if (name == "rm") return RegretVariant::kRM;
  if (name == "rm+" || name == "rmplus") return RegretVariant::kRMPlus;
  if (name == "drm") return RegretVariant::kDRM;
  return std::nullopt;
}

void rt_transform(std::span<const double> v, double mu, std::span<const double> x_ref,
                  std::span<const double> x_cur, std::span<double> out) {
  for (std::size_t a = 0; a < v.size(); ++a) out[a] = v[a] + mu * (x_ref[a] - x_cur[a]);
}

std::vector<double> rt_transform(std::span<const double> v, double mu, std::span<const double> x_ref,
                                 std::span<const double> x_cur) {
  std::vector<double> out(v.size());
  rt_transform(v, mu, x_ref, x_cur, out);
  return out;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

void instantaneous_regret(std::span<const double> vhat, std::span<const double> xhat, std::span<double> out) {
  const double u = dot(vhat, xhat);
  for (std::size_t a = 0; a < vhat.size(); ++a) out[a] = vhat[a] - u;
}

std::vector<double> instantaneous_regret(std::span<const double> vhat, std::span<const double> xhat) {
  std::vector<double> out(vhat.size());
  instantaneous_regret(vhat, xhat, out);
  return out;
}

void accumulate_regret(const RegretRule& rule, long long t, std::span<double> cumulative,
                       std::span<const double> r) {
  switch (rule.variant) {
    case RegretVariant::kRM:
      for (std::size_t a = 0; a < r.size(); ++a) cumulative[a] += r[a];
      return;
    case RegretVariant::kRMPlus:
      for (std::size_t a = 0; a < r.size(); ++a) cumulative[a] = std::max(cumulative[a] + r[a], 0.0);
      return;
    case RegretVariant::kDRM: {
      const double ta = std::pow(static_cast<double>(t), rule.alpha);
      const double tb = std::pow(static_cast<double>(t), rule.beta);
      const double pos = ta / (ta + 1.0);
      const double neg = tb / (tb + 1.0);
      for (std::size_t a = 0; a < r.size(); ++a) {
        const double s = cumulative[a] + r[a];
        cumulative[a] = s > 0.0 ? pos * s : neg * s;
      }
      return;
    }
  }
}

bool regret_matching(std::span<const double> cumulative, std::span<double> xhat) {
  double total = 0.0;
  for (double r : cumulative) total += std::max(r, 0.0);
  if (total > 0.0) {
    for (std::size_t a = 0; a < cumulative.size(); ++a) xhat[a] = std::max(cumulative[a], 0.0) / total;
    return true;
  }
  std::fill(xhat.begin(), xhat.end(), 1.0 / static_cast<double>(xhat.size()));
  return false;
}

void RegretState::update(std::span<const double> r) {
  ++t_;
  accumulate_regret(rule_, t_, cumulative_, r);
}

std::vector<double> RegretState::next_strategy() const {
  std::vector<double> x(cumulative_.size());
  regret_matching(cumulative_, x);
  return x;
}

// ---------------------------------------------------------------------------

std::vector<double> MatrixGame::values(int player, std::span<const double> x_opp) const {
  std::vector<double> v(static_cast<std::size_t>(actions(player)), 0.0);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (player == 1) {
        v[static_cast<std::size_t>(i)] += at(i, j) * x_opp[static_cast<std::size_t>(j)];
      } else {
        v[static_cast<std::size_t>(j)] -= at(i, j) * x_opp[static_cast<std::size_t>(i)];
      }
    }
  }
  return v;
}

NfgPlayer make_nfg_player(int num_actions, RegretRule rule, double epsilon, double mu) {
  NfgPlayer p{RegretState(num_actions, rule), PerturbedBasis::make(num_actions, epsilon), {}, {}};
  p.x.assign(static_cast<std::size_t>(num_actions), 1.0 / num_actions);
  p.rt = {mu, p.x};
  return p;
}

void rtrm_nfg_step(const MatrixGame& game, std::array<NfgPlayer, 2>& players) {
  std::array<std::vector<double>, 2> v = {game.values(1, players[1].x), game.values(2, players[0].x)};
  for (std::size_t i = 0; i < 2; ++i) {
    NfgPlayer& p = players[i];
    std::vector<double> vt = rt_transform(v[i], p.rt.mu, p.rt.x_ref, p.x);
    const double u = dot(vt, p.x);
    std::vector<double> r = p.basis.pull_back(vt);
    for (double& e : r) e -= u;
    p.regrets.update(r);
    p.x = p.basis.to_perturbed(p.regrets.next_strategy());
  }
}

ThetaReadout theta_readout(std::span<const double> theta) {
  ThetaReadout out{std::vector<double>(theta.size()), false};
  out.degenerate = !regret_matching(theta, out.xhat);
  return out;
}

GdaPlayer make_gda_player(int num_actions, RegretRule rule, double epsilon, double mu) {
  GdaPlayer p;
  p.theta.assign(static_cast<std::size_t>(num_actions), 0.0);
  p.basis = PerturbedBasis::make(num_actions, epsilon);
  p.rule = rule;
  p.x = p.basis.to_perturbed(theta_readout(p.theta).xhat);
  p.rt = {mu, p.x};
  return p;
}

void gda_closed_form_step(const MatrixGame& game, std::array<GdaPlayer, 2>& players, double eta) {
  std::array<std::vector<double>, 2> v = {game.values(1, players[1].x), game.values(2, players[0].x)};
  for (std::size_t i = 0; i < 2; ++i) {
    GdaPlayer& p = players[i];
    const std::size_t n = p.theta.size();
    std::vector<double> loss(n);
    for (std::size_t a = 0; a < n; ++a) loss[a] = -v[i][a] + p.rt.mu * (p.x[a] - p.rt.x_ref[a]);
    const std::vector<double> lhat = p.basis.pull_back(loss);
    const std::vector<double> xhat = theta_readout(p.theta).xhat;
    const double expected = dot(lhat, xhat);
    std::vector<double> step(n);
    for (std::size_t a = 0; a < n; ++a) step[a] = eta * (expected - lhat[a]);
    ++p.t;
    accumulate_regret(p.rule, p.t, p.theta, step);
    p.x = p.basis.to_perturbed(theta_readout(p.theta).xhat);
  }
}

}  // namespace efpe
