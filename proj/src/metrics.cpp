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

#include "efpe/metrics.hpp"

#include <algorithm>
#include <limits>

#include "efpe/counterfactual.hpp"
#include "efpe/perturbation.hpp"

namespace efpe {

BestResponseResult best_response(const SequenceFormGame& game, int responder, const SequenceStrategy& q_opp) {
  const SequenceIndex& idx = game.index;
  const PlayerSequences& seqs = idx.player(responder);
  std::vector<double> w(seqs.num_sequences);
  leaf_values(game, responder, q_opp.q, w);

  BestResponseResult out{0.0, {responder, std::vector<double>(seqs.num_sequences, 0.0)}};
  out.strategy.probs[kEmptySequence] = 1.0;
  for (auto it = seqs.infosets.rbegin(); it != seqs.infosets.rend(); ++it) {
    const InfosetEntry& info = idx.infoset(*it);
    int best = 0;
    for (int a = 1; a < info.num_actions; ++a) {
      if (w[static_cast<std::size_t>(info.sequence(a))] > w[static_cast<std::size_t>(info.sequence(best))]) best = a;
    }
    out.strategy.probs[static_cast<std::size_t>(info.sequence(best))] = 1.0;
    w[static_cast<std::size_t>(info.parent_sequence)] += w[static_cast<std::size_t>(info.sequence(best))];
  }
  out.value = w[kEmptySequence];
  return out;
}

double exploitability(const SequenceFormGame& game, const SequenceStrategy& q1, const SequenceStrategy& q2) {
  return best_response(game, 1, q2).value + best_response(game, 2, q1).value;
}

double exploitability(const SequenceFormGame& game, const Profile& profile) {
  return exploitability(game, behavior_to_sequence(profile[0], game.index),
                        behavior_to_sequence(profile[1], game.index));
}

std::vector<double> full_reach_values(const SequenceFormGame& game, const Profile& profile, InfosetId infoset) {
  const InfosetEntry& info = game.index.infoset(infoset);
  const int p = info.player;
  const SequenceStrategy q_opp = behavior_to_sequence(profile[static_cast<std::size_t>(opponent(p) - 1)], game.index);
  const std::vector<double> cfv =
      counterfactual_values(game, p, q_opp, profile[static_cast<std::size_t>(p - 1)]);
  const double mass = std::max(reach_mass(game, p, q_opp.q)[static_cast<std::size_t>(infoset)], kReachFloor);
  std::vector<double> v(static_cast<std::size_t>(info.num_actions));
  for (int a = 0; a < info.num_actions; ++a) {
    v[static_cast<std::size_t>(a)] = cfv[static_cast<std::size_t>(info.sequence(a))] / mass;
  }
  return v;
}

std::vector<double> info_set_regret(std::span<const double> full_reach, std::span<const double> x) {
  double u = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) u += full_reach[a] * x[a];
  std::vector<double> r(full_reach.size());
  for (std::size_t a = 0; a < r.size(); ++a) r[a] = full_reach[a] - u;
  return r;
}

namespace {

ISRegretReport regret_report(const SequenceFormGame& game, const Profile& profile, auto&& epsilon_of) {
  const SequenceIndex& idx = game.index;
  ISRegretReport report;
  report.infoset_max.assign(idx.num_infosets(), 0.0);
  double best = -1.0;
  for (int p = 1; p <= 2; ++p) {
    const BehaviorStrategy& x = profile[static_cast<std::size_t>(p - 1)];
    const SequenceStrategy q_opp = behavior_to_sequence(profile[static_cast<std::size_t>(opponent(p) - 1)], idx);
    const std::vector<double> cfv = counterfactual_values(game, p, q_opp, x);
    const std::vector<double> mass = reach_mass(game, p, q_opp.q);
    double player_best = 0.0;
    for (InfosetId iid : idx.player(p).infosets) {
      const InfosetEntry& info = idx.infoset(iid);
      const double denom = std::max(mass[static_cast<std::size_t>(iid)], kReachFloor);
      const double eps = effective_epsilon(epsilon_of(iid), info.num_actions);
      const double tau = 1.0 - info.num_actions * eps;
      const auto xs = x.at(info);
      double sum = 0.0;
      double u = 0.0;
      double vmax = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < info.num_actions; ++a) {
        const double v = cfv[static_cast<std::size_t>(info.sequence(a))] / denom;
        sum += v;
        u += v * xs[static_cast<std::size_t>(a)];
        vmax = std::max(vmax, v);
      }
      const double deviation = eps > 0.0 ? eps * sum + tau * vmax : vmax;
      const double regret = std::max(deviation - u, 0.0);
      report.infoset_max[static_cast<std::size_t>(iid)] = regret;
      player_best = std::max(player_best, regret);
      if (regret > best) {
        best = regret;
        report.argmax = iid;
      }
    }
    report.player_max[static_cast<std::size_t>(p - 1)] = player_best;
  }
  report.max_regret = std::max(report.player_max[0], report.player_max[1]);
  return report;
}

}  // namespace

ISRegretReport max_info_set_regret(const SequenceFormGame& game, const Profile& profile, double epsilon) {
  return regret_report(game, profile, [epsilon](InfosetId) { return epsilon; });
}

ISRegretReport max_info_set_regret(const SequenceFormGame& game, const Profile& profile,
                                   std::span<const double> infoset_epsilon) {
  return regret_report(game, profile,
                       [infoset_epsilon](InfosetId iid) { return infoset_epsilon[static_cast<std::size_t>(iid)]; });
}

}  // namespace efpe
