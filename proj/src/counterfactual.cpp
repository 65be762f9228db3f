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

#include "efpe/counterfactual.hpp"

#include <algorithm>

namespace efpe {

void leaf_values(const SequenceFormGame& game, int player, std::span<const double> q_opp, std::span<double> out) {
  std::ranges::fill(out, 0.0);
  if (player == 1) {
    game.utility.accumulate_player1(q_opp, out);
  } else {
    game.utility.accumulate_player2(q_opp, out);
  }
}

void propagate_values(const SequenceIndex& idx, int player, std::span<const double> x_self, std::span<double> w) {
  const PlayerSequences& seqs = idx.player(player);
  for (auto it = seqs.infosets.rbegin(); it != seqs.infosets.rend(); ++it) {
    const InfosetEntry& info = idx.infoset(*it);
    double value = 0.0;
    for (int a = 0; a < info.num_actions; ++a) {
      const auto s = static_cast<std::size_t>(info.sequence(a));
      value += x_self[s] * w[s];
    }
    w[static_cast<std::size_t>(info.parent_sequence)] += value;
  }
}

std::vector<double> counterfactual_values(const SequenceFormGame& game, int player, const SequenceStrategy& q_opp,
                                          const BehaviorStrategy& x_self) {
  std::vector<double> w(game.index.player(player).num_sequences);
  leaf_values(game, player, q_opp.q, w);
  propagate_values(game.index, player, x_self.probs, w);
  return w;
}

std::vector<double> reach_mass(const SequenceFormGame& game, int player, std::span<const double> q_opp) {
  std::vector<double> mass(game.index.num_infosets(), 0.0);
  for (InfosetId iid : game.index.player(player).infosets) {
    double total = 0.0;
    for (const MemberReach& m : game.index.infoset(iid).members) {
      total += m.chance_reach * q_opp[static_cast<std::size_t>(m.opponent_sequence)];
    }
    mass[static_cast<std::size_t>(iid)] = total;
  }
  return mass;
}

}  // namespace efpe
