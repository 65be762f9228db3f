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

#ifndef EFPE_COUNTERFACTUAL_HPP_
#define EFPE_COUNTERFACTUAL_HPP_

#include <span>
#include <vector>

#include "efpe/sequence_form.hpp"

namespace efpe {

// Leaf part of the counterfactual values of `player`: (U_player q_opp)[s],
// including chance. Written into out, which is zeroed first.
void leaf_values(const SequenceFormGame& game, int player, std::span<const double> q_opp, std::span<double> out);

// Bottom-up pass w[pI] += <x(I), w(I)> over the player's infosets. On entry w
// holds leaf values; on exit w[Ia] is the full counterfactual value of Ia and
// w[EMPTY] the player's expected utility.
void propagate_values(const SequenceIndex& idx, int player, std::span<const double> x_self, std::span<double> w);

// Counterfactual value of every sequence of `player`:
//   v[Ia] = (U q_opp)[Ia] + sum_{I' : pI' = Ia} <x(I'), v(I')>.
std::vector<double> counterfactual_values(const SequenceFormGame& game, int player, const SequenceStrategy& q_opp,
                                          const BehaviorStrategy& x_self);

// Opponent-plus-chance reach mass sum_{h in I} q0(h) q_opp(h) of every infoset
// of `player`, indexed by InfosetId (zero for the other player's infosets).
std::vector<double> reach_mass(const SequenceFormGame& game, int player, std::span<const double> q_opp);

}  // namespace efpe

#endif  // EFPE_COUNTERFACTUAL_HPP_
