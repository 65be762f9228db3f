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

#ifndef EFPE_METRICS_HPP_
#define EFPE_METRICS_HPP_

#include <array>
#include <span>
#include <vector>

#include "efpe/sequence_form.hpp"

namespace efpe {

// Denominator floor for infosets the opponent and chance never reach.
inline constexpr double kReachFloor = 1e-15;

struct BestResponseResult {
  // Responder's expected utility.
  double value = 0.0;
  // A pure best response; ties go to the lowest action index.
  BehaviorStrategy strategy;
};

// Exact best response over the unperturbed polytope, in one bottom-up pass.
BestResponseResult best_response(const SequenceFormGame& game, int responder, const SequenceStrategy& q_opp);

// max_{q1'} q1'^T U q2 - min_{q2'} q1^T U q2'.
double exploitability(const SequenceFormGame& game, const SequenceStrategy& q1, const SequenceStrategy& q2);
double exploitability(const SequenceFormGame& game, const Profile& profile);

// Action values at I conditioned on reaching I: counterfactual values divided
// by the opponent-plus-chance reach mass of I (floored at kReachFloor).
std::vector<double> full_reach_values(const SequenceFormGame& game, const Profile& profile, InfosetId infoset);

// v' - <v', x> 1.
std::vector<double> info_set_regret(std::span<const double> full_reach, std::span<const double> x);

struct ISRegretReport {
  // Indexed by InfosetId; clamped at 0.
  std::vector<double> infoset_max;
  std::array<double, 2> player_max = {0.0, 0.0};
  double max_regret = 0.0;
  InfosetId argmax = kNoInfoset;
};

// Maximum information-set regret. With epsilon > 0 the deviations range over
// the vertices of each infoset's perturbed simplex (at effective_epsilon), so
// the regret is measured in the perturbed game: max_a (B^T v')[a] - <v', x>.
// epsilon = 0 gives the plain max_a v'[a] - <v', x>.
ISRegretReport max_info_set_regret(const SequenceFormGame& game, const Profile& profile, double epsilon = 0.0);
// Same with one epsilon per infoset, indexed by InfosetId.
ISRegretReport max_info_set_regret(const SequenceFormGame& game, const Profile& profile,
                                   std::span<const double> infoset_epsilon);

}  // namespace efpe

#endif  // EFPE_METRICS_HPP_
