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

#ifndef EFPE_GAMES_HPP_
#define EFPE_GAMES_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "efpe/game_tree.hpp"
#include "efpe/sequence_form.hpp"

namespace efpe {

enum class GameFamily { kKuhn, kLeduc, kGoofspiel, kLiarsDice };

struct GameSpec {
  GameFamily family = GameFamily::kKuhn;
  int rank = 3;

  // "Kuhn Poker (3)", "Liar's Dice (5)", ...
  std::string display_name() const;
  // "kuhn", "leduc", "goofspiel", "liars_dice"
  std::string family_name() const;

  bool operator==(const GameSpec&) const = default;
};

std::optional<GameFamily> parse_family(std::string_view name);

// Largest supported rank per family. Goofspiel grows as (n!)^3 leaves, so it
// stops at 4; the others go to 6.
int max_rank(GameFamily family);

// Throws Error(kUnsupportedRank) outside [2, max_rank(family)].
GameTree generate(const GameSpec& spec);

// Each player antes 1 and gets one of n distinct cards; check/bet 1,
// fold/call. Higher card wins at showdown.
GameTree kuhn(int n);

// 2n cards (n ranks, two suits), dealt by rank. Two betting rounds with
// raises of 2 then 4 and at most two raises per round; a public card is
// revealed between them. Pairing the public card wins, else the higher rank.
GameTree leduc(int n);

// Prize cards 1..n revealed one at a time in random order; both players bid
// a remaining hand card, player 2 without seeing player 1's current bid.
// Both bids are revealed after each turn. Ties split the prize, so utility
// is the difference of prize totals. The forced final turn is kept.
GameTree goofspiel(int n);

// One private n-sided die each. Claims (quantity 1..2, face 1..n) must rise
// in quantity-major order; player 1 opens, then either player may challenge.
// A false claim pays +1 to the challenger, a true claim pays +1 to the
// claimant.
GameTree liars_dice(int n);

// Sizes of the benchmark instances (infosets, sequences, leaves); nullopt
// for specs outside that set.
std::optional<GameSize> reference_size(const GameSpec& spec);
std::vector<GameSpec> reference_instances();

}  // namespace efpe

#endif  // EFPE_GAMES_HPP_
