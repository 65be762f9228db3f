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

#include "efpe/games.hpp"

#include <string>

#include "efpe/error.hpp"

namespace efpe {

std::string GameSpec::family_name() const {
  switch (family) {
    case GameFamily::kKuhn: return "kuhn";
    case GameFamily::kLeduc: return "leduc";
    case GameFamily::kGoofspiel: return "goofspiel";
    case GameFamily::kLiarsDice: return "liars_dice";
  }
  return "unknown";
}

std::string GameSpec::display_name() const {
  std::string base;
  switch (family) {
    case GameFamily::kKuhn: base = "Kuhn Poker"; break;
    case GameFamily::kLeduc: base = "Leduc Poker"; break;
    case GameFamily::kGoofspiel: base = "Goofspiel"; break;
    case GameFamily::kLiarsDice: base = "Liar's Dice"; break;
  }
  return base + " (" + std::to_string(rank) + ")";
}

std::optional<GameFamily> parse_family(std::string_view name) {
  if (name == "kuhn") return GameFamily::kKuhn;
  if (name == "leduc") return GameFamily::kLeduc;
  if (name == "goofspiel") return GameFamily::kGoofspiel;
  if (name == "liars_dice" || name == "liarsdice" || name == "liars-dice") return GameFamily::kLiarsDice;
  return std::nullopt;
}

int max_rank(GameFamily family) { return family == GameFamily::kGoofspiel ? 4 : 6; }

namespace {

void check_rank(GameFamily family, int n) {
  if (n < 2 || n > max_rank(family)) {
    throw Error(ErrorCode::kUnsupportedRank, GameSpec{family, n}.family_name() + " supports ranks 2.." +
                                                 std::to_string(max_rank(family)) + ", got " + std::to_string(n));
  }
}

// ---------------------------------------------------------------- Kuhn

class KuhnBuilder {
 public:
  explicit KuhnBuilder(int n) : n_(n), b_(GameSpec{GameFamily::kKuhn, n}.display_name()) {}

  GameTree build() && {
    const NodeId root = b_.add_chance();
    for (int c1 = 0; c1 < n_; ++c1) {
      const NodeId deal2 = b_.add_chance();
      for (int c2 = 0; c2 < n_; ++c2) {
        if (c2 == c1) continue;
        b_.add_chance_outcome(deal2, "p2card" + std::to_string(c2 + 1), 1.0 / (n_ - 1), betting(c1, c2, ""));
      }
      b_.add_chance_outcome(root, "p1card" + std::to_string(c1 + 1), 1.0 / n_, deal2);
    }
    return std::move(b_).build();
  }

 private:
  double showdown(int c1, int c2, double stake) const { return c1 > c2 ? stake : -stake; }

  // History letters: k = check, b = bet, f = fold, c = call.
  NodeId betting(int c1, int c2, const std::string& h) {
    if (h == "kk") return b_.add_terminal(showdown(c1, c2, 1.0));
    if (h == "kbf") return b_.add_terminal(-1.0);
    if (h == "bf") return b_.add_terminal(1.0);
    if (h == "kbc" || h == "bc") return b_.add_terminal(showdown(c1, c2, 2.0));

    const int player = h.size() % 2 == 0 ? 1 : 2;
    const int card = player == 1 ? c1 : c2;
    const NodeId node = b_.add_decision(player, std::to_string(card + 1) + ":" + h);
    const bool facing_bet = !h.empty() && h.back() == 'b';
    if (facing_bet) {
      b_.add_action(node, "fold", betting(c1, c2, h + "f"));
      b_.add_action(node, "call", betting(c1, c2, h + "c"));
    } else {
      b_.add_action(node, "check", betting(c1, c2, h + "k"));
      b_.add_action(node, "bet", betting(c1, c2, h + "b"));
    }
    return node;
  }

  int n_;
  GameBuilder b_;
};

// ---------------------------------------------------------------- Leduc

class LeducBuilder {
 public:
  explicit LeducBuilder(int n) : n_(n), b_(GameSpec{GameFamily::kLeduc, n}.display_name()) {}

  GameTree build() && {
    const NodeId root = b_.add_chance();
    for (int r1 = 0; r1 < n_; ++r1) {
      const NodeId deal2 = b_.add_chance();
      for (int r2 = 0; r2 < n_; ++r2) {
        const int remaining = 2 - (r2 == r1 ? 1 : 0);
        Round start;
        start.cards[0] = r1;
        start.cards[1] = r2;
        b_.add_chance_outcome(deal2, "p2card" + std::to_string(r2 + 1),
                              static_cast<double>(remaining) / (2 * n_ - 1), betting(start));
      }
      b_.add_chance_outcome(root, "p1card" + std::to_string(r1 + 1), 2.0 / (2 * n_), deal2);
    }
    return std::move(b_).build();
  }

 private:
  struct Round {
    int cards[2] = {0, 0};
    int public_card = -1;  // -1 until the public card is dealt
    std::string history;  // all actions so far; '/' separates rounds
    std::string round_actions;
    int raises = 0;
    double contribution[2] = {1.0, 1.0};
  };

  double raise_size(const Round& s) const { return s.public_card < 0 ? 2.0 : 4.0; }

  double showdown(const Round& s) const {
    const bool pair1 = s.cards[0] == s.public_card;
    const bool pair2 = s.cards[1] == s.public_card;
    int winner = 0;
    if (pair1 != pair2) {
      winner = pair1 ? 1 : 2;
    } else if (s.cards[0] != s.cards[1]) {
      winner = s.cards[0] > s.cards[1] ? 1 : 2;
    }
    if (winner == 1) return s.contribution[1];
    if (winner == 2) return -s.contribution[0];
    return 0.0;
  }

  NodeId end_of_round(const Round& s) {
    if (s.public_card >= 0) return b_.add_terminal(showdown(s));
    const NodeId chance = b_.add_chance();
    for (int r = 0; r < n_; ++r) {
      const int remaining = 2 - (r == s.cards[0] ? 1 : 0) - (r == s.cards[1] ? 1 : 0);
      if (remaining == 0) continue;
      Round next = s;
      next.public_card = r;
      next.history += '/';
      next.round_actions.clear();
      next.raises = 0;
      b_.add_chance_outcome(chance, "public" + std::to_string(r + 1), static_cast<double>(remaining) / (2 * n_ - 2),
                            betting(next));
    }
    return chance;
  }

  NodeId betting(const Round& s) {
    const int player = s.round_actions.size() % 2 == 0 ? 1 : 2;
    const int me = player - 1;
    const int other = 1 - me;
    std::string key = std::to_string(s.cards[me] + 1);
    if (s.public_card >= 0) key += "," + std::to_string(s.public_card + 1);
    key += ":" + s.history;
    const NodeId node = b_.add_decision(player, key);

    auto advance = [&](char action) {
      Round next = s;
      next.history += action;
      next.round_actions += action;
      return next;
    };
    const bool facing_bet = s.contribution[me] < s.contribution[other];
    if (facing_bet) {
      b_.add_action(node, "f", b_.add_terminal(player == 1 ? -s.contribution[0] : s.contribution[1]));
      Round call = advance('c');
      call.contribution[me] = call.contribution[other];
      b_.add_action(node, "c", end_of_round(call));
    } else {
      Round check = advance('k');
      b_.add_action(node, "k", check.round_actions == "kk" ? end_of_round(check) : betting(check));
    }
    if (s.raises < 2) {
      Round raise = advance('r');
      raise.contribution[me] = raise.contribution[other] + raise_size(s);
      raise.raises += 1;
      b_.add_action(node, "r", betting(raise));
    }
    return node;
  }

  int n_;
  GameBuilder b_;
};

// ---------------------------------------------------------------- Goofspiel

class GoofspielBuilder {
 public:
  explicit GoofspielBuilder(int n) : n_(n), b_(GameSpec{GameFamily::kGoofspiel, n}.display_name()) {}

  GameTree build() && {
    const unsigned full = (1u << n_) - 1u;
    turn(full, full, full, "", 0.0);
    return std::move(b_).build();
  }

 private:
  static int count(unsigned mask) { return __builtin_popcount(mask); }

  NodeId turn(unsigned prizes, unsigned hand1, unsigned hand2, const std::string& history, double score) {
    if (prizes == 0) return b_.add_terminal(score);
    const NodeId chance = b_.add_chance();
    const double p = 1.0 / count(prizes);
    for (int prize = 0; prize < n_; ++prize) {
      if (!(prizes & (1u << prize))) continue;
      const std::string seen = history + "p" + std::to_string(prize + 1);
      const NodeId bid1 = b_.add_decision(1, seen);
      for (int c1 = 0; c1 < n_; ++c1) {
        if (!(hand1 & (1u << c1))) continue;
        const NodeId bid2 = b_.add_decision(2, seen);
        for (int c2 = 0; c2 < n_; ++c2) {
          if (!(hand2 & (1u << c2))) continue;
          const double value = prize + 1;
          const double delta = c1 > c2 ? value : (c1 < c2 ? -value : 0.0);
          const std::string next = seen + "(" + std::to_string(c1 + 1) + "," + std::to_string(c2 + 1) + ")";
          b_.add_action(bid2, "bid" + std::to_string(c2 + 1),
                        turn(prizes & ~(1u << prize), hand1 & ~(1u << c1), hand2 & ~(1u << c2), next, score + delta));
        }
        b_.add_action(bid1, "bid" + std::to_string(c1 + 1), bid2);
      }
      b_.add_chance_outcome(chance, "prize" + std::to_string(prize + 1), p, bid1);
    }
    return chance;
  }

  int n_;
  GameBuilder b_;
};

// ---------------------------------------------------------------- Liar's Dice

class LiarsDiceBuilder {
 public:
  explicit LiarsDiceBuilder(int n) : n_(n), b_(GameSpec{GameFamily::kLiarsDice, n}.display_name()) {}

  GameTree build() && {
    const NodeId root = b_.add_chance();
    for (int d1 = 0; d1 < n_; ++d1) {
      const NodeId roll2 = b_.add_chance();
      for (int d2 = 0; d2 < n_; ++d2) {
        b_.add_chance_outcome(roll2, "p2die" + std::to_string(d2 + 1), 1.0 / n_, bidding(d1, d2, {}, ""));
      }
      b_.add_chance_outcome(root, "p1die" + std::to_string(d1 + 1), 1.0 / n_, roll2);
    }
    return std::move(b_).build();
  }

 private:
  int num_claims() const { return 2 * n_; }
  int quantity(int claim) const { return claim / n_ + 1; }
  int face(int claim) const { return claim % n_; }
  std::string claim_label(int claim) const {
    return std::to_string(quantity(claim)) + "x" + std::to_string(face(claim) + 1);
  }

  NodeId bidding(int d1, int d2, std::vector<int> claims, const std::string& history) {
    const int player = claims.size() % 2 == 0 ? 1 : 2;
    const int die = player == 1 ? d1 : d2;
    const NodeId node = b_.add_decision(player, std::to_string(die + 1) + ":" + history);
    const int last = claims.empty() ? -1 : claims.back();
    for (int c = last + 1; c < num_claims(); ++c) {
      std::vector<int> next = claims;
      next.push_back(c);
      b_.add_action(node, claim_label(c), bidding(d1, d2, std::move(next), history + claim_label(c) + ","));
    }
    if (last >= 0) {
      const int shown = (d1 == face(last) ? 1 : 0) + (d2 == face(last) ? 1 : 0);
      const bool claim_true = shown >= quantity(last);
      const double challenger_payoff = claim_true ? -1.0 : 1.0;
      b_.add_action(node, "liar", b_.add_terminal(player == 1 ? challenger_payoff : -challenger_payoff));
    }
    return node;
  }

  int n_;
  GameBuilder b_;
};

}  // namespace

GameTree kuhn(int n) {
  check_rank(GameFamily::kKuhn, n);
  return KuhnBuilder(n).build();
}

GameTree leduc(int n) {
  check_rank(GameFamily::kLeduc, n);
  return LeducBuilder(n).build();
}

GameTree goofspiel(int n) {
  check_rank(GameFamily::kGoofspiel, n);
  return GoofspielBuilder(n).build();
}

GameTree liars_dice(int n) {
  check_rank(GameFamily::kLiarsDice, n);
  return LiarsDiceBuilder(n).build();
}

GameTree generate(const GameSpec& spec) {
  switch (spec.family) {
    case GameFamily::kKuhn: return kuhn(spec.rank);
    case GameFamily::kLeduc: return leduc(spec.rank);
    case GameFamily::kGoofspiel: return goofspiel(spec.rank);
    case GameFamily::kLiarsDice: return liars_dice(spec.rank);
  }
  throw Error(ErrorCode::kUnsupportedRank, "unknown family");
}

std::optional<GameSize> reference_size(const GameSpec& spec) {
  struct Row { GameSpec spec; GameSize size; };
  static const Row kRows[] = {
      {{GameFamily::kKuhn, 3}, {12, 26, 30}},
      {{GameFamily::kLeduc, 3}, {288, 674, 1116}},
      {{GameFamily::kLeduc, 5}, {780, 1822, 5500}},
      {{GameFamily::kGoofspiel, 3}, {546, 668, 216}},
      {{GameFamily::kGoofspiel, 4}, {34952, 42658, 13824}},
      {{GameFamily::kLiarsDice, 5}, {5120, 10232, 25575}},
      {{GameFamily::kLiarsDice, 6}, {24576, 49142, 147420}},
  };
  for (const Row& row : kRows) {
    if (row.spec == spec) return row.size;
  }
  return std::nullopt;
}

std::vector<GameSpec> reference_instances() {
  return {{GameFamily::kKuhn, 3},      {GameFamily::kLeduc, 3},     {GameFamily::kLeduc, 5},
          {GameFamily::kGoofspiel, 3}, {GameFamily::kGoofspiel, 4}, {GameFamily::kLiarsDice, 5},
          {GameFamily::kLiarsDice, 6}};
}

}  // namespace efpe
