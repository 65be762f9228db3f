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

#ifndef EFPE_SEQUENCE_FORM_HPP_
#define EFPE_SEQUENCE_FORM_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "efpe/game_tree.hpp"

namespace efpe {

using SequenceId = std::int32_t;
inline constexpr SequenceId kEmptySequence = 0;

// A history h inside an infoset, seen from the infoset owner: the chance
// probability of reaching h and the opponent's last sequence on the path.
struct MemberReach {
  NodeId node = kNoNode;
  double chance_reach = 1.0;
  SequenceId opponent_sequence = kEmptySequence;
};

struct InfosetEntry {
  InfosetId id = kNoInfoset;
  int player = 0;
  SequenceId parent_sequence = kEmptySequence;
  // Sequences of this infoset are first_sequence .. first_sequence + num_actions - 1.
  SequenceId first_sequence = kEmptySequence;
  int num_actions = 0;
  // Number of the owner's sequences on the path to (and including) any Ia.
  int depth = 0;
  std::vector<MemberReach> members;

  SequenceId sequence(int action) const { return first_sequence + action; }
};

struct PlayerSequences {
  int player = 0;
  std::size_t num_sequences = 1;
  // Infosets of this player in depth-first discovery order. Every infoset
  // appears after the infoset owning its parent sequence, so iterating in
  // reverse is a valid bottom-up order.
  std::vector<InfosetId> infosets;
  // Indexed by SequenceId; entries for kEmptySequence are sentinels.
  std::vector<InfosetId> sequence_infoset;
  std::vector<int> sequence_action;
  std::vector<int> sequence_depth;
};

// Sequence-form indexes for both players. Sequence ids are assigned in
// deterministic depth-first tree order.
class SequenceIndex {
 public:
  const PlayerSequences& player(int p) const { return players_[static_cast<std::size_t>(p - 1)]; }
  const InfosetEntry& infoset(InfosetId id) const { return infosets_[static_cast<std::size_t>(id)]; }
  std::size_t num_infosets() const { return infosets_.size(); }
  std::size_t total_sequences() const { return players_[0].num_sequences + players_[1].num_sequences; }

  // Parent sequence of sequence s (the predecessor in the owner's chain);
  // kEmptySequence for root-level sequences and for the empty sequence.
  SequenceId parent_of(int p, SequenceId s) const;

 private:
  friend SequenceIndex build_sequence_index(const GameTree& tree);
  std::array<PlayerSequences, 2> players_;
  std::vector<InfosetEntry> infosets_;
};

// Throws Error(kPerfectRecallViolation) if two members of one infoset
// disagree on the owner's parent sequence.
SequenceIndex build_sequence_index(const GameTree& tree);

// Behavioral strategy of one player stored as a vector over that player's
// sequences: probs[Ia] = x(I)[a] and probs[EMPTY] = 1.
struct BehaviorStrategy {
  int player = 0;
  std::vector<double> probs;

  std::span<const double> at(const InfosetEntry& info) const {
    return std::span<const double>(probs).subspan(static_cast<std::size_t>(info.first_sequence),
                                                  static_cast<std::size_t>(info.num_actions));
  }
  std::span<double> at(const InfosetEntry& info) {
    return std::span<double>(probs).subspan(static_cast<std::size_t>(info.first_sequence),
                                            static_cast<std::size_t>(info.num_actions));
  }
};

// Realization plan q over a player's sequences.
struct SequenceStrategy {
  int player = 0;
  std::vector<double> q;
};

using Profile = std::array<BehaviorStrategy, 2>;

BehaviorStrategy uniform_strategy(const SequenceIndex& idx, int player);
Profile uniform_profile(const SequenceIndex& idx);

SequenceStrategy behavior_to_sequence(const BehaviorStrategy& x, const SequenceIndex& idx);
// Infosets with zero parent-sequence mass receive the uniform strategy.
BehaviorStrategy sequence_to_behavior(const SequenceStrategy& q, const SequenceIndex& idx);

// In-place top-down product over the owner's chain; out.size() == probs.size().
void realization_plan(const PlayerSequences& seqs, const SequenceIndex& idx, std::span<const double> probs,
                      std::span<double> out);

struct UtilityEntry {
  SequenceId seq1 = kEmptySequence;
  SequenceId seq2 = kEmptySequence;
  double value = 0.0;
};

// Sparse sequence-form payoff matrix for player 1. Each leaf z adds
// q0(z) * u1(z) at the pair of last sequences on its path; pairs shared by
// several leaves are merged. Player 2's payoff is the negation.
class SparseUtilityMatrix {
 public:
  std::span<const UtilityEntry> entries() const { return entries_; }
  std::size_t leaf_contributions() const { return leaf_contributions_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  // out[s1] += sum_s2 U[s1, s2] * q2[s2]      (player 1 leaf values)
  void accumulate_player1(std::span<const double> q2, std::span<double> out) const;
  // out[s2] += -sum_s1 U[s1, s2] * q1[s1]     (player 2 leaf values)
  void accumulate_player2(std::span<const double> q1, std::span<double> out) const;
  // Both of the above in one pass over the entries.
  void accumulate_both(std::span<const double> q1, std::span<const double> q2, std::span<double> out1,
                       std::span<double> out2) const;

 private:
  friend SparseUtilityMatrix utility_matrix(const GameTree& tree, const SequenceIndex& idx);
  std::vector<UtilityEntry> entries_;
  std::size_t leaf_contributions_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
};

SparseUtilityMatrix utility_matrix(const GameTree& tree, const SequenceIndex& idx);

// Player 1's expected utility q1^T U q2.
double expected_value(const SparseUtilityMatrix& u, const SequenceStrategy& q1, const SequenceStrategy& q2);

// A game together with its sequence-form indexes and payoff matrix; the unit
// the solvers and metrics operate on. Immutable after construction.
struct SequenceFormGame {
  explicit SequenceFormGame(GameTree game);

  GameTree tree;
  SequenceIndex index;
  SparseUtilityMatrix utility;
};

struct GameSize {
  std::size_t infosets = 0;
  std::size_t sequences = 0;
  std::size_t leaves = 0;

  bool operator==(const GameSize&) const = default;
};

GameSize game_size(const SequenceFormGame& game);

}  // namespace efpe

#endif  // EFPE_SEQUENCE_FORM_HPP_
