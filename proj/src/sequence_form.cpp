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

#include "efpe/sequence_form.hpp"

#include <algorithm>
#include <string>

#include "efpe/error.hpp"

namespace efpe {

SequenceId SequenceIndex::parent_of(int p, SequenceId s) const {
  if (s == kEmptySequence) return kEmptySequence;
  return infoset(player(p).sequence_infoset[static_cast<std::size_t>(s)]).parent_sequence;
}

namespace {

class IndexBuilder {
 public:
  IndexBuilder(const GameTree& tree, std::array<PlayerSequences, 2>& players, std::vector<InfosetEntry>& infosets)
      : tree_(tree), players_(players), infosets_(infosets), discovered_(tree.num_infosets(), 0) {}

  void visit(NodeId id, SequenceId last1, SequenceId last2, double chance_reach) {
    const GameNode& n = tree_.node(id);
    switch (n.kind) {
      case NodeKind::kTerminal:
        return;
      case NodeKind::kChance:
        for (std::size_t k = 0; k < n.children.size(); ++k) {
          visit(n.children[k], last1, last2, chance_reach * n.probabilities[k]);
        }
        return;
      case NodeKind::kDecision:
        break;
    }
    const int p = n.player;
    const SequenceId own = p == 1 ? last1 : last2;
    InfosetEntry& info = infosets_[static_cast<std::size_t>(n.infoset)];
    if (!discovered_[static_cast<std::size_t>(n.infoset)]) {
      discovered_[static_cast<std::size_t>(n.infoset)] = 1;
      PlayerSequences& seqs = players_[static_cast<std::size_t>(p - 1)];
      info.id = n.infoset;
      info.player = p;
      info.parent_sequence = own;
      info.first_sequence = static_cast<SequenceId>(seqs.num_sequences);
      info.num_actions = static_cast<int>(n.children.size());
      info.depth = seqs.sequence_depth[static_cast<std::size_t>(own)] + 1;
      seqs.infosets.push_back(n.infoset);
      for (int a = 0; a < info.num_actions; ++a) {
        seqs.sequence_infoset.push_back(n.infoset);
        seqs.sequence_action.push_back(a);
        seqs.sequence_depth.push_back(info.depth);
      }
      seqs.num_sequences += static_cast<std::size_t>(info.num_actions);
    } else if (info.parent_sequence != own) {
      throw Error(ErrorCode::kPerfectRecallViolation,
                  "infoset " + std::to_string(n.infoset) + " ('" + tree_.infoset(n.infoset).label +
                      "') has members with different parent sequences for player " + std::to_string(p));
    }
    info.members.push_back({id, chance_reach, p == 1 ? last2 : last1});
    for (int a = 0; a < info.num_actions; ++a) {
      const SequenceId s = info.sequence(a);
      visit(n.children[static_cast<std::size_t>(a)], p == 1 ? s : last1, p == 2 ? s : last2, chance_reach);
    }
  }

 private:
  const GameTree& tree_;
  std::array<PlayerSequences, 2>& players_;
  std::vector<InfosetEntry>& infosets_;
  std::vector<char> discovered_;
};

}  // namespace

SequenceIndex build_sequence_index(const GameTree& tree) {
  SequenceIndex idx;
  for (int p = 1; p <= 2; ++p) {
    PlayerSequences& seqs = idx.players_[static_cast<std::size_t>(p - 1)];
    seqs.player = p;
    seqs.num_sequences = 1;
    seqs.sequence_infoset = {kNoInfoset};
    seqs.sequence_action = {-1};
    seqs.sequence_depth = {0};
  }
  idx.infosets_.resize(tree.num_infosets());
  IndexBuilder(tree, idx.players_, idx.infosets_).visit(tree.root(), kEmptySequence, kEmptySequence, 1.0);
  return idx;
}

// ---------------------------------------------------------------------------

BehaviorStrategy uniform_strategy(const SequenceIndex& idx, int player) {
  const PlayerSequences& seqs = idx.player(player);
  BehaviorStrategy x{player, std::vector<double>(seqs.num_sequences, 1.0)};
  for (InfosetId iid : seqs.infosets) {
    const InfosetEntry& info = idx.infoset(iid);
    std::ranges::fill(x.at(info), 1.0 / info.num_actions);
  }
  return x;
}

Profile uniform_profile(const SequenceIndex& idx) { return {uniform_strategy(idx, 1), uniform_strategy(idx, 2)}; }

void realization_plan(const PlayerSequences& seqs, const SequenceIndex& idx, std::span<const double> probs,
                      std::span<double> out) {
  out[kEmptySequence] = 1.0;
  for (InfosetId iid : seqs.infosets) {
    const InfosetEntry& info = idx.infoset(iid);
    const double parent = out[static_cast<std::size_t>(info.parent_sequence)];
    for (int a = 0; a < info.num_actions; ++a) {
      const auto s = static_cast<std::size_t>(info.sequence(a));
      out[s] = parent * probs[s];
    }
  }
}

SequenceStrategy behavior_to_sequence(const BehaviorStrategy& x, const SequenceIndex& idx) {
  const PlayerSequences& seqs = idx.player(x.player);
  SequenceStrategy q{x.player, std::vector<double>(seqs.num_sequences, 0.0)};
  realization_plan(seqs, idx, x.probs, q.q);
  return q;
}

BehaviorStrategy sequence_to_behavior(const SequenceStrategy& q, const SequenceIndex& idx) {
  const PlayerSequences& seqs = idx.player(q.player);
  BehaviorStrategy x{q.player, std::vector<double>(seqs.num_sequences, 1.0)};
  for (InfosetId iid : seqs.infosets) {
    const InfosetEntry& info = idx.infoset(iid);
    const double parent = q.q[static_cast<std::size_t>(info.parent_sequence)];
    auto out = x.at(info);
    if (parent > 0.0) {
      for (int a = 0; a < info.num_actions; ++a) {
        out[static_cast<std::size_t>(a)] = q.q[static_cast<std::size_t>(info.sequence(a))] / parent;
      }
    } else {
      std::ranges::fill(out, 1.0 / info.num_actions);
    }
  }
  return x;
}

// ---------------------------------------------------------------------------

namespace {

void collect_leaves(const GameTree& tree, NodeId id, SequenceId last1, SequenceId last2, double chance_reach,
                    const SequenceIndex& idx, std::vector<UtilityEntry>& out) {
  const GameNode& n = tree.node(id);
  switch (n.kind) {
    case NodeKind::kTerminal:
      out.push_back({last1, last2, chance_reach * n.utility_p1});
      return;
    case NodeKind::kChance:
      for (std::size_t k = 0; k < n.children.size(); ++k) {
        collect_leaves(tree, n.children[k], last1, last2, chance_reach * n.probabilities[k], idx, out);
      }
      return;
    case NodeKind::kDecision: {
      const InfosetEntry& info = idx.infoset(n.infoset);
      for (int a = 0; a < info.num_actions; ++a) {
        const SequenceId s = info.sequence(a);
        collect_leaves(tree, n.children[static_cast<std::size_t>(a)], n.player == 1 ? s : last1,
                       n.player == 2 ? s : last2, chance_reach, idx, out);
      }
      return;
    }
  }
}

}  // namespace

SparseUtilityMatrix utility_matrix(const GameTree& tree, const SequenceIndex& idx) {
  SparseUtilityMatrix u;
  std::vector<UtilityEntry> raw;
  collect_leaves(tree, tree.root(), kEmptySequence, kEmptySequence, 1.0, idx, raw);
  u.leaf_contributions_ = raw.size();
  std::ranges::stable_sort(raw, [](const UtilityEntry& a, const UtilityEntry& b) {
    return a.seq1 != b.seq1 ? a.seq1 < b.seq1 : a.seq2 < b.seq2;
  });
  for (const UtilityEntry& e : raw) {
    if (!u.entries_.empty() && u.entries_.back().seq1 == e.seq1 && u.entries_.back().seq2 == e.seq2) {
      u.entries_.back().value += e.value;
    } else {
      u.entries_.push_back(e);
    }
  }
  u.rows_ = idx.player(1).num_sequences;
  u.cols_ = idx.player(2).num_sequences;
  return u;
}

void SparseUtilityMatrix::accumulate_player1(std::span<const double> q2, std::span<double> out) const {
  for (const UtilityEntry& e : entries_) {
    out[static_cast<std::size_t>(e.seq1)] += e.value * q2[static_cast<std::size_t>(e.seq2)];
  }
}

void SparseUtilityMatrix::accumulate_player2(std::span<const double> q1, std::span<double> out) const {
  for (const UtilityEntry& e : entries_) {
    out[static_cast<std::size_t>(e.seq2)] -= e.value * q1[static_cast<std::size_t>(e.seq1)];
  }
}

void SparseUtilityMatrix::accumulate_both(std::span<const double> q1, std::span<const double> q2,
                                          std::span<double> out1, std::span<double> out2) const {
  for (const UtilityEntry& e : entries_) {
    const auto s1 = static_cast<std::size_t>(e.seq1);
    const auto s2 = static_cast<std::size_t>(e.seq2);
    out1[s1] += e.value * q2[s2];
    out2[s2] -= e.value * q1[s1];
  }
}

double expected_value(const SparseUtilityMatrix& u, const SequenceStrategy& q1, const SequenceStrategy& q2) {
  double total = 0.0;
  for (const UtilityEntry& e : u.entries()) {
    total += e.value * q1.q[static_cast<std::size_t>(e.seq1)] * q2.q[static_cast<std::size_t>(e.seq2)];
  }
  return total;
}

SequenceFormGame::SequenceFormGame(GameTree game)
    : tree(std::move(game)), index(build_sequence_index(tree)), utility(utility_matrix(tree, index)) {}

GameSize game_size(const SequenceFormGame& game) {
  return {game.index.num_infosets(), game.index.total_sequences(), game.utility.leaf_contributions()};
}

}  // namespace efpe
