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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "efpe/error.hpp"
#include "efpe/games.hpp"
#include "efpe/sequence_form.hpp"
#include "support/oracles.hpp"

using namespace efpe;

namespace {

const std::vector<SequenceFormGame>& benchmark_games() {
  static const std::vector<SequenceFormGame> games = [] {
    std::vector<SequenceFormGame> out;
    for (const GameSpec& spec : reference_instances()) out.emplace_back(generate(spec));
    return out;
  }();
  return games;
}

}  // namespace

TEST_CASE("sequence ids follow the owner's chain") {
  const SequenceFormGame g(kuhn(3));
  for (int p = 1; p <= 2; ++p) {
    const PlayerSequences& seqs = g.index.player(p);
    CHECK(seqs.sequence_infoset[0] == kNoInfoset);
    for (InfosetId iid : seqs.infosets) {
      const InfosetEntry& info = g.index.infoset(iid);
      CHECK(info.player == p);
      CHECK(info.depth == seqs.sequence_depth[static_cast<std::size_t>(info.parent_sequence)] + 1);
      for (int a = 0; a < info.num_actions; ++a) {
        CHECK(g.index.parent_of(p, info.sequence(a)) == info.parent_sequence);
        CHECK(seqs.sequence_action[static_cast<std::size_t>(info.sequence(a))] == a);
      }
    }
  }
  CHECK(g.index.parent_of(1, kEmptySequence) == kEmptySequence);
}

TEST_CASE("behavior to sequence and back is the identity on reached infosets") {
  std::mt19937_64 rng(7);
  for (const SequenceFormGame& g : benchmark_games()) {
    CAPTURE(g.tree.name());
    double worst = 0.0, flow = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      // Mix in exact zeros so the unreached-infoset branch is exercised.
      oracle::TreeStrategy ts = oracle::random_strategy(g.tree, rng);
      if (trial % 4 == 0) {
        for (auto& x : ts) {
          if (x.size() > 1 && rng() % 3 == 0) {
            x[0] += x[1];
            x[1] = 0.0;
          }
        }
      }
      const Profile prof = oracle::to_profile(g.tree, g.index, ts);
      for (int p = 1; p <= 2; ++p) {
        const SequenceStrategy q = behavior_to_sequence(prof[static_cast<std::size_t>(p - 1)], g.index);
        CHECK(q.q[kEmptySequence] == 1.0);
        const BehaviorStrategy back = sequence_to_behavior(q, g.index);
        for (InfosetId iid : g.index.player(p).infosets) {
          const InfosetEntry& info = g.index.infoset(iid);
          const double parent = q.q[static_cast<std::size_t>(info.parent_sequence)];
          double children = 0.0;
          for (int a = 0; a < info.num_actions; ++a) children += q.q[static_cast<std::size_t>(info.sequence(a))];
          flow = std::max(flow, std::abs(children - parent));
          if (parent <= 0.0) continue;
          const auto x0 = prof[static_cast<std::size_t>(p - 1)].at(info);
          const auto x1 = back.at(info);
          for (std::size_t a = 0; a < x0.size(); ++a) worst = std::max(worst, std::abs(x0[a] - x1[a]));
        }
      }
    }
    CHECK(worst <= 1e-12);
    CHECK(flow <= 1e-12);
  }
}

TEST_CASE("sequence-form expected value matches a recursive tree walk") {
  std::mt19937_64 rng(11);
  for (const SequenceFormGame& g : benchmark_games()) {
    CAPTURE(g.tree.name());
    for (int trial = 0; trial <= 20; ++trial) {
      const oracle::TreeStrategy ts = trial == 0 ? oracle::uniform(g.tree) : oracle::random_strategy(g.tree, rng);
      const Profile prof = oracle::to_profile(g.tree, g.index, ts);
      const double v = expected_value(g.utility, behavior_to_sequence(prof[0], g.index),
                                      behavior_to_sequence(prof[1], g.index));
      CHECK(std::abs(v - oracle::expected_value(g.tree, ts)) <= 1e-10);
    }
  }
}

TEST_CASE("utility matrix products agree with each other") {
  const SequenceFormGame g(leduc(3));
  std::mt19937_64 rng(3);
  const Profile prof = oracle::to_profile(g.tree, g.index, oracle::random_strategy(g.tree, rng));
  const SequenceStrategy q1 = behavior_to_sequence(prof[0], g.index);
  const SequenceStrategy q2 = behavior_to_sequence(prof[1], g.index);
  std::vector<double> a1(g.utility.rows()), a2(g.utility.cols()), b1(a1.size()), b2(a2.size());
  g.utility.accumulate_player1(q2.q, a1);
  g.utility.accumulate_player2(q1.q, a2);
  g.utility.accumulate_both(q1.q, q2.q, b1, b2);
  CHECK(a1 == b1);
  CHECK(a2 == b2);
  double v1 = 0.0, v2 = 0.0;
  for (std::size_t s = 0; s < a1.size(); ++s) v1 += a1[s] * q1.q[s];
  for (std::size_t s = 0; s < a2.size(); ++s) v2 += a2[s] * q2.q[s];
  CHECK(v1 == doctest::Approx(-v2).epsilon(1e-12));
  CHECK(v1 == doctest::Approx(expected_value(g.utility, q1, q2)).epsilon(1e-12));
}

TEST_CASE("imperfect recall is rejected") {
  // Player 1 forgets its own first move.
  GameBuilder b;
  const NodeId root = b.add_decision(1, "first");
  const NodeId l = b.add_decision(1, "second");
  const NodeId r = b.add_decision(1, "second");
  b.add_action(root, "L", l);
  b.add_action(root, "R", r);
  for (NodeId n : {l, r}) {
    b.add_action(n, "x", b.add_terminal(1));
    b.add_action(n, "y", b.add_terminal(0));
  }
  try {
    (void)SequenceFormGame(std::move(b).build());
    FAIL("expected a perfect-recall violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPerfectRecallViolation);
  }
}
