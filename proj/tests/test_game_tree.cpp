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

#include <sstream>

#include "efpe/error.hpp"
#include "efpe/game_tree.hpp"
#include "efpe/games.hpp"

using namespace efpe;

namespace {

// Matching pennies with player 2 moving blind.
GameTree pennies() {
  GameBuilder b("pennies");
  const NodeId root = b.add_decision(1, "p1");
  const NodeId h = b.add_decision(2, "p2");
  const NodeId t = b.add_decision(2, "p2");
  b.add_action(root, "H", h);
  b.add_action(root, "T", t);
  b.add_action(h, "h", b.add_terminal(1));
  b.add_action(h, "t", b.add_terminal(-1));
  b.add_action(t, "h", b.add_terminal(-1));
  b.add_action(t, "t", b.add_terminal(1));
  return std::move(b).build();
}

void expect_code(ErrorCode code, auto&& fn) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

}  // namespace

TEST_CASE("builder interns infosets and actions") {
  const GameTree g = pennies();
  CHECK(g.name() == "pennies");
  CHECK(g.num_nodes() == 7);
  CHECK(g.num_infosets() == 2);
  CHECK(g.num_terminals() == 4);
  CHECK(g.infoset(1).members.size() == 2);
  CHECK(g.infoset(1).player == 2);
  CHECK(g.action_label(g.node(g.root()).actions[1]) == "T");
}

TEST_CASE("chance probabilities must sum to one") {
  GameBuilder b;
  const NodeId c = b.add_chance();
  b.add_chance_outcome(c, "a", 0.5, b.add_terminal(0));
  b.add_chance_outcome(c, "b", 0.4, b.add_terminal(0));
  expect_code(ErrorCode::kInvalidGame, [&] { (void)std::move(b).build(); });
}

TEST_CASE("infoset members must share the action set") {
  GameBuilder b;
  const NodeId c = b.add_chance();
  const NodeId d1 = b.add_decision(1, "I");
  const NodeId d2 = b.add_decision(1, "I");
  b.add_chance_outcome(c, "x", 0.5, d1);
  b.add_chance_outcome(c, "y", 0.5, d2);
  b.add_action(d1, "a", b.add_terminal(1));
  b.add_action(d2, "b", b.add_terminal(1));
  expect_code(ErrorCode::kInvalidGame, [&] { (void)std::move(b).build(); });
}

TEST_CASE("serialization round-trips exactly") {
  for (const GameSpec& spec : {GameSpec{GameFamily::kKuhn, 3}, GameSpec{GameFamily::kLeduc, 3},
                               GameSpec{GameFamily::kGoofspiel, 3}, GameSpec{GameFamily::kLiarsDice, 3}}) {
    const GameTree g = generate(spec);
    const std::string text = serialize_game(g);
    std::istringstream in(text);
    const GameTree back = parse_game(in);
    CHECK(back.name() == g.name());
    CHECK(back.num_nodes() == g.num_nodes());
    CHECK(back.num_infosets() == g.num_infosets());
    CHECK(serialize_game(back) == text);
  }
}

TEST_CASE("parser reports malformed input") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_game(in);
  };
  expect_code(ErrorCode::kParseError, [&] { parse("node 0 terminal 1\n"); });
  expect_code(ErrorCode::kParseError, [&] { parse("players 3\n"); });
  expect_code(ErrorCode::kParseError, [&] { parse("players 2\nnode 0 terminal x\n"); });
  expect_code(ErrorCode::kParseError, [&] { parse("players 2\nnode 0 player 1 infoset 0 actions a\n"); });
  expect_code(ErrorCode::kParseError,
              [&] { parse("players 2\nnode 0 player 1 infoset 0 actions a\nnode 1 terminal 0\nedge 0 b 1\n"); });
  const GameTree ok = parse("players 2\nnode 0 player 1 infoset 0 actions a\nnode 1 terminal 2.5\nedge 0 a 1\n");
  CHECK(ok.num_nodes() == 2);
  CHECK(ok.node(1).utility_p1 == 2.5);
}

TEST_CASE("missing files are IO errors") {
  expect_code(ErrorCode::kIoError, [] { (void)load_game("/nonexistent/dir/game.efg"); });
}
