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

#ifndef EFPE_GAME_TREE_HPP_
#define EFPE_GAME_TREE_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace efpe {

using NodeId = std::int32_t;
using InfosetId = std::int32_t;
using ActionId = std::int32_t;

inline constexpr NodeId kNoNode = -1;
inline constexpr InfosetId kNoInfoset = -1;
inline constexpr int kChancePlayer = 0;

inline int opponent(int player) { return 3 - player; }

enum class NodeKind : std::uint8_t { kChance, kDecision, kTerminal };

// One node of an extensive-form game. Chance and decision nodes carry an
// ordered list of (action, child) edges; chance nodes also carry the outcome
// probabilities. Utilities are stored for player 1 only.
struct GameNode {
  NodeKind kind = NodeKind::kTerminal;
  int player = kChancePlayer;
  InfosetId infoset = kNoInfoset;
  NodeId parent = kNoNode;
  std::vector<ActionId> actions;
  std::vector<NodeId> children;
  std::vector<double> probabilities;
  double utility_p1 = 0.0;

  bool is_terminal() const { return kind == NodeKind::kTerminal; }
  bool is_chance() const { return kind == NodeKind::kChance; }
  bool is_decision() const { return kind == NodeKind::kDecision; }
};

struct InfoSet {
  InfosetId id = kNoInfoset;
  int player = 0;
  std::vector<ActionId> actions;
  std::vector<NodeId> members;
  std::string label;
};

// Immutable two-player zero-sum extensive-form game. Construct through
// GameBuilder or parse_game; both validate the tree before handing it out.
class GameTree {
 public:
  GameTree() = default;

  const std::string& name() const { return name_; }
  NodeId root() const { return root_; }
  std::size_t num_nodes() const { return nodes_.size(); }
  const GameNode& node(NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }
  const std::vector<GameNode>& nodes() const { return nodes_; }

  std::size_t num_infosets() const { return infosets_.size(); }
  const InfoSet& infoset(InfosetId id) const { return infosets_[static_cast<std::size_t>(id)]; }
  const std::vector<InfoSet>& infosets() const { return infosets_; }

  std::size_t num_terminals() const;

  const std::string& action_label(ActionId a) const { return action_labels_[static_cast<std::size_t>(a)]; }
  const std::vector<std::string>& action_labels() const { return action_labels_; }

 private:
  friend class GameBuilder;
  friend GameTree parse_game(std::istream& in);

  // Structural checks shared by both construction paths. Throws
  // Error(kInvalidGame) on the first violation.
  void validate() const;

  std::string name_;
  NodeId root_ = kNoNode;
  std::vector<GameNode> nodes_;
  std::vector<InfoSet> infosets_;
  std::vector<std::string> action_labels_;
};

// Incremental construction of a GameTree. Callers create a node, then attach
// its children in action order. Infosets are interned by (player, key), with
// ids assigned in order of first appearance.
class GameBuilder {
 public:
  explicit GameBuilder(std::string name = {});

  NodeId add_terminal(double utility_p1);
  NodeId add_chance();
  NodeId add_decision(int player, std::string_view infoset_key);

  void add_chance_outcome(NodeId chance, std::string_view label, double probability, NodeId child);
  void add_action(NodeId decision, std::string_view label, NodeId child);

  // The root is the first node created.
  GameTree build() &&;

 private:
  ActionId intern_action(std::string_view label);
  void attach(NodeId parent, NodeId child);

  GameTree tree_;
  std::unordered_map<std::string, ActionId> action_ids_;
  std::unordered_map<std::string, InfosetId> infoset_ids_;
};

// Line-oriented text format:
//   players 2
//   # name: <free text>            (optional)
//   node <id> chance <action>:<prob> ...
//   node <id> player <p> infoset <iid> actions <a> ...
//   node <id> terminal <u1>
//   edge <parent> <action> <child>
// Reals are written with 17 significant digits.
std::string serialize_game(const GameTree& tree);
void write_game(const GameTree& tree, std::ostream& out);
GameTree parse_game(std::istream& in);
GameTree load_game(const std::string& path);
void save_game(const GameTree& tree, const std::string& path);

}  // namespace efpe

#endif  // EFPE_GAME_TREE_HPP_
