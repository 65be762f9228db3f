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

#include "efpe/game_tree.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "efpe/error.hpp"
#include "efpe/format.hpp"

namespace efpe {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidGame: return "INVALID_GAME";
    case ErrorCode::kPerfectRecallViolation: return "PERFECT_RECALL_VIOLATION";
    case ErrorCode::kParseError: return "PARSE_ERROR";
    case ErrorCode::kUnsupportedRank: return "UNSUPPORTED_RANK";
    case ErrorCode::kEpsilonTooLarge: return "EPSILON_TOO_LARGE";
    case ErrorCode::kConfigInvalid: return "CONFIG_INVALID";
    case ErrorCode::kGameSizeMismatch: return "GAME_SIZE_MISMATCH";
    case ErrorCode::kSchemaMismatch: return "SCHEMA_MISMATCH";
    case ErrorCode::kIoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::kInvalidGame, what); }

constexpr double kProbabilityTolerance = 1e-12;

}  // namespace

std::size_t GameTree::num_terminals() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const GameNode& n) { return n.is_terminal(); }));
}

void GameTree::validate() const {
  if (nodes_.empty()) invalid("game has no nodes");
  if (root_ < 0 || static_cast<std::size_t>(root_) >= nodes_.size()) invalid("root out of range");
  if (nodes_[static_cast<std::size_t>(root_)].parent != kNoNode) invalid("root has a parent");

  std::vector<char> seen(nodes_.size(), 0);
  std::vector<NodeId> stack{root_};
  std::size_t visited = 0;
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (seen[static_cast<std::size_t>(id)]) invalid("node " + std::to_string(id) + " reached twice");
    seen[static_cast<std::size_t>(id)] = 1;
    ++visited;
    const GameNode& n = node(id);
    if (n.children.size() != n.actions.size()) invalid("node " + std::to_string(id) + ": action/child count mismatch");
    for (NodeId c : n.children) {
      if (c < 0 || static_cast<std::size_t>(c) >= nodes_.size()) invalid("child out of range");
      if (node(c).parent != id) invalid("node " + std::to_string(c) + " has inconsistent parent");
      stack.push_back(c);
    }
    switch (n.kind) {
      case NodeKind::kTerminal:
        if (!n.children.empty()) invalid("terminal node " + std::to_string(id) + " has children");
        if (!std::isfinite(n.utility_p1)) invalid("terminal node " + std::to_string(id) + " has non-finite utility");
        break;
      case NodeKind::kChance: {
        if (n.children.empty()) invalid("chance node " + std::to_string(id) + " has no outcomes");
        if (n.probabilities.size() != n.children.size()) invalid("chance node probability count mismatch");
        double total = 0.0;
        for (double p : n.probabilities) {
          if (!(p >= 0.0) || !std::isfinite(p)) invalid("chance node " + std::to_string(id) + " has a negative probability");
          total += p;
        }
        if (std::abs(total - 1.0) > kProbabilityTolerance) {
          invalid("chance node " + std::to_string(id) + " probabilities sum to " + format_real(total));
        }
        break;
      }
      case NodeKind::kDecision: {
        if (n.player != 1 && n.player != 2) invalid("decision node with player " + std::to_string(n.player));
        if (n.children.empty()) invalid("decision node " + std::to_string(id) + " has no actions");
        if (n.infoset < 0 || static_cast<std::size_t>(n.infoset) >= infosets_.size()) invalid("infoset out of range");
        const InfoSet& info = infoset(n.infoset);
        if (info.player != n.player) invalid("infoset " + std::to_string(info.id) + " mixes players");
        if (info.actions != n.actions) invalid("infoset " + std::to_string(info.id) + " has inconsistent action sets");
        break;
      }
    }
  }
  if (visited != nodes_.size()) invalid("nodes unreachable from the root");
  for (const InfoSet& info : infosets_) {
    if (info.members.empty()) invalid("infoset " + std::to_string(info.id) + " has no members");
    if (info.actions.empty()) invalid("infoset " + std::to_string(info.id) + " has no actions");
  }
}

// ---------------------------------------------------------------------------

GameBuilder::GameBuilder(std::string name) { tree_.name_ = std::move(name); }

NodeId GameBuilder::add_terminal(double utility_p1) {
  GameNode n;
  n.kind = NodeKind::kTerminal;
  n.utility_p1 = utility_p1;
  tree_.nodes_.push_back(std::move(n));
  return static_cast<NodeId>(tree_.nodes_.size() - 1);
}

NodeId GameBuilder::add_chance() {
  GameNode n;
  n.kind = NodeKind::kChance;
  tree_.nodes_.push_back(std::move(n));
  return static_cast<NodeId>(tree_.nodes_.size() - 1);
}

NodeId GameBuilder::add_decision(int player, std::string_view infoset_key) {
  if (player != 1 && player != 2) invalid("decision player must be 1 or 2");
  std::string key = std::to_string(player) + "|" + std::string(infoset_key);
  auto [it, inserted] = infoset_ids_.try_emplace(key, static_cast<InfosetId>(tree_.infosets_.size()));
  if (inserted) {
    InfoSet info;
    info.id = it->second;
    info.player = player;
    info.label = std::string(infoset_key);
    tree_.infosets_.push_back(std::move(info));
  }
  GameNode n;
  n.kind = NodeKind::kDecision;
  n.player = player;
  n.infoset = it->second;
  tree_.nodes_.push_back(std::move(n));
  NodeId id = static_cast<NodeId>(tree_.nodes_.size() - 1);
  tree_.infosets_[static_cast<std::size_t>(it->second)].members.push_back(id);
  return id;
}

ActionId GameBuilder::intern_action(std::string_view label) {
  auto [it, inserted] = action_ids_.try_emplace(std::string(label), static_cast<ActionId>(tree_.action_labels_.size()));
  if (inserted) tree_.action_labels_.emplace_back(label);
  return it->second;
}

void GameBuilder::attach(NodeId parent, NodeId child) {
  GameNode& c = tree_.nodes_.at(static_cast<std::size_t>(child));
  if (c.parent != kNoNode) invalid("node " + std::to_string(child) + " already has a parent");
  c.parent = parent;
}

void GameBuilder::add_chance_outcome(NodeId chance, std::string_view label, double probability, NodeId child) {
  GameNode& n = tree_.nodes_.at(static_cast<std::size_t>(chance));
  if (!n.is_chance()) invalid("add_chance_outcome on a non-chance node");
  attach(chance, child);
  n.actions.push_back(intern_action(label));
  n.children.push_back(child);
  n.probabilities.push_back(probability);
}

void GameBuilder::add_action(NodeId decision, std::string_view label, NodeId child) {
  GameNode& n = tree_.nodes_.at(static_cast<std::size_t>(decision));
  if (!n.is_decision()) invalid("add_action on a non-decision node");
  attach(decision, child);
  n.actions.push_back(intern_action(label));
  n.children.push_back(child);
}

GameTree GameBuilder::build() && {
  tree_.root_ = tree_.nodes_.empty() ? kNoNode : 0;
  for (InfoSet& info : tree_.infosets_) {
    if (!info.members.empty()) info.actions = tree_.node(info.members.front()).actions;
  }
  tree_.validate();
  return std::move(tree_);
}

// ---------------------------------------------------------------------------

void write_game(const GameTree& tree, std::ostream& out) {
  out << "players 2\n";
  if (!tree.name().empty()) out << "# name: " << tree.name() << "\n";
  for (std::size_t i = 0; i < tree.num_nodes(); ++i) {
    const GameNode& n = tree.node(static_cast<NodeId>(i));
    out << "node " << i;
    switch (n.kind) {
      case NodeKind::kChance:
        out << " chance";
        for (std::size_t k = 0; k < n.actions.size(); ++k) {
          out << ' ' << tree.action_label(n.actions[k]) << ':' << format_real(n.probabilities[k]);
        }
        break;
      case NodeKind::kDecision:
        out << " player " << n.player << " infoset " << n.infoset << " actions";
        for (ActionId a : n.actions) out << ' ' << tree.action_label(a);
        break;
      case NodeKind::kTerminal:
        out << " terminal " << format_real(n.utility_p1);
        break;
    }
    out << '\n';
  }
  for (std::size_t i = 0; i < tree.num_nodes(); ++i) {
    const GameNode& n = tree.node(static_cast<NodeId>(i));
    for (std::size_t k = 0; k < n.children.size(); ++k) {
      out << "edge " << i << ' ' << tree.action_label(n.actions[k]) << ' ' << n.children[k] << '\n';
    }
  }
}

std::string serialize_game(const GameTree& tree) {
  std::ostringstream out;
  write_game(tree, out);
  return out.str();
}

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

long long need_int(std::string_view tok, std::size_t line) {
  auto v = parse_integer(tok);
  if (!v) parse_error(line, "expected integer, got '" + std::string(tok) + "'");
  return *v;
}

double need_real(std::string_view tok, std::size_t line) {
  auto v = parse_real(tok);
  if (!v) parse_error(line, "expected real, got '" + std::string(tok) + "'");
  return *v;
}

}  // namespace

GameTree parse_game(std::istream& in) {
  struct PendingNode {
    bool defined = false;
    GameNode node;
    std::vector<std::string> labels;
    std::vector<NodeId> children;
    long long file_infoset = -1;
  };
  GameTree tree;
  std::vector<PendingNode> pending;
  std::unordered_map<std::string, ActionId> action_ids;
  auto intern = [&](std::string_view label) {
    auto [it, inserted] = action_ids.try_emplace(std::string(label), static_cast<ActionId>(tree.action_labels_.size()));
    if (inserted) tree.action_labels_.emplace_back(label);
    return it->second;
  };
  auto slot = [&](long long id, std::size_t line) -> PendingNode& {
    if (id < 0 || id > 100'000'000) parse_error(line, "node id out of range");
    if (static_cast<std::size_t>(id) >= pending.size()) pending.resize(static_cast<std::size_t>(id) + 1);
    return pending[static_cast<std::size_t>(id)];
  };

  std::string raw;
  std::size_t line_no = 0;
  bool saw_header = false;
  struct Edge { NodeId parent; std::string label; NodeId child; std::size_t line; };
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    line.remove_prefix(first);
    if (line.front() == '#') {
      constexpr std::string_view kName = "# name:";
      if (line.substr(0, kName.size()) == kName) {
        std::string_view rest = line.substr(kName.size());
        auto b = rest.find_first_not_of(' ');
        auto e = rest.find_last_not_of(" \r");
        tree.name_ = b == std::string_view::npos ? "" : std::string(rest.substr(b, e - b + 1));
      }
      continue;
    }
    auto tok = split_ws(line);
    if (tok[0] == "players") {
      if (tok.size() != 2 || tok[1] != "2") parse_error(line_no, "only two-player games are supported");
      saw_header = true;
    } else if (tok[0] == "node") {
      if (!saw_header) parse_error(line_no, "missing 'players 2' header");
      if (tok.size() < 3) parse_error(line_no, "truncated node line");
      PendingNode& p = slot(need_int(tok[1], line_no), line_no);
      if (p.defined) parse_error(line_no, "duplicate node id");
      p.defined = true;
      if (tok[2] == "terminal") {
        if (tok.size() != 4) parse_error(line_no, "terminal expects one utility");
        p.node.kind = NodeKind::kTerminal;
        p.node.utility_p1 = need_real(tok[3], line_no);
      } else if (tok[2] == "chance") {
        p.node.kind = NodeKind::kChance;
        for (std::size_t k = 3; k < tok.size(); ++k) {
          std::string_view t = tok[k];
          if (!t.empty() && t.front() == '(') t.remove_prefix(1);
          if (!t.empty() && t.back() == ')') t.remove_suffix(1);
          auto colon = t.rfind(':');
          if (colon == std::string_view::npos || colon == 0) parse_error(line_no, "chance outcome must be <action>:<prob>");
          p.labels.emplace_back(t.substr(0, colon));
          p.node.actions.push_back(intern(t.substr(0, colon)));
          p.node.probabilities.push_back(need_real(t.substr(colon + 1), line_no));
        }
      } else if (tok[2] == "player") {
        if (tok.size() < 7 || tok[4] != "infoset" || tok[6] != "actions") {
          parse_error(line_no, "expected 'player <p> infoset <iid> actions <a>...'");
        }
        p.node.kind = NodeKind::kDecision;
        p.node.player = static_cast<int>(need_int(tok[3], line_no));
        p.file_infoset = need_int(tok[5], line_no);
        for (std::size_t k = 7; k < tok.size(); ++k) {
          p.labels.emplace_back(tok[k]);
          p.node.actions.push_back(intern(tok[k]));
        }
      } else {
        parse_error(line_no, "unknown node kind '" + std::string(tok[2]) + "'");
      }
      p.children.assign(p.labels.size(), kNoNode);
    } else if (tok[0] == "edge") {
      if (tok.size() != 4) parse_error(line_no, "edge expects <parent> <action> <child>");
      edges.push_back({static_cast<NodeId>(need_int(tok[1], line_no)), std::string(tok[2]),
                       static_cast<NodeId>(need_int(tok[3], line_no)), line_no});
    } else {
      parse_error(line_no, "unknown record '" + std::string(tok[0]) + "'");
    }
  }
  if (!saw_header) parse_error(line_no, "missing 'players 2' header");
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (!pending[i].defined) parse_error(line_no, "node " + std::to_string(i) + " referenced or skipped but never defined");
  }
  for (const Edge& e : edges) {
    if (e.parent < 0 || static_cast<std::size_t>(e.parent) >= pending.size() || e.child < 0 ||
        static_cast<std::size_t>(e.child) >= pending.size()) {
      parse_error(e.line, "edge references an undefined node");
    }
    PendingNode& p = pending[static_cast<std::size_t>(e.parent)];
    auto it = std::find(p.labels.begin(), p.labels.end(), e.label);
    if (it == p.labels.end()) parse_error(e.line, "edge action '" + e.label + "' not declared on its parent");
    auto k = static_cast<std::size_t>(it - p.labels.begin());
    if (p.children[k] != kNoNode) parse_error(e.line, "duplicate edge");
    p.children[k] = e.child;
    GameNode& child = pending[static_cast<std::size_t>(e.child)].node;
    if (child.parent != kNoNode) parse_error(e.line, "node has two parents");
    child.parent = e.parent;
  }

  std::map<long long, InfosetId> infoset_remap;
  tree.nodes_.reserve(pending.size());
  for (std::size_t i = 0; i < pending.size(); ++i) {
    PendingNode& p = pending[i];
    for (NodeId c : p.children) {
      if (c == kNoNode) parse_error(line_no, "node " + std::to_string(i) + " has an action without an edge");
    }
    p.node.children = p.children;
    if (p.node.is_decision()) {
      auto [it, inserted] = infoset_remap.try_emplace(p.file_infoset, static_cast<InfosetId>(tree.infosets_.size()));
      if (inserted) {
        InfoSet info;
        info.id = it->second;
        info.player = p.node.player;
        info.actions = p.node.actions;
        info.label = "I" + std::to_string(p.file_infoset);
        tree.infosets_.push_back(std::move(info));
      }
      p.node.infoset = it->second;
      tree.infosets_[static_cast<std::size_t>(it->second)].members.push_back(static_cast<NodeId>(i));
    }
    tree.nodes_.push_back(std::move(p.node));
  }
  NodeId root = kNoNode;
  for (std::size_t i = 0; i < tree.nodes_.size(); ++i) {
    if (tree.nodes_[i].parent == kNoNode) {
      if (root != kNoNode) throw Error(ErrorCode::kInvalidGame, "more than one parentless node");
      root = static_cast<NodeId>(i);
    }
  }
  tree.root_ = root;
  tree.validate();
  return tree;
}

GameTree load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return parse_game(in);
}

void save_game(const GameTree& tree, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  write_game(tree, out);
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

}  // namespace efpe
