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

#include "efpe/bench/config.hpp"

#include <fstream>
#include <sstream>

#include "efpe/error.hpp"
#include "efpe/format.hpp"

namespace efpe::bench {

namespace {

[[noreturn]] void invalid(std::string_view field, const std::string& why) {
  throw Error(ErrorCode::kConfigInvalid, std::string(field) + ": " + why);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double real_value(std::string_view key, std::string_view value) {
  const auto v = parse_real(value);
  if (!v) invalid(key, "expected a number, got '" + std::string(value) + "'");
  return *v;
}

long long integer_value(std::string_view key, std::string_view value) {
  const auto v = parse_integer(value);
  if (!v) {
    // Accept integral reals such as 1e5.
    const auto r = parse_real(value);
    if (r && *r == static_cast<double>(static_cast<long long>(*r))) return static_cast<long long>(*r);
    invalid(key, "expected an integer, got '" + std::string(value) + "'");
  }
  return *v;
}

bool bool_value(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  invalid(key, "expected true or false, got '" + std::string(value) + "'");
}

std::optional<long long> optional_integer(std::string_view key, std::string_view value) {
  if (value.empty() || value == "none") return std::nullopt;
  return integer_value(key, value);
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

void ExperimentConfig::validate() const {
  if (game && !game_file.empty()) invalid("game_file", "set either family/rank or game_file, not both");
  if (!game && game_file.empty()) invalid("family", "no game given (family and rank, or game_file)");
  if (game && (game->rank < 2 || game->rank > max_rank(game->family))) {
    invalid("rank", "supported ranks for " + game->family_name() + " are 2.." +
                        std::to_string(max_rank(game->family)));
  }
  if (output_dir.empty()) invalid("output_dir", "must not be empty");
  solver.validate();
}

std::string ExperimentConfig::game_name() const { return game ? game->display_name() : game_file; }

KeyValues parse_key_values(std::string_view text, std::string_view origin) {
  KeyValues out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfigInvalid,
                  std::string(origin) + ":" + std::to_string(line_no) + ": expected key=value");
    }
    out.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

std::pair<std::string, std::string> parse_override(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw Error(ErrorCode::kConfigInvalid, "--set expects key=value, got '" + std::string(text) + "'");
  }
  return {std::string(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1)))};
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value) {
  SolverConfig& s = c.solver;
  if (key == "family") {
    const auto family = parse_family(value);
    if (!family) invalid(key, "unknown family '" + std::string(value) + "'");
    c.game = GameSpec{*family, c.game ? c.game->rank : 3};
    c.game_file.clear();
  } else if (key == "rank") {
    const long long rank = integer_value(key, value);
    if (!c.game) c.game = GameSpec{};
    c.game->rank = static_cast<int>(rank);
  } else if (key == "game_file") {
    c.game_file = std::string(value);
    if (!c.game_file.empty()) c.game.reset();
  } else if (key == "algorithm") {
    const auto a = parse_algorithm(value);
    if (!a) invalid(key, "expected cfr+ or rtcfr, got '" + std::string(value) + "'");
    s.algorithm = *a;
  } else if (key == "variant") {
    const auto v = parse_variant(value);
    if (!v) invalid(key, "expected rm, rm+ or drm, got '" + std::string(value) + "'");
    s.rule.variant = *v;
  } else if (key == "drm_alpha") {
    s.rule.alpha = real_value(key, value);
  } else if (key == "drm_beta") {
    s.rule.beta = real_value(key, value);
  } else if (key == "mu") {
    s.mu = real_value(key, value);
  } else if (key == "T") {
    s.inner_iterations = integer_value(key, value);
  } else if (key == "N") {
    s.num_bspp = optional_integer(key, value);
  } else if (key == "perturbation") {
    const auto p = parse_perturbation(value);
    if (!p) invalid(key, "expected fixed or adaptive, got '" + std::string(value) + "'");
    s.perturbation = *p;
  } else if (key == "epsilon") {
    s.epsilon = real_value(key, value);
  } else if (key == "delta") {
    s.delta = real_value(key, value);
  } else if (key == "gamma") {
    s.gamma = real_value(key, value);
  } else if (key == "epsilon_floor") {
    s.epsilon_floor = real_value(key, value);
  } else if (key == "alternating") {
    s.alternating = bool_value(key, value);
  } else if (key == "eval_every") {
    s.eval_every = integer_value(key, value);
  } else if (key == "budget") {
    s.traversal_budget = optional_integer(key, value);
  } else if (key == "log_initial") {
    s.log_initial = bool_value(key, value);
  } else if (key == "wall_clock") {
    s.wall_clock = bool_value(key, value);
  } else if (key == "seed") {
    c.seed = integer_value(key, value);
  } else if (key == "output_dir") {
    c.output_dir = std::string(value);
  } else if (key == "label") {
    c.label = std::string(value);
  } else {
    invalid(key, "unknown setting");
  }
}

void apply_settings(ExperimentConfig& config, const KeyValues& settings) {
  for (const auto& [k, v] : settings) apply_setting(config, k, v);
}

KeyValues describe(const ExperimentConfig& c) {
  const SolverConfig& s = c.solver;
  KeyValues out;
  if (c.game) {
    out.emplace_back("family", c.game->family_name());
    out.emplace_back("rank", std::to_string(c.game->rank));
  } else {
    out.emplace_back("game_file", c.game_file);
  }
  out.emplace_back("algorithm", std::string(algorithm_name(s.algorithm)));
  out.emplace_back("variant", std::string(variant_name(s.rule.variant)));
  out.emplace_back("drm_alpha", format_real(s.rule.alpha));
  out.emplace_back("drm_beta", format_real(s.rule.beta));
  out.emplace_back("mu", format_real(s.mu));
  out.emplace_back("T", std::to_string(s.inner_iterations));
  out.emplace_back("N", s.num_bspp ? std::to_string(*s.num_bspp) : "none");
  out.emplace_back("perturbation", std::string(perturbation_name(s.perturbation)));
  out.emplace_back("epsilon", format_real(s.epsilon));
  out.emplace_back("delta", format_real(s.delta));
  out.emplace_back("gamma", format_real(s.gamma));
  out.emplace_back("epsilon_floor", format_real(s.epsilon_floor));
  out.emplace_back("alternating", bool_text(s.alternating));
  out.emplace_back("eval_every", std::to_string(s.eval_every));
  out.emplace_back("budget", s.traversal_budget ? std::to_string(*s.traversal_budget) : "none");
  out.emplace_back("log_initial", bool_text(s.log_initial));
  out.emplace_back("wall_clock", bool_text(s.wall_clock));
  out.emplace_back("seed", std::to_string(c.seed));
  out.emplace_back("output_dir", c.output_dir);
  out.emplace_back("label", c.label);
  return out;
}

namespace {

struct PresetRow {
  const char* name;
  const char* family;
  int rank;
  const char* T;
  const char* mu;
  const char* epsilon;
  const char* delta;
  const char* gamma;
};

// mu is unused when T = 1 (the reference is reset every iteration).
constexpr PresetRow kPresets[] = {
    {"kuhn3", "kuhn", 3, "5", "0.01", "0.1", "1", "0.5"},
    {"leduc3", "leduc", 3, "200", "0.0001", "0.01", "0.02", "0.1"},
    {"leduc5", "leduc", 5, "200", "0.0001", "0.1", "0.5", "0.5"},
    {"goofspiel3", "goofspiel", 3, "20", "0.001", "0.1", "0.5", "0.95"},
    {"goofspiel4", "goofspiel", 4, "30", "0.001", "0.1", "0.5", "0.9"},
    {"liarsdice5", "liars_dice", 5, "1", "0", "0.1", "0.5", "0.5"},
    {"liarsdice6", "liars_dice", 6, "1", "0", "0.1", "0.5", "0.5"},
};

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const PresetRow& row : kPresets) out.push_back(std::string("table2:") + row.name);
  return out;
}

KeyValues preset(std::string_view name) {
  std::string_view short_name = name;
  if (short_name.starts_with("table2:")) short_name.remove_prefix(7);
  for (const PresetRow& row : kPresets) {
    if (short_name != row.name) continue;
    return {{"family", row.family},
            {"rank", std::to_string(row.rank)},
            {"algorithm", "rtcfr"},
            {"variant", "rm+"},
            {"T", row.T},
            {"mu", row.mu},
            {"perturbation", "adaptive"},
            {"epsilon", row.epsilon},
            {"delta", row.delta},
            {"gamma", row.gamma},
            {"alternating", "true"},
            {"budget", "100000"},
            {"eval_every", "100"},
            {"label", "rtcfr+ (adp)"}};
  }
  throw Error(ErrorCode::kConfigInvalid, "preset: unknown preset '" + std::string(name) + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig load_experiment(const std::optional<std::string>& preset_name,
                                 const std::optional<std::string>& config_path,
                                 const std::vector<std::string>& overrides) {
  ExperimentConfig config;
  if (preset_name) apply_settings(config, preset(*preset_name));
  if (config_path) apply_settings(config, parse_key_values(read_text_file(*config_path), *config_path));
  for (const std::string& o : overrides) {
    const auto [k, v] = parse_override(o);
    apply_setting(config, k, v);
  }
  config.validate();
  return config;
}

}  // namespace efpe::bench
