// Copyright 2026 The iadmit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "iadmit/error.hpp"
#include "iadmit/rational.hpp"

namespace iadmit {

// Strategy indices, one per player (full profile) or one per opponent in
// increasing player order (opponent profile, length n-1).
using Profile = std::vector<std::size_t>;

// Inserts `own` at position `player` of an opponent profile.
inline Profile with_own(std::size_t player, std::size_t own, const Profile& opponents) {
  Profile full(opponents);
  full.insert(full.begin() + static_cast<std::ptrdiff_t>(player), own);
  return full;
}

inline Profile opponents_of(std::size_t player, const Profile& full) {
  Profile opp(full);
  opp.erase(opp.begin() + static_cast<std::ptrdiff_t>(player));
  return opp;
}

// Calls fn(profile) for every element of sets[0] x sets[1] x ... in
// lexicographic order. An empty factor yields no profiles; zero factors
// yield the single empty profile.
template <typename Fn>
void for_each_product(const std::vector<std::vector<std::size_t>>& sets, Fn&& fn) {
  for (const auto& s : sets) {
    if (s.empty()) return;
  }
  std::vector<std::size_t> cursor(sets.size(), 0);
  Profile current(sets.size());
  for (std::size_t k = 0; k < sets.size(); ++k) current[k] = sets[k][0];
  while (true) {
    fn(static_cast<const Profile&>(current));
    std::size_t k = sets.size();
    while (k > 0) {
      --k;
      if (++cursor[k] < sets[k].size()) {
        current[k] = sets[k][cursor[k]];
        break;
      }
      cursor[k] = 0;
      current[k] = sets[k][0];
      if (k == 0) return;
    }
    if (sets.empty()) return;
  }
}

// Finite n-player normal-form game with exact rational payoffs. Immutable.
class NormalFormGame {
 public:
  // `payoffs` is indexed by the flattened profile (player 0 most
  // significant); each entry holds one payoff per player.
  NormalFormGame(std::vector<std::string> players,
                 std::vector<std::vector<std::string>> strategies,
                 std::vector<std::vector<Rational>> payoffs)
      : players_(std::move(players)),
        strategies_(std::move(strategies)),
        payoffs_(std::move(payoffs)) {
    const std::size_t n = players_.size();
    if (n < 2) throw DomainError("a game needs at least two players");
    if (strategies_.size() != n) {
      throw DomainError("strategy lists do not match the player count");
    }
    std::size_t count = 1;
    index_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (strategies_[i].empty()) {
        throw DomainError("player " + players_[i] + " has no strategies");
      }
      for (std::size_t s = 0; s < strategies_[i].size(); ++s) {
        if (!index_[i].emplace(strategies_[i][s], s).second) {
          throw DomainError("duplicate strategy id '" + strategies_[i][s] +
                            "' for player " + players_[i]);
        }
      }
      count *= strategies_[i].size();
    }
    if (payoffs_.size() != count) {
      throw DomainError("payoff table is not total over the profile space");
    }
    for (const auto& entry : payoffs_) {
      if (entry.size() != n) throw DomainError("payoff entry has wrong arity");
    }
  }

  std::size_t num_players() const { return players_.size(); }
  const std::string& player_name(std::size_t i) const { return players_.at(i); }
  const std::vector<std::string>& players() const { return players_; }
  const std::vector<std::string>& strategies(std::size_t i) const { return strategies_.at(i); }
  std::size_t num_strategies(std::size_t i) const { return strategies_.at(i).size(); }
  const std::string& strategy_name(std::size_t i, std::size_t s) const {
    return strategies_.at(i).at(s);
  }

  std::optional<std::size_t> find_strategy(std::size_t i, std::string_view id) const {
    const auto it = index_.at(i).find(std::string(id));
    if (it == index_.at(i).end()) return std::nullopt;
    return it->second;
  }

  std::size_t strategy_index(std::size_t i, std::string_view id) const {
    if (i >= num_players()) {
      throw DomainError("player index " + std::to_string(i + 1) + " out of range");
    }
    if (auto s = find_strategy(i, id)) return *s;
    throw DomainError("strategy '" + std::string(id) + "' not found for player " +
                      std::to_string(i + 1) + " (" + players_[i] + ")");
  }

  // Resolves a 1-based index ("2") or a player name.
  std::size_t player_index(std::string_view ref) const {
    for (std::size_t i = 0; i < players_.size(); ++i) {
      if (players_[i] == ref) return i;
    }
    if (!ref.empty() && std::all_of(ref.begin(), ref.end(), [](char c) {
          return c >= '0' && c <= '9';
        })) {
      const auto k = std::stoul(std::string(ref));
      if (k >= 1 && k <= players_.size()) return k - 1;
    }
    throw DomainError("unknown player '" + std::string(ref) + "'");
  }

  std::size_t num_profiles() const { return payoffs_.size(); }

  std::size_t flat_index(const Profile& profile) const {
    if (profile.size() != num_players()) throw DomainError("profile has wrong length");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
      if (profile[i] >= strategies_[i].size()) {
        throw DomainError("strategy index out of range for player " + std::to_string(i + 1));
      }
      idx = idx * strategies_[i].size() + profile[i];
    }
    return idx;
  }

  const Rational& payoff(std::size_t player, const Profile& profile) const {
    return payoffs_[flat_index(profile)].at(player);
  }
  const std::vector<Rational>& payoffs(const Profile& profile) const {
    return payoffs_[flat_index(profile)];
  }

  std::string profile_label(const Profile& profile) const {
    std::string out = "(";
    for (std::size_t i = 0; i < profile.size(); ++i) {
      if (i) out += ',';
      out += strategies_.at(i).at(profile[i]);
    }
    return out + ")";
  }

  std::string opponent_label(std::size_t player, const Profile& opponents) const {
    std::string out = "(";
    for (std::size_t k = 0; k < opponents.size(); ++k) {
      const std::size_t j = k < player ? k : k + 1;
      if (k) out += ',';
      out += strategies_.at(j).at(opponents[k]);
    }
    return out + ")";
  }

  friend bool operator==(const NormalFormGame& a, const NormalFormGame& b) {
    return a.players_ == b.players_ && a.strategies_ == b.strategies_ &&
           a.payoffs_ == b.payoffs_;
  }

 private:
  std::vector<std::string> players_;
  std::vector<std::vector<std::string>> strategies_;
  std::vector<std::vector<Rational>> payoffs_;
  std::vector<std::unordered_map<std::string, std::size_t>> index_;
};

// Per-player subsets of strategy indices (sorted, duplicate free).
class StrategyRestriction {
 public:
  StrategyRestriction() = default;
  explicit StrategyRestriction(std::vector<std::vector<std::size_t>> sets) : sets_(std::move(sets)) {
    for (auto& s : sets_) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
  }

  static StrategyRestriction full(const NormalFormGame& game) {
    std::vector<std::vector<std::size_t>> sets(game.num_players());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (std::size_t s = 0; s < game.num_strategies(i); ++s) sets[i].push_back(s);
    }
    return StrategyRestriction(std::move(sets));
  }

  std::size_t num_players() const { return sets_.size(); }
  const std::vector<std::size_t>& operator[](std::size_t i) const { return sets_.at(i); }
  const std::vector<std::vector<std::size_t>>& sets() const { return sets_; }

  bool contains(std::size_t i, std::size_t s) const {
    return std::binary_search(sets_.at(i).begin(), sets_.at(i).end(), s);
  }
  bool contains(const Profile& profile) const {
    for (std::size_t i = 0; i < profile.size(); ++i) {
      if (!contains(i, profile[i])) return false;
    }
    return true;
  }

  // Throws if any player's set is not a subset of that player's strategies.
  void validate(const NormalFormGame& game) const {
    if (sets_.size() != game.num_players()) {
      throw DomainError("restriction has wrong player count");
    }
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      for (std::size_t s : sets_[i]) {
        if (s >= game.num_strategies(i)) throw DomainError("restriction strategy out of range");
      }
    }
  }

  std::vector<Profile> profiles() const {
    std::vector<Profile> out;
    for_each_product(sets_, [&](const Profile& p) { out.push_back(p); });
    return out;
  }

  // Lexicographic enumeration of the product over j != i.
  std::vector<Profile> opponent_profiles(std::size_t i) const {
    std::vector<std::vector<std::size_t>> rest;
    for (std::size_t j = 0; j < sets_.size(); ++j) {
      if (j != i) rest.push_back(sets_[j]);
    }
    std::vector<Profile> out;
    for_each_product(rest, [&](const Profile& p) { out.push_back(p); });
    return out;
  }

  bool subset_of(const StrategyRestriction& other) const {
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      for (std::size_t s : sets_[i]) {
        if (!other.contains(i, s)) return false;
      }
    }
    return true;
  }

  friend bool operator==(const StrategyRestriction&, const StrategyRestriction&) = default;

 private:
  std::vector<std::vector<std::size_t>> sets_;
};

// Distribution over opponent profiles of `player`. Zero weights are not stored.
struct Belief {
  std::size_t player = 0;
  std::map<Profile, Rational> weights;

  std::vector<Profile> support() const {
    std::vector<Profile> out;
    out.reserve(weights.size());
    for (const auto& [p, w] : weights) out.push_back(p);
    return out;
  }

  // Throws DomainError unless weights are positive, sum to one and every
  // profile is an opponent profile of `player`.
  void validate(const NormalFormGame& game) const {
    if (player >= game.num_players()) throw DomainError("belief for unknown player");
    Rational total = 0;
    for (const auto& [p, w] : weights) {
      if (p.size() != game.num_players() - 1) {
        throw DomainError("belief profile is not over the opponents of player " +
                          std::to_string(player + 1));
      }
      for (std::size_t k = 0; k < p.size(); ++k) {
        const std::size_t j = k < player ? k : k + 1;
        if (p[k] >= game.num_strategies(j)) throw DomainError("belief profile out of range");
      }
      if (w <= 0) throw DomainError("belief weights must be positive");
      total += w;
    }
    if (total != 1) throw DomainError("belief weights sum to " + to_string(total) + ", not 1");
  }

  static Belief uniform(std::size_t player, const std::vector<Profile>& support) {
    Belief b{player, {}};
    const Rational w(1, static_cast<unsigned long>(support.size()));
    for (const auto& p : support) b.weights.emplace(p, w);
    return b;
  }
};

struct MixedStrategy {
  std::size_t player = 0;
  std::vector<Rational> weights;  // indexed by strategy

  void validate(const NormalFormGame& game) const {
    if (player >= game.num_players() || weights.size() != game.num_strategies(player)) {
      throw DomainError("mixed strategy has wrong dimension");
    }
    Rational total = 0;
    for (const auto& w : weights) {
      if (w < 0) throw DomainError("negative mixture weight");
      total += w;
    }
    if (total != 1) throw DomainError("mixture weights do not sum to 1");
  }

  static MixedStrategy point(const NormalFormGame& game, std::size_t player, std::size_t s) {
    MixedStrategy m{player, std::vector<Rational>(game.num_strategies(player), Rational(0))};
    m.weights.at(s) = 1;
    return m;
  }
};

inline Rational expected_utility(const NormalFormGame& game, std::size_t player,
                                 std::size_t strategy, const Belief& belief) {
  if (belief.player != player) {
    throw DomainError("belief is held by player " + std::to_string(belief.player + 1) +
                      ", not player " + std::to_string(player + 1));
  }
  if (strategy >= game.num_strategies(player)) throw DomainError("strategy index out of range");
  Rational total = 0;
  for (const auto& [opp, w] : belief.weights) {
    if (opp.size() + 1 != game.num_players()) {
      throw DomainError("belief profile is not over the opponents of player " +
                        std::to_string(player + 1));
    }
    total += w * game.payoff(player, with_own(player, strategy, opp));
  }
  return total;
}

inline Rational expected_utility(const NormalFormGame& game, std::size_t player,
                                 std::string_view strategy, const Belief& belief) {
  return expected_utility(game, player, game.strategy_index(player, strategy), belief);
}

// Payoff of a mixture against a fixed opponent profile.
inline Rational mixed_payoff(const NormalFormGame& game, const MixedStrategy& mix,
                             const Profile& opponents) {
  Rational total = 0;
  for (std::size_t s = 0; s < mix.weights.size(); ++s) {
    if (mix.weights[s] != 0) {
      total += mix.weights[s] * game.payoff(mix.player, with_own(mix.player, s, opponents));
    }
  }
  return total;
}

// Argmax of expected utility over all of Sigma_i, ascending indices.
inline std::vector<std::size_t> best_responses(const NormalFormGame& game, std::size_t player,
                                               const Belief& belief) {
  std::vector<std::size_t> best;
  Rational best_value;
  for (std::size_t s = 0; s < game.num_strategies(player); ++s) {
    Rational value = expected_utility(game, player, s, belief);
    if (best.empty() || value > best_value) {
      best_value = std::move(value);
      best.assign(1, s);
    } else if (value == best_value) {
      best.push_back(s);
    }
  }
  return best;
}

inline bool is_best_response(const NormalFormGame& game, std::size_t player, std::size_t strategy,
                             const Belief& belief) {
  const auto br = best_responses(game, player, belief);
  return std::binary_search(br.begin(), br.end(), strategy);
}

// ---------------------------------------------------------------------------
// JSON: {"players": [...], "strategies": [[...], ...], "payoffs": nested}
// where payoffs[s_1][s_2]...[s_n] is a length-n array of rational strings.

inline Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()), 10);
  throw ParseError("expected a rational string, got " + j.dump());
}

inline NormalFormGame game_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("players") || !j.contains("strategies") ||
      !j.contains("payoffs")) {
    throw ParseError("game JSON needs \"players\", \"strategies\" and \"payoffs\"");
  }
  std::vector<std::string> players;
  std::vector<std::vector<std::string>> strategies;
  try {
    players = j.at("players").get<std::vector<std::string>>();
    strategies = j.at("strategies").get<std::vector<std::vector<std::string>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed game header: ") + e.what());
  }
  if (players.size() != strategies.size()) {
    throw ParseError("\"players\" and \"strategies\" differ in length");
  }
  const std::size_t n = players.size();
  std::vector<std::vector<Rational>> flat;
  // Depth-first walk in lexicographic profile order.
  auto walk = [&](auto&& self, const nlohmann::json& node, std::size_t depth,
                  const std::string& path) -> void {
    if (depth == n) {
      if (!node.is_array() || node.size() != n) {
        throw ParseError("payoff entry " + path + " must be an array of " +
                         std::to_string(n) + " rationals");
      }
      std::vector<Rational> entry;
      for (const auto& v : node) entry.push_back(rational_from_json(v));
      flat.push_back(std::move(entry));
      return;
    }
    if (!node.is_array() || node.size() != strategies[depth].size()) {
      throw ParseError("payoffs" + path + " must have " +
                       std::to_string(strategies[depth].size()) + " entries");
    }
    for (std::size_t s = 0; s < node.size(); ++s) {
      self(self, node[s], depth + 1, path + "[" + std::to_string(s) + "]");
    }
  };
  if (n == 0) throw ParseError("game has no players");
  walk(walk, j.at("payoffs"), 0, "");
  return NormalFormGame(std::move(players), std::move(strategies), std::move(flat));
}

inline nlohmann::json game_to_json(const NormalFormGame& game) {
  nlohmann::json j;
  j["players"] = game.players();
  nlohmann::json strategies = nlohmann::json::array();
  for (std::size_t i = 0; i < game.num_players(); ++i) strategies.push_back(game.strategies(i));
  j["strategies"] = strategies;
  Profile profile(game.num_players(), 0);
  auto build = [&](auto&& self, std::size_t depth) -> nlohmann::json {
    nlohmann::json node = nlohmann::json::array();
    if (depth == game.num_players()) {
      for (const auto& v : game.payoffs(profile)) node.push_back(to_string(v));
      return node;
    }
    for (std::size_t s = 0; s < game.num_strategies(depth); ++s) {
      profile[depth] = s;
      node.push_back(self(self, depth + 1));
    }
    return node;
  };
  j["payoffs"] = build(build, 0);
  return j;
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what(), e.byte);
  }
}

inline NormalFormGame load_game(const std::string& path) {
  return game_from_json(read_json_file(path));
}

}  // namespace iadmit
