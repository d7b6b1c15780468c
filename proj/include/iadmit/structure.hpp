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
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "iadmit/dominance.hpp"
#include "iadmit/elimination.hpp"
#include "iadmit/game.hpp"

namespace iadmit {

// Sparse distribution over state indices: ascending, positive weights.
using Distribution = std::vector<std::pair<std::size_t, Rational>>;

struct State {
  std::string id;
  Profile profile;
  std::vector<Distribution> beliefs;  // one per player
};

// Finite probability structure over a game. The event algebra is the power
// set of the states, so every event is measurable.
class ProbabilityStructure {
 public:
  ProbabilityStructure(std::shared_ptr<const NormalFormGame> game, std::vector<State> states)
      : game_(std::move(game)), states_(std::move(states)) {
    if (!game_) throw DomainError("structure needs a game");
    if (states_.empty()) throw DomainError("structure has no states");
    const std::size_t n = game_->num_players();
    for (std::size_t k = 0; k < states_.size(); ++k) {
      auto& st = states_[k];
      if (st.id.empty()) throw DomainError("state " + std::to_string(k) + " has an empty id");
      if (!index_.emplace(st.id, k).second) throw DomainError("duplicate state id '" + st.id + "'");
      game_->flat_index(st.profile);
      if (st.beliefs.size() != n) {
        throw DomainError("state '" + st.id + "' needs one belief per player");
      }
      for (auto& dist : st.beliefs) normalize(dist, st.id);
    }
  }

  const NormalFormGame& game() const { return *game_; }
  const std::shared_ptr<const NormalFormGame>& game_ptr() const { return game_; }
  std::size_t size() const { return states_.size(); }
  const State& state(std::size_t k) const { return states_.at(k); }
  const std::vector<State>& states() const { return states_; }

  std::optional<std::size_t> find(const std::string& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(const std::string& id) const {
    if (auto k = find(id)) return *k;
    throw DomainError("unknown state '" + id + "'");
  }

  const Distribution& belief(std::size_t state, std::size_t player) const {
    return states_.at(state).beliefs.at(player);
  }

  // PR_player(state)(event) for an event given as a membership mask.
  Rational probability(std::size_t state, std::size_t player, const std::vector<char>& event) const {
    Rational p = 0;
    for (const auto& [t, w] : belief(state, player)) {
      if (event[t]) p += w;
    }
    return p;
  }

 private:
  void normalize(Distribution& dist, const std::string& id) const {
    std::sort(dist.begin(), dist.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Distribution merged;
    Rational total = 0;
    for (auto& [t, w] : dist) {
      w.canonicalize();
      if (t >= states_.size()) throw DomainError("belief at '" + id + "' refers to an unknown state");
      if (w < 0) throw DomainError("negative probability at '" + id + "'");
      total += w;
      if (w == 0) continue;
      if (!merged.empty() && merged.back().first == t) {
        merged.back().second += w;
      } else {
        merged.emplace_back(t, std::move(w));
      }
    }
    if (total != 1) throw DomainError("a belief at '" + id + "' sums to " + to_string(total));
    dist = std::move(merged);
  }

  std::shared_ptr<const NormalFormGame> game_;
  std::vector<State> states_;
  std::unordered_map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Appropriateness. Conditions (1) and (3) hold for the power-set algebra;
// (2) and (4) are evaluated per state and player.

struct ConditionCheck {
  int condition = 0;
  std::size_t state = 0;
  std::size_t player = 0;
  bool passed = true;
  bool warning = false;          // failure downgraded (condition 4, non-strict)
  std::vector<std::size_t> event;  // the event that should have probability 1
};

struct AppropriatenessReport {
  std::vector<ConditionCheck> checks;

  bool ok() const {
    return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return !c.passed && !c.warning; });
  }
  bool passes(int condition) const {
    return std::all_of(checks.begin(), checks.end(),
                       [&](const auto& c) { return c.condition != condition || c.passed; });
  }
  std::size_t failures(int condition) const {
    return static_cast<std::size_t>(std::count_if(
        checks.begin(), checks.end(), [&](const auto& c) { return c.condition == condition && !c.passed; }));
  }
};

inline AppropriatenessReport check_appropriate(const ProbabilityStructure& m, bool strict_condition_4) {
  AppropriatenessReport report;
  const std::size_t n = m.game().num_players();
  for (std::size_t w = 0; w < m.size(); ++w) {
    for (std::size_t i = 0; i < n; ++i) {
      report.checks.push_back({1, w, i, true, false, {}});
      report.checks.push_back({3, w, i, true, false, {}});

      ConditionCheck own{2, w, i, true, false, {}};
      std::vector<char> mask(m.size(), 0);
      for (std::size_t t = 0; t < m.size(); ++t) {
        if (m.state(t).profile[i] == m.state(w).profile[i]) {
          mask[t] = 1;
          own.event.push_back(t);
        }
      }
      own.passed = m.probability(w, i, mask) == 1;
      if (own.passed) own.event.clear();
      report.checks.push_back(std::move(own));

      ConditionCheck introspection{4, w, i, true, false, {}};
      std::fill(mask.begin(), mask.end(), 0);
      for (std::size_t t = 0; t < m.size(); ++t) {
        if (m.belief(t, i) == m.belief(w, i)) {
          mask[t] = 1;
          introspection.event.push_back(t);
        }
      }
      introspection.passed = m.probability(w, i, mask) == 1;
      if (introspection.passed) {
        introspection.event.clear();
      } else {
        introspection.warning = !strict_condition_4;
      }
      report.checks.push_back(std::move(introspection));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Witness constructions.

// States Z_1 x ... x Z_n; PR_i(s)(s') = mu_{s_i}(s'_{-i}) when s'_i = s_i.
inline ProbabilityStructure build_rationalizability_structure(
    std::shared_ptr<const NormalFormGame> game, const StrategyRestriction& sets,
    const std::vector<std::map<std::size_t, Belief>>& beliefs) {
  if (!verify_rat1_witness(*game, sets, beliefs)) {
    throw DomainError("the sets and beliefs are not a rationalizability witness");
  }
  const auto profiles = sets.profiles();
  std::map<Profile, std::size_t> index;
  for (std::size_t k = 0; k < profiles.size(); ++k) index.emplace(profiles[k], k);
  std::vector<State> states;
  for (const auto& p : profiles) {
    State st{game->profile_label(p), p, {}};
    for (std::size_t i = 0; i < game->num_players(); ++i) {
      Distribution dist;
      for (const auto& [opp, w] : beliefs[i].at(p[i]).weights) {
        dist.emplace_back(index.at(with_own(i, p[i], opp)), w);
      }
      st.beliefs.push_back(std::move(dist));
    }
    states.push_back(std::move(st));
  }
  return ProbabilityStructure(std::move(game), std::move(states));
}

using MbarKey = std::tuple<std::size_t, std::size_t, Profile>;  // (level, tag player, profile)

struct MbarStructure {
  ProbabilityStructure structure;
  EliminationTrace trace;  // weak, mixed
  std::map<MbarKey, std::size_t> index;
  std::vector<std::string> reroutes;

  std::size_t state(std::size_t level, std::size_t tag, const Profile& profile) const {
    const auto it = index.find({level, tag, profile});
    if (it == index.end()) throw DomainError("no such state in the constructed structure");
    return it->second;
  }
};

inline std::string mbar_state_id(const NormalFormGame& game, std::size_t level, std::size_t tag,
                                 const Profile& profile) {
  return "(" + std::to_string(level) + "," + std::to_string(tag + 1) + "," + game.profile_label(profile) + ")";
}

// States (k', i, s) for k' <= k, every tag player i and s in X^{k'}. At
// (k', i, s) player j != i believes the level-(k'-1) states tagged j that keep
// s_j, weighted by a full-support belief justifying s_j against X^{k'-1}; for
// j == i the same mass goes to level-k' states tagged j, falling back to
// level k'-1 where the level-k' state does not exist. Level 0 uses the
// uniform belief over X^0_{-j}.
inline MbarStructure build_Mbar(std::shared_ptr<const NormalFormGame> game, std::size_t k) {
  const NormalFormGame& g = *game;
  const std::size_t n = g.num_players();
  auto trace = eliminate(g, DominanceMode::kWeak, DominanceClass::kMixed, k);

  std::vector<MbarKey> keys;
  std::map<MbarKey, std::size_t> index;
  for (std::size_t level = 0; level <= k; ++level) {
    const auto profiles = trace.at(level).profiles();
    for (std::size_t tag = 0; tag < n; ++tag) {
      for (const auto& p : profiles) {
        index.emplace(MbarKey{level, tag, p}, keys.size());
        keys.emplace_back(level, tag, p);
      }
    }
  }

  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Belief> justifying;
  auto mu = [&](std::size_t level, std::size_t j, std::size_t s) -> const Belief& {
    const auto key = std::make_tuple(level, j, s);
    auto it = justifying.find(key);
    if (it != justifying.end()) return it->second;
    Belief b;
    if (level == 0) {
      b = Belief::uniform(j, trace.at(0).opponent_profiles(j));
    } else {
      auto cert = find_justifying_belief(g, j, s, trace.at(level - 1), SupportMode::kFull);
      if (!cert) {
        throw std::logic_error("surviving strategy " + g.strategy_name(j, s) +
                               " has no full-support justifying belief");
      }
      b = std::move(cert->belief);
    }
    return justifying.emplace(key, std::move(b)).first->second;
  };

  std::vector<std::string> reroutes;
  std::vector<State> states;
  states.reserve(keys.size());
  for (const auto& [level, tag, profile] : keys) {
    State st{mbar_state_id(g, level, tag, profile), profile, {}};
    for (std::size_t j = 0; j < n; ++j) {
      Distribution dist;
      for (const auto& [opp, w] : mu(level, j, profile[j]).weights) {
        const Profile target = with_own(j, profile[j], opp);
        std::size_t target_level = level == 0 ? 0 : level - 1;
        if (tag == j) {
          target_level = level;
          if (!index.contains({level, j, target}) && level > 0) {
            target_level = level - 1;
            reroutes.push_back("belief of player " + std::to_string(j + 1) + " at " + st.id +
                               " on " + mbar_state_id(g, level, j, target) + " moved to level " +
                               std::to_string(level - 1));
          }
        }
        dist.emplace_back(index.at({target_level, j, target}), w);
      }
      st.beliefs.push_back(std::move(dist));
    }
    states.push_back(std::move(st));
  }
  return MbarStructure{ProbabilityStructure(std::move(game), std::move(states)), std::move(trace),
                       std::move(index), std::move(reroutes)};
}

struct MinftyStructure {
  ProbabilityStructure structure;
  std::size_t designated = 0;
  std::vector<std::size_t> targets;  // t_0 .. t_K
};

// Adds a fresh state to the constructed structure for depth K whose player-i
// belief is uniform over t_k = (k, i', (sigma, tau_{-i})), k <= K.
inline MinftyStructure build_Minfty(std::shared_ptr<const NormalFormGame> game, std::size_t player,
                                    std::size_t strategy, std::size_t K) {
  const NormalFormGame& g = *game;
  if (player >= g.num_players() || strategy >= g.num_strategies(player)) {
    throw DomainError("unknown strategy");
  }
  auto mbar = build_Mbar(game, K);
  if (!mbar.trace.at(K).contains(player, strategy)) {
    throw DomainError("strategy '" + g.strategy_name(player, strategy) + "' of player " +
                      std::to_string(player + 1) + " does not survive " + std::to_string(K) +
                      " rounds of weak elimination");
  }
  const std::size_t other = player == 0 ? 1 : 0;
  const Profile tau = mbar.trace.at(K).opponent_profiles(player).front();
  const Profile profile = with_own(player, strategy, tau);

  std::vector<std::size_t> targets;
  for (std::size_t level = 0; level <= K; ++level) targets.push_back(mbar.state(level, other, profile));

  std::vector<State> states = mbar.structure.states();
  State omega{"omega", profile, {}};
  std::string id = omega.id;
  while (mbar.structure.find(id)) id += "'";
  omega.id = id;
  for (std::size_t j = 0; j < g.num_players(); ++j) {
    if (j == player) {
      Distribution dist;
      const Rational w(1, static_cast<unsigned long>(targets.size()));
      for (std::size_t t : targets) dist.emplace_back(t, w);
      omega.beliefs.push_back(std::move(dist));
    } else {
      omega.beliefs.push_back(mbar.structure.belief(targets.back(), j));
    }
  }
  const std::size_t designated = states.size();
  states.push_back(std::move(omega));
  return MinftyStructure{ProbabilityStructure(std::move(game), std::move(states)), designated, std::move(targets)};
}

// ---------------------------------------------------------------------------
// Combinators.

// Appends a copy of state `w` (same profile and beliefs) that no belief
// reaches. Returns the structure and the copy's index.
inline std::pair<ProbabilityStructure, std::size_t> add_null_state(const ProbabilityStructure& m,
                                                                   std::size_t w) {
  if (w >= m.size()) throw DomainError("unknown state index " + std::to_string(w));
  std::vector<State> states = m.states();
  State copy = states[w];
  while (m.find(copy.id)) copy.id += "'";
  states.push_back(std::move(copy));
  const std::size_t fresh = states.size() - 1;
  return {ProbabilityStructure(m.game_ptr(), std::move(states)), fresh};
}

struct MergedStructure {
  ProbabilityStructure structure;
  std::vector<std::size_t> merged;  // omega^1 .. omega^n
};

// Disjoint union of one witness per player in which the distinguished
// (zero-probability) copies all take player i's strategy and i-beliefs from
// witness i.
inline MergedStructure merge_conjunction(
    const std::vector<std::pair<ProbabilityStructure, std::size_t>>& witnesses) {
  if (witnesses.empty()) throw DomainError("no witnesses");
  const auto game = witnesses.front().first.game_ptr();
  const std::size_t n = game->num_players();
  if (witnesses.size() != n) {
    throw DomainError("expected one witness per player (" + std::to_string(n) + "), got " +
                      std::to_string(witnesses.size()));
  }
  for (const auto& [m, w] : witnesses) {
    if (!(m.game() == *game)) throw DomainError("witnesses are over different games");
  }

  std::vector<State> states;
  std::vector<std::size_t> merged;
  std::vector<std::size_t> offsets;
  for (std::size_t k = 0; k < n; ++k) {
    const auto [m, fresh] = add_null_state(witnesses[k].first, witnesses[k].second);
    const std::size_t offset = states.size();
    offsets.push_back(offset);
    for (const auto& st : m.states()) {
      State copy = st;
      copy.id = "w" + std::to_string(k + 1) + ":" + st.id;
      for (auto& dist : copy.beliefs) {
        for (auto& entry : dist) entry.first += offset;
      }
      states.push_back(std::move(copy));
    }
    merged.push_back(offset + fresh);
  }
  // Snapshot the distinguished states before overwriting them.
  std::vector<State> sources;
  for (std::size_t i = 0; i < n; ++i) sources.push_back(states[merged[i]]);
  for (std::size_t k = 0; k < n; ++k) {
    State& st = states[merged[k]];
    for (std::size_t i = 0; i < n; ++i) {
      st.profile[i] = sources[i].profile[i];
      st.beliefs[i] = sources[i].beliefs[i];
    }
  }
  return MergedStructure{ProbabilityStructure(game, std::move(states)), std::move(merged)};
}

// ---------------------------------------------------------------------------
// JSON: {"game": <object or path>, "states": [{"id", "profile", "beliefs"}]}

inline nlohmann::json structure_to_json(const ProbabilityStructure& m) {
  nlohmann::json j;
  j["game"] = game_to_json(m.game());
  nlohmann::json states = nlohmann::json::array();
  for (const auto& st : m.states()) {
    nlohmann::json profile = nlohmann::json::array();
    for (std::size_t i = 0; i < st.profile.size(); ++i) profile.push_back(m.game().strategy_name(i, st.profile[i]));
    nlohmann::json beliefs = nlohmann::json::array();
    for (const auto& dist : st.beliefs) {
      nlohmann::json b = nlohmann::json::object();
      for (const auto& [t, w] : dist) b[m.state(t).id] = to_string(w);
      beliefs.push_back(b);
    }
    states.push_back({{"id", st.id}, {"profile", profile}, {"beliefs", beliefs}});
  }
  j["states"] = states;
  return j;
}

// A string "game" is a path resolved against `base_dir`.
inline ProbabilityStructure structure_from_json(const nlohmann::json& j,
                                                const std::filesystem::path& base_dir = {}) {
  if (!j.is_object() || !j.contains("game") || !j.contains("states") || !j.at("states").is_array()) {
    throw ParseError("structure JSON needs \"game\" and a \"states\" array");
  }
  std::shared_ptr<const NormalFormGame> game;
  if (j.at("game").is_string()) {
    std::filesystem::path p = j.at("game").get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    game = std::make_shared<const NormalFormGame>(load_game(p.string()));
  } else {
    game = std::make_shared<const NormalFormGame>(game_from_json(j.at("game")));
  }
  const auto& raw = j.at("states");
  std::unordered_map<std::string, std::size_t> ids;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (!raw[k].is_object() || !raw[k].contains("id") || !raw[k].at("id").is_string()) {
      throw ParseError("state " + std::to_string(k) + " needs a string \"id\"");
    }
    ids.emplace(raw[k].at("id").get<std::string>(), k);
  }
  std::vector<State> states;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const auto& s = raw[k];
    State st{s.at("id").get<std::string>(), {}, {}};
    if (!s.contains("profile") || !s.at("profile").is_array() ||
        s.at("profile").size() != game->num_players()) {
      throw ParseError("state '" + st.id + "' needs a profile with one strategy per player");
    }
    for (std::size_t i = 0; i < game->num_players(); ++i) {
      if (!s.at("profile")[i].is_string()) throw ParseError("state '" + st.id + "': strategy ids are strings");
      st.profile.push_back(game->strategy_index(i, s.at("profile")[i].get<std::string>()));
    }
    if (!s.contains("beliefs") || !s.at("beliefs").is_array()) {
      throw ParseError("state '" + st.id + "' needs a \"beliefs\" array");
    }
    for (const auto& b : s.at("beliefs")) {
      if (!b.is_object()) throw ParseError("state '" + st.id + "': each belief is an object");
      Distribution dist;
      for (const auto& [target, weight] : b.items()) {
        const auto it = ids.find(target);
        if (it == ids.end()) {
          throw DomainError("belief at '" + st.id + "' refers to unknown state '" + target + "'");
        }
        dist.emplace_back(it->second, rational_from_json(weight));
      }
      st.beliefs.push_back(std::move(dist));
    }
    states.push_back(std::move(st));
  }
  return ProbabilityStructure(std::move(game), std::move(states));
}

inline ProbabilityStructure load_structure(const std::string& path) {
  return structure_from_json(read_json_file(path), std::filesystem::path(path).parent_path());
}

}  // namespace iadmit
