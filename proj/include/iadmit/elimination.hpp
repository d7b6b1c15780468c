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

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iadmit/dominance.hpp"
#include "iadmit/game.hpp"

namespace iadmit {

struct Removal {
  std::size_t player = 0;
  std::size_t strategy = 0;
  DominanceCertificate certificate;
};

// X^0 ⊇ X^1 ⊇ ... with the certificates for every deletion.
struct EliminationTrace {
  DominanceMode criterion = DominanceMode::kWeak;
  DominanceClass cls = DominanceClass::kMixed;
  std::vector<StrategyRestriction> rounds;    // rounds[k] = X^k
  std::vector<std::vector<Removal>> removals;  // removals[k]: X^k -> X^{k+1}
  std::optional<std::size_t> converged_at;    // first k with X^k = X^{k+1}

  // X^k, extending past the last computed round once converged.
  const StrategyRestriction& at(std::size_t k) const {
    if (k < rounds.size()) return rounds[k];
    if (converged_at) return rounds.back();
    throw DomainError("round " + std::to_string(k) + " was not computed");
  }

  std::size_t depth() const { return rounds.size() - 1; }
};

// One round of maximal simultaneous deletion against `current`.
inline std::vector<Removal> dominated_in(const NormalFormGame& game,
                                         const StrategyRestriction& current,
                                         DominanceMode criterion, DominanceClass cls) {
  std::vector<Removal> out;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    for (std::size_t s : current[i]) {
      if (auto cert = find_dominator(game, i, s, current, criterion, cls)) {
        out.push_back({i, s, std::move(*cert)});
      }
    }
  }
  return out;
}

// Iterated deletion; `depth` = nullopt runs to the fixpoint.
inline EliminationTrace eliminate(const NormalFormGame& game, DominanceMode criterion,
                                  DominanceClass cls, std::optional<std::size_t> depth) {
  EliminationTrace trace{criterion, cls, {StrategyRestriction::full(game)}, {}, std::nullopt};
  std::size_t total = 0;
  for (std::size_t i = 0; i < game.num_players(); ++i) total += game.num_strategies(i);
  while (!depth || trace.depth() < *depth) {
    const auto& current = trace.rounds.back();
    if (trace.converged_at) {
      trace.removals.emplace_back();
      trace.rounds.push_back(StrategyRestriction(current));
      continue;
    }
    auto removed = dominated_in(game, current, criterion, cls);
    if (removed.empty()) {
      trace.converged_at = trace.depth();
      if (!depth) break;
      trace.removals.emplace_back();
      trace.rounds.push_back(StrategyRestriction(current));
      continue;
    }
    auto sets = current.sets();
    for (const auto& r : removed) {
      std::erase(sets[r.player], r.strategy);
    }
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (sets[i].empty()) {
        throw std::logic_error("elimination emptied the strategy set of player " +
                               std::to_string(i + 1));
      }
    }
    trace.removals.push_back(std::move(removed));
    trace.rounds.emplace_back(std::move(sets));
    if (trace.depth() > total) throw std::logic_error("elimination failed to converge");
  }
  return trace;
}

// sigma in X^k_i; k = nullopt means the fixpoint.
inline bool survives(const NormalFormGame& game, std::size_t player, std::size_t strategy,
                     std::optional<std::size_t> k, DominanceMode criterion, DominanceClass cls) {
  if (player >= game.num_players() || strategy >= game.num_strategies(player)) {
    throw DomainError("unknown strategy");
  }
  const auto trace = eliminate(game, criterion, cls, k);
  return trace.rounds.back().contains(player, strategy);
}

struct RationalizableSets {
  StrategyRestriction sets;
  // beliefs[j][s] justifies strategy s of player j with support inside `sets`.
  std::vector<std::map<std::size_t, Belief>> beliefs;
};

// Def. rat1 check: supports inside Z_{-j} and every listed strategy a best
// response to its belief.
inline bool verify_rat1_witness(const NormalFormGame& game, const StrategyRestriction& sets,
                                const std::vector<std::map<std::size_t, Belief>>& beliefs) {
  sets.validate(game);
  if (beliefs.size() != game.num_players()) throw DomainError("one belief map per player is required");
  for (std::size_t j = 0; j < game.num_players(); ++j) {
    for (std::size_t s : sets[j]) {
      const auto it = beliefs[j].find(s);
      if (it == beliefs[j].end()) {
        throw DomainError("missing belief for strategy '" + game.strategy_name(j, s) +
                          "' of player " + std::to_string(j + 1));
      }
      const Belief& b = it->second;
      try {
        b.validate(game);
      } catch (const DomainError&) {
        return false;
      }
      if (b.player != j) return false;
      for (const auto& [opp, w] : b.weights) {
        if (!sets.contains(with_own(j, s, opp))) return false;
      }
      if (!is_best_response(game, j, s, b)) return false;
    }
  }
  return true;
}

inline RationalizableSets rationalizable_sets(const NormalFormGame& game) {
  const auto trace = eliminate(game, DominanceMode::kStrong, DominanceClass::kMixed, std::nullopt);
  RationalizableSets out{trace.rounds.back(), std::vector<std::map<std::size_t, Belief>>(game.num_players())};
  for (std::size_t j = 0; j < game.num_players(); ++j) {
    for (std::size_t s : out.sets[j]) {
      auto cert = find_justifying_belief(game, j, s, out.sets, SupportMode::kSubset);
      if (!cert) throw std::logic_error("surviving strategy has no justifying belief");
      out.beliefs[j].emplace(s, std::move(cert->belief));
    }
  }
  return out;
}

inline nlohmann::json restriction_to_json(const NormalFormGame& game, const StrategyRestriction& r) {
  nlohmann::json j = nlohmann::json::array();
  for (std::size_t i = 0; i < r.num_players(); ++i) {
    nlohmann::json ids = nlohmann::json::array();
    for (std::size_t s : r[i]) ids.push_back(game.strategy_name(i, s));
    j.push_back(ids);
  }
  return j;
}

inline nlohmann::json trace_to_json(const NormalFormGame& game, const EliminationTrace& trace) {
  nlohmann::json j;
  j["criterion"] = to_string(trace.criterion);
  j["class"] = to_string(trace.cls);
  j["converged_at"] = trace.converged_at ? nlohmann::json(*trace.converged_at) : nlohmann::json(nullptr);
  nlohmann::json rounds = nlohmann::json::array();
  for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
    nlohmann::json round{{"k", k}, {"surviving", restriction_to_json(game, trace.rounds[k])}};
    if (k < trace.removals.size()) {
      nlohmann::json removed = nlohmann::json::array();
      for (const auto& r : trace.removals[k]) removed.push_back(certificate_to_json(game, r.certificate));
      round["removed"] = removed;
    }
    rounds.push_back(round);
  }
  j["rounds"] = rounds;
  return j;
}

}  // namespace iadmit
