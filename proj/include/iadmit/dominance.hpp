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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "iadmit/game.hpp"
#include "iadmit/lp.hpp"

namespace iadmit {

enum class DominanceMode { kStrong, kWeak };
enum class DominanceClass { kPure, kMixed };
enum class SupportMode { kSubset, kFull };

inline const char* to_string(DominanceMode m) { return m == DominanceMode::kStrong ? "strong" : "weak"; }
inline const char* to_string(DominanceClass c) { return c == DominanceClass::kPure ? "pure" : "mixed"; }
inline const char* to_string(SupportMode s) { return s == SupportMode::kSubset ? "subset" : "full"; }

// Evidence that `dominated` is dominated by `dominator` against the opponent
// profiles of `restriction`.
struct DominanceCertificate {
  std::size_t player = 0;
  std::size_t dominated = 0;
  std::variant<std::size_t, MixedStrategy> dominator;
  StrategyRestriction restriction;
  DominanceMode mode = DominanceMode::kStrong;
  std::optional<Profile> witness;  // weak mode: an opponent profile with strict gain

  MixedStrategy dominator_mixture(const NormalFormGame& game) const {
    if (const auto* pure = std::get_if<std::size_t>(&dominator)) {
      return MixedStrategy::point(game, player, *pure);
    }
    return std::get<MixedStrategy>(dominator);
  }
};

// Evidence that `strategy` is a best response to `belief`.
struct BeliefCertificate {
  std::size_t player = 0;
  std::size_t strategy = 0;
  Belief belief;
  SupportMode support = SupportMode::kSubset;
  StrategyRestriction restriction;
};

namespace detail {

inline void require_opponents_nonempty(const StrategyRestriction& restriction, std::size_t player) {
  for (std::size_t j = 0; j < restriction.num_players(); ++j) {
    if (j != player && restriction[j].empty()) {
      throw DomainError("restriction is empty for opponent player " + std::to_string(j + 1));
    }
  }
}

inline void check_request(const NormalFormGame& game, std::size_t player, std::size_t strategy,
                          const StrategyRestriction& restriction) {
  if (player >= game.num_players()) throw DomainError("player index out of range");
  if (strategy >= game.num_strategies(player)) throw DomainError("strategy index out of range");
  restriction.validate(game);
  require_opponents_nonempty(restriction, player);
}

}  // namespace detail

// Replays every inequality of the dominance definition exactly.
inline bool verify_certificate(const NormalFormGame& game, const DominanceCertificate& cert) {
  try {
    const MixedStrategy mix = cert.dominator_mixture(game);
    mix.validate(game);
    if (mix.player != cert.player) return false;
    const auto opponents = cert.restriction.opponent_profiles(cert.player);
    if (opponents.empty()) return false;
    bool strict_somewhere = false;
    for (const auto& opp : opponents) {
      const Rational gain =
          mixed_payoff(game, mix, opp) - game.payoff(cert.player, with_own(cert.player, cert.dominated, opp));
      if (cert.mode == DominanceMode::kStrong && gain <= 0) return false;
      if (gain < 0) return false;
      if (gain > 0 && cert.witness && *cert.witness == opp) strict_somewhere = true;
    }
    if (cert.mode == DominanceMode::kWeak) {
      return cert.witness.has_value() && strict_somewhere;
    }
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

inline bool verify_certificate(const NormalFormGame& game, const BeliefCertificate& cert) {
  try {
    cert.belief.validate(game);
    if (cert.belief.player != cert.player) return false;
    const auto allowed = cert.restriction.opponent_profiles(cert.player);
    for (const auto& [opp, w] : cert.belief.weights) {
      if (!std::binary_search(allowed.begin(), allowed.end(), opp)) return false;
    }
    if (cert.support == SupportMode::kFull && cert.belief.weights.size() != allowed.size()) {
      return false;
    }
    return is_best_response(game, cert.player, cert.strategy, cert.belief);
  } catch (const DomainError&) {
    return false;
  }
}

// Searches for a dominator of `strategy` with respect to the opponent
// profiles allowed by `restriction`. Dominators range over all of Sigma_i.
inline std::optional<DominanceCertificate> find_dominator(const NormalFormGame& game,
                                                          std::size_t player, std::size_t strategy,
                                                          const StrategyRestriction& restriction,
                                                          DominanceMode mode,
                                                          DominanceClass cls) {
  detail::check_request(game, player, strategy, restriction);
  const auto opponents = restriction.opponent_profiles(player);
  const std::size_t m = game.num_strategies(player);
  if (m == 1) return std::nullopt;

  auto own = [&](std::size_t s, const Profile& opp) -> const Rational& {
    return game.payoff(player, with_own(player, s, opp));
  };

  if (cls == DominanceClass::kPure) {
    for (std::size_t candidate = 0; candidate < m; ++candidate) {
      if (candidate == strategy) continue;
      bool ok = true;
      std::optional<Profile> witness;
      for (const auto& opp : opponents) {
        const auto& a = own(candidate, opp);
        const auto& b = own(strategy, opp);
        if (a < b || (mode == DominanceMode::kStrong && a == b)) {
          ok = false;
          break;
        }
        if (a > b && !witness) witness = opp;
      }
      if (ok && (mode == DominanceMode::kStrong || witness)) {
        DominanceCertificate cert{player, strategy, candidate, restriction, mode,
                                  mode == DominanceMode::kWeak ? witness : std::nullopt};
        return cert;
      }
    }
    return std::nullopt;
  }

  // Mixed class. Variables: p_0..p_{m-1}, then slack(s).
  //   strong: max e   s.t. sum_s p_s u(s,t) - u(sigma,t) >= e  for all t, 0 <= e <= 1
  //   weak:   max sum g_t  s.t. sum_s p_s u(s,t) - u(sigma,t) >= g_t, 0 <= g_t <= 1
  const std::size_t num_slacks = mode == DominanceMode::kStrong ? 1 : opponents.size();
  lp::LinearProgram program(m + num_slacks, lp::Sense::kMaximize);
  for (std::size_t k = 0; k < num_slacks; ++k) {
    program.objective[m + k] = 1;
    program.upper_bounds[m + k] = Rational(1);
  }
  {
    std::vector<Rational> row(m + num_slacks, Rational(0));
    for (std::size_t s = 0; s < m; ++s) row[s] = 1;
    program.add(std::move(row), lp::Relation::kEqual, Rational(1));
  }
  for (std::size_t t = 0; t < opponents.size(); ++t) {
    std::vector<Rational> row(m + num_slacks, Rational(0));
    for (std::size_t s = 0; s < m; ++s) row[s] = own(s, opponents[t]);
    row[m + (mode == DominanceMode::kStrong ? 0 : t)] = -1;
    program.add(std::move(row), lp::Relation::kGreaterEqual, own(strategy, opponents[t]));
  }
  const auto outcome = lp::solve(program);
  if (outcome.status != lp::Status::kOptimal || outcome.value <= 0) return std::nullopt;

  MixedStrategy mix{player, std::vector<Rational>(outcome.point.begin(), outcome.point.begin() + m)};
  std::optional<Profile> witness;
  if (mode == DominanceMode::kWeak) {
    for (std::size_t t = 0; t < opponents.size(); ++t) {
      if (mixed_payoff(game, mix, opponents[t]) > own(strategy, opponents[t])) {
        witness = opponents[t];
        break;
      }
    }
  }
  DominanceCertificate cert{player, strategy, std::move(mix), restriction, mode, std::move(witness)};
  if (!verify_certificate(game, cert)) {
    throw std::logic_error("mixed dominance certificate failed replay");
  }
  return cert;
}

// LP search for a belief over the restricted opponent profiles under which
// `strategy` is a best response. Full support maximizes the smallest weight
// and succeeds iff that minimum is positive.
inline std::optional<BeliefCertificate> find_justifying_belief(const NormalFormGame& game,
                                                               std::size_t player,
                                                               std::size_t strategy,
                                                               const StrategyRestriction& restriction,
                                                               SupportMode support) {
  detail::check_request(game, player, strategy, restriction);
  const auto opponents = restriction.opponent_profiles(player);
  const std::size_t q = opponents.size();
  const std::size_t m = game.num_strategies(player);
  const bool full = support == SupportMode::kFull;
  const std::size_t vars = q + (full ? 1 : 0);

  lp::LinearProgram program(vars, lp::Sense::kMaximize);
  {
    std::vector<Rational> row(vars, Rational(0));
    for (std::size_t t = 0; t < q; ++t) row[t] = 1;
    program.add(std::move(row), lp::Relation::kEqual, Rational(1));
  }
  for (std::size_t other = 0; other < m; ++other) {
    if (other == strategy) continue;
    std::vector<Rational> row(vars, Rational(0));
    for (std::size_t t = 0; t < q; ++t) {
      row[t] = game.payoff(player, with_own(player, strategy, opponents[t])) -
               game.payoff(player, with_own(player, other, opponents[t]));
    }
    program.add(std::move(row), lp::Relation::kGreaterEqual, Rational(0));
  }
  if (full) {
    const std::size_t delta = q;
    program.objective[delta] = 1;
    program.upper_bounds[delta] = Rational(1);
    for (std::size_t t = 0; t < q; ++t) {
      std::vector<Rational> row(vars, Rational(0));
      row[t] = 1;
      row[delta] = -1;
      program.add(std::move(row), lp::Relation::kGreaterEqual, Rational(0));
    }
  }
  const auto outcome = lp::solve(program);
  if (outcome.status != lp::Status::kOptimal) return std::nullopt;
  if (full && outcome.value <= 0) return std::nullopt;

  Belief belief{player, {}};
  for (std::size_t t = 0; t < q; ++t) {
    if (outcome.point[t] != 0) belief.weights.emplace(opponents[t], outcome.point[t]);
  }
  BeliefCertificate cert{player, strategy, std::move(belief), support, restriction};
  if (!verify_certificate(game, cert)) {
    throw std::logic_error("justifying belief failed best-response replay");
  }
  return cert;
}

inline nlohmann::json belief_to_json(const NormalFormGame& game, const Belief& belief) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [opp, w] : belief.weights) j[game.opponent_label(belief.player, opp)] = to_string(w);
  return j;
}

inline nlohmann::json certificate_to_json(const NormalFormGame& game, const BeliefCertificate& cert) {
  return {{"player", cert.player + 1},
          {"strategy", game.strategy_name(cert.player, cert.strategy)},
          {"support", to_string(cert.support)},
          {"belief", belief_to_json(game, cert.belief)}};
}

inline nlohmann::json certificate_to_json(const NormalFormGame& game, const DominanceCertificate& cert) {
  nlohmann::json j{{"player", cert.player + 1},
                   {"dominated", game.strategy_name(cert.player, cert.dominated)},
                   {"mode", to_string(cert.mode)}};
  if (const auto* pure = std::get_if<std::size_t>(&cert.dominator)) {
    j["dominator"] = game.strategy_name(cert.player, *pure);
  } else {
    nlohmann::json mix = nlohmann::json::object();
    const auto& m = std::get<MixedStrategy>(cert.dominator);
    for (std::size_t s = 0; s < m.weights.size(); ++s) {
      if (m.weights[s] != 0) mix[game.strategy_name(cert.player, s)] = to_string(m.weights[s]);
    }
    j["dominator"] = mix;
  }
  if (cert.witness) j["witness"] = game.opponent_label(cert.player, *cert.witness);
  return j;
}

}  // namespace iadmit
