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
#include <atomic>
#include <functional>
#include <limits>
#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "iadmit/dominance.hpp"
#include "iadmit/elimination.hpp"
#include "iadmit/formula.hpp"
#include "iadmit/game.hpp"
#include "iadmit/model_check.hpp"
#include "iadmit/structure.hpp"

namespace iadmit::harness {

// Deterministic random games: the same seed always yields the same game.
struct GameGenerator {
  std::uint64_t seed = 0;
  std::size_t players = 2;
  std::size_t min_strategies = 1;
  std::size_t max_strategies = 4;
  int payoff_min = -3;
  int payoff_max = 3;

  NormalFormGame generate() const {
    if (players < 2) throw DomainError("generated games need at least two players");
    if (min_strategies < 1 || min_strategies > max_strategies || payoff_min > payoff_max) {
      throw DomainError("empty generator range");
    }
    std::mt19937_64 rng(seed);
    // Rejection sampling; std::uniform_int_distribution is not portable.
    auto draw = [&rng](std::uint64_t bound) {
      const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                  std::numeric_limits<std::uint64_t>::max() % bound;
      std::uint64_t v;
      do {
        v = rng();
      } while (v >= limit);
      return v % bound;
    };
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> strategies;
    std::size_t count = 1;
    for (std::size_t i = 0; i < players; ++i) {
      names.push_back("P" + std::to_string(i + 1));
      const std::size_t m = min_strategies + draw(max_strategies - min_strategies + 1);
      std::vector<std::string> ids;
      for (std::size_t s = 0; s < m; ++s) {
        ids.push_back(std::string(1, static_cast<char>('a' + i % 26)) + std::to_string(s + 1));
      }
      strategies.push_back(std::move(ids));
      count *= m;
    }
    const auto span = static_cast<std::uint64_t>(payoff_max - payoff_min + 1);
    std::vector<std::vector<Rational>> payoffs(count);
    for (auto& entry : payoffs) {
      for (std::size_t i = 0; i < players; ++i) {
        entry.emplace_back(static_cast<long>(payoff_min + static_cast<int>(draw(span))));
      }
    }
    return NormalFormGame(std::move(names), std::move(strategies), std::move(payoffs));
  }
};

struct CheckStats {
  std::size_t cases = 0;
  std::size_t violations = 0;
};

// Outcome of one or more cross-checks. Merging is associative.
class Report {
 public:
  void pass(const std::string& check) { ++stats_[check].cases; }

  void fail(const std::string& check, const std::string& subject, nlohmann::json detail) {
    auto& s = stats_[check];
    ++s.cases;
    ++s.violations;
    violations_.push_back({{"check", check}, {"game", subject}, {"detail", std::move(detail)}});
  }

  void record(const std::string& check, bool ok, const std::string& subject,
              const std::function<nlohmann::json()>& detail) {
    if (ok) {
      pass(check);
    } else {
      fail(check, subject, detail());
    }
  }

  void note(const std::string& finding, std::size_t count = 1) { notes_[finding] += count; }

  void merge(const Report& other) {
    for (const auto& [k, v] : other.stats_) {
      stats_[k].cases += v.cases;
      stats_[k].violations += v.violations;
    }
    for (const auto& v : other.violations_) violations_.push_back(v);
    for (const auto& [k, v] : other.notes_) notes_[k] += v;
  }

  bool ok() const { return violations_.empty(); }
  std::size_t violation_count() const { return violations_.size(); }
  const std::map<std::string, CheckStats>& stats() const { return stats_; }
  std::size_t notes(const std::string& finding) const {
    const auto it = notes_.find(finding);
    return it == notes_.end() ? 0 : it->second;
  }
  const std::vector<nlohmann::json>& violations() const { return violations_; }

  // Violations for checks whose name starts with `prefix`.
  std::size_t violations_for(const std::string& prefix) const {
    std::size_t total = 0, cases = 0;
    for (const auto& [k, v] : stats_) {
      if (k.rfind(prefix, 0) == 0) {
        total += v.violations;
        cases += v.cases;
      }
    }
    return total;
  }
  std::size_t cases_for(const std::string& prefix) const {
    std::size_t cases = 0;
    for (const auto& [k, v] : stats_) {
      if (k.rfind(prefix, 0) == 0) cases += v.cases;
    }
    return cases;
  }

  nlohmann::json to_json() const {
    nlohmann::json checks = nlohmann::json::object();
    for (const auto& [k, v] : stats_) checks[k] = {{"cases", v.cases}, {"violations", v.violations}};
    nlohmann::json notes = nlohmann::json::object();
    for (const auto& [k, v] : notes_) notes[k] = v;
    return {{"ok", ok()}, {"checks", checks}, {"notes", notes}, {"violations", violations_}};
  }

 private:
  std::map<std::string, CheckStats> stats_;
  std::vector<nlohmann::json> violations_;
  std::map<std::string, std::size_t> notes_;
};

namespace detail {

inline std::vector<StrategyRestriction> elimination_restrictions(const NormalFormGame& game) {
  std::vector<StrategyRestriction> out;
  for (auto mode : {DominanceMode::kWeak, DominanceMode::kStrong}) {
    const auto trace = eliminate(game, mode, DominanceClass::kMixed, std::nullopt);
    for (const auto& r : trace.rounds) {
      if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    }
  }
  return out;
}

inline nlohmann::json where(const NormalFormGame& game, std::size_t player, std::size_t strategy,
                            const StrategyRestriction* restriction = nullptr) {
  nlohmann::json j{{"player", player + 1}, {"strategy", game.strategy_name(player, strategy)}};
  if (restriction) j["restriction"] = restriction_to_json(game, *restriction);
  return j;
}

// States of `m` playing `strategy` for `player` where `f` holds.
inline bool some_state(logic::ModelChecker& checker, std::size_t player, std::size_t strategy,
                       const logic::FormulaPtr& f) {
  const auto& ext = checker.extension(f);
  const auto& m = checker.structure();
  for (std::size_t w = 0; w < m.size(); ++w) {
    if (ext[w] && m.state(w).profile[player] == strategy) return true;
  }
  return false;
}

}  // namespace detail

// Both bullets of Pearce's characterization on every restriction arising in
// the weak and strong traces, plus certificate replay and pure => mixed.
inline Report crosscheck_pearce(const NormalFormGame& game, const std::string& subject) {
  Report report;
  for (const auto& r : detail::elimination_restrictions(game)) {
    for (std::size_t i = 0; i < game.num_players(); ++i) {
      for (std::size_t s = 0; s < game.num_strategies(i); ++s) {
        const auto at = [&] { return detail::where(game, i, s, &r); };
        const auto strong = find_dominator(game, i, s, r, DominanceMode::kStrong, DominanceClass::kMixed);
        const auto subset = find_justifying_belief(game, i, s, r, SupportMode::kSubset);
        report.record("pearce.strong_subset", strong.has_value() != subset.has_value(), subject, at);
        const auto weak = find_dominator(game, i, s, r, DominanceMode::kWeak, DominanceClass::kMixed);
        const auto full = find_justifying_belief(game, i, s, r, SupportMode::kFull);
        report.record("pearce.weak_full", weak.has_value() != full.has_value(), subject, at);

        bool replay = true;
        if (strong) replay = replay && verify_certificate(game, *strong);
        if (weak) replay = replay && verify_certificate(game, *weak);
        if (subset) replay = replay && verify_certificate(game, *subset);
        if (full) replay = replay && verify_certificate(game, *full);
        report.record("pearce.certificate_replay", replay, subject, at);

        for (auto mode : {DominanceMode::kStrong, DominanceMode::kWeak}) {
          const auto pure = find_dominator(game, i, s, r, mode, DominanceClass::kPure);
          if (!pure) continue;
          DominanceCertificate embedded = *pure;
          embedded.dominator = pure->dominator_mixture(game);
          const bool mixed_found = mode == DominanceMode::kStrong ? strong.has_value() : weak.has_value();
          report.record("pearce.pure_implies_mixed", mixed_found && verify_certificate(game, embedded), subject,
                        at);
        }
      }
    }
  }
  return report;
}

// For k <= k_max: sigma survives k weak rounds iff for every k' <= k some
// state of the structure for depth k' plays sigma and satisfies D^{k'}_i.
// Also checks the structure's own clause (AND_{j != i} D^{k'}_j at every
// (k', i, s)) and appropriateness conditions (1)-(3).
inline Report crosscheck_charwd(const std::shared_ptr<const NormalFormGame>& game, std::size_t k_max,
                                const std::string& subject) {
  Report report;
  const NormalFormGame& g = *game;
  const std::size_t n = g.num_players();
  const auto oracle = logic::DiamondOracle::theorem(game);
  logic::FormulaFamilies families(g);
  const auto trace = eliminate(g, DominanceMode::kWeak, DominanceClass::kMixed, k_max);

  // sat[k'][i][s]
  std::vector<std::vector<std::vector<bool>>> sat(k_max + 1);
  for (std::size_t level = 0; level <= k_max; ++level) {
    const auto mbar = build_Mbar(game, level);
    report.note("mbar.reroutes", mbar.reroutes.size());
    const auto appropriate = check_appropriate(mbar.structure, false);
    for (int c : {1, 2, 3}) {
      report.record("mbar.appropriate", appropriate.passes(c), subject, [&] {
        return nlohmann::json{{"k", level}, {"condition", c}};
      });
    }
    report.note("mbar.condition4_failures", appropriate.failures(4));
    logic::ModelChecker checker(mbar.structure, oracle);
    for (const auto& [key, w] : mbar.index) {
      const auto& [lvl, tag, profile] = key;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == tag) continue;
        report.record("mbar.clause", checker.holds(w, families.D(lvl, j)), subject, [&] {
          return nlohmann::json{{"k", level}, {"state", mbar.structure.state(w).id}, {"player", j + 1}};
        });
      }
    }
    sat[level].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t s = 0; s < g.num_strategies(i); ++s) {
        sat[level][i].push_back(detail::some_state(checker, i, s, families.D(level, i)));
      }
    }
  }
  for (std::size_t k = 0; k <= k_max; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t s = 0; s < g.num_strategies(i); ++s) {
        const bool survives_k = trace.at(k).contains(i, s);
        bool witnessed = true;
        for (std::size_t level = 0; level <= k; ++level) witnessed = witnessed && sat[level][i][s];
        report.record("charwd.equivalence", survives_k == witnessed, subject, [&] {
          auto j = detail::where(g, i, s);
          j["k"] = k;
          j["survives"] = survives_k;
          j["witnessed"] = witnessed;
          return j;
        });
      }
    }
  }
  return report;
}

// E^k RAT at every state of the rationalizability structure for k <= k_max;
// exactly the strong-elimination survivors appear.
inline Report crosscheck_charrat(const std::shared_ptr<const NormalFormGame>& game, std::size_t k_max,
                                 const std::string& subject) {
  Report report;
  const NormalFormGame& g = *game;
  const auto sets = rationalizable_sets(g);
  report.record("charrat.witness", verify_rat1_witness(g, sets.sets, sets.beliefs), subject,
                [] { return nlohmann::json::object(); });
  const auto m = build_rationalizability_structure(game, sets.sets, sets.beliefs);
  const auto appropriate = check_appropriate(m, true);
  report.record("charrat.appropriate", appropriate.ok(), subject, [] { return nlohmann::json::object(); });

  const auto oracle = logic::DiamondOracle::reject();
  logic::ModelChecker checker(m, oracle);
  const auto rat = logic::rat_all(g.num_players());
  logic::FormulaPtr ek = rat;
  for (std::size_t k = 0; k <= k_max; ++k) {
    if (k > 0) ek = logic::everyone_believes(g.num_players(), ek);
    const auto& ext = checker.extension(ek);
    for (std::size_t w = 0; w < m.size(); ++w) {
      report.record("charrat.ek_rat", ext[w] != 0, subject, [&] {
        return nlohmann::json{{"k", k}, {"state", m.state(w).id}};
      });
    }
  }
  const auto fixpoint = eliminate(g, DominanceMode::kStrong, DominanceClass::kMixed, std::nullopt).rounds.back();
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    for (std::size_t s = 0; s < g.num_strategies(i); ++s) {
      bool present = false;
      for (const auto& st : m.states()) present = present || st.profile[i] == s;
      report.record("charrat.coverage", present == fixpoint.contains(i, s), subject,
                    [&] { return detail::where(g, i, s); });
    }
  }
  return report;
}

// After convergence at k*: in the structure for K = k* + 2 every surviving
// strategy has, for each k* <= k' <= K, a state satisfying D^{k'}_i. Whether
// one state satisfies all D^{k'}_i with k* < k' <= K at once is recorded as a
// note, not a violation: it needs X^{m} = X^{m+1} along the belief chain,
// which fails when a player loses strategies in the first round.
inline Report crosscheck_convergence(const std::shared_ptr<const NormalFormGame>& game,
                                     const std::string& subject) {
  Report report;
  const NormalFormGame& g = *game;
  const auto fix = eliminate(g, DominanceMode::kWeak, DominanceClass::kMixed, std::nullopt);
  const std::size_t k_star = *fix.converged_at;
  const std::size_t K = k_star + 2;
  const auto mbar = build_Mbar(game, K);
  const auto oracle = logic::DiamondOracle::theorem(game);
  logic::FormulaFamilies families(g);
  logic::ModelChecker checker(mbar.structure, oracle);
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    for (std::size_t s : fix.rounds.back()[i]) {
      for (std::size_t k = k_star; k <= K; ++k) {
        report.record("convergence.per_level", detail::some_state(checker, i, s, families.D(k, i)), subject,
                      [&] {
                        auto j = detail::where(g, i, s);
                        j["k"] = k;
                        return j;
                      });
      }
      std::vector<char> all(mbar.structure.size(), 1);
      for (std::size_t k = k_star + 1; k <= K; ++k) {
        const auto& ext = checker.extension(families.D(k, i));
        for (std::size_t w = 0; w < all.size(); ++w) all[w] = all[w] && ext[w];
      }
      bool found = false;
      for (std::size_t w = 0; w < all.size(); ++w) {
        found = found || (all[w] && mbar.structure.state(w).profile[i] == s);
      }
      report.note(found ? "convergence.simultaneous_found" : "convergence.simultaneous_absent");
    }
  }
  return report;
}

// The pasted structure's designated state satisfies <B_i> D^k_i for k <= K.
inline Report crosscheck_corollary(const std::shared_ptr<const NormalFormGame>& game, const std::string& subject,
                                   std::optional<std::size_t> K_override = std::nullopt) {
  Report report;
  const NormalFormGame& g = *game;
  const auto fix = eliminate(g, DominanceMode::kWeak, DominanceClass::kMixed, std::nullopt);
  const std::size_t K = K_override.value_or(*fix.converged_at + 2);
  const auto oracle = logic::DiamondOracle::theorem(game);
  logic::FormulaFamilies families(g);
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    for (std::size_t s : fix.rounds.back()[i]) {
      const auto minf = build_Minfty(game, i, s, K);
      const auto appropriate = check_appropriate(minf.structure, false);
      report.record("corollary.appropriate",
                    appropriate.passes(1) && appropriate.passes(2) && appropriate.passes(3), subject,
                    [&] { return detail::where(g, i, s); });
      report.record("corollary.plays", minf.structure.state(minf.designated).profile[i] == s, subject,
                    [&] { return detail::where(g, i, s); });
      logic::ModelChecker checker(minf.structure, oracle);
      for (std::size_t k = 0; k <= K; ++k) {
        report.record("corollary.possible_D", checker.holds(minf.designated, logic::considers(i, families.D(k, i))),
                      subject, [&] {
                        auto j = detail::where(g, i, s);
                        j["k"] = k;
                        return j;
                      });
      }
    }
  }
  return report;
}

// Formula-level sanity on one structure: <B_i> = !B_i!, D^k => C^k,
// E^{k+1} RAT => B_i E^k RAT, and (when condition (4) holds everywhere)
// C^k_j = RAT_j & B_j(E^0 RAT & ... & E^{k-2} RAT).
inline Report crosscheck_logic(const ProbabilityStructure& m, const logic::DiamondOracle& oracle,
                               std::size_t k_max, const std::string& subject) {
  using namespace logic;
  Report report;
  const NormalFormGame& g = m.game();
  const std::size_t n = g.num_players();
  FormulaFamilies families(g);
  ModelChecker checker(m, oracle);
  const auto all_rat = rat_all(n);

  std::vector<FormulaPtr> sample{truth(), all_rat};
  for (std::size_t j = 0; j < n; ++j) {
    sample.push_back(rat(j));
    sample.push_back(play(j, g.strategy_name(j, 0)));
    sample.push_back(negate(play(j, g.strategy_name(j, g.num_strategies(j) - 1))));
    sample.push_back(prob_at_least(j, play((j + 1) % n, g.strategy_name((j + 1) % n, 0)), Rational(1, 2)));
    sample.push_back(families.C(2, j));
    sample.push_back(families.D(1, j));
    sample.push_back(families.D(2, j));
  }
  sample.push_back(mk_E(1, all_rat, n));
  sample.push_back(conj(rat(0), believes(n - 1, rat(0))));

  auto each_state = [&](const std::string& check, const std::vector<char>& lhs, const std::vector<char>& rhs,
                        bool implication, const std::string& what) {
    for (std::size_t w = 0; w < m.size(); ++w) {
      const bool ok = implication ? (!lhs[w] || rhs[w]) : (lhs[w] == rhs[w]);
      report.record(check, ok, subject, [&] { return nlohmann::json{{"state", m.state(w).id}, {"formula", what}}; });
    }
  };

  for (const auto& phi : sample) {
    for (std::size_t i = 0; i < n; ++i) {
      each_state("logic.possible_dual", checker.extension(considers(i, phi)),
                 checker.extension(negate(believes(i, negate(phi)))), false, render(*phi));
    }
  }
  for (std::size_t k = 0; k <= k_max; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      each_state("logic.d_implies_c", checker.extension(families.D(k, j)), checker.extension(families.C(k, j)), true,
                 "D^" + std::to_string(k) + "_" + std::to_string(j + 1));
    }
  }
  std::vector<FormulaPtr> e_levels{all_rat};
  for (std::size_t k = 1; k <= k_max + 1; ++k) e_levels.push_back(everyone_believes(n, e_levels.back()));
  for (std::size_t k = 0; k + 1 < e_levels.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      each_state("logic.e_monotone", checker.extension(e_levels[k + 1]),
                 checker.extension(believes(i, e_levels[k])), true, "E^" + std::to_string(k + 1) + " RAT");
    }
  }
  if (check_appropriate(m, true).ok()) {
    for (std::size_t k = 2; k <= k_max; ++k) {
      std::vector<FormulaPtr> parts(e_levels.begin(), e_levels.begin() + static_cast<std::ptrdiff_t>(k - 1));
      const auto body = conj_all(parts);
      for (std::size_t j = 0; j < n; ++j) {
        each_state("logic.c_equivalence", checker.extension(families.C(k, j)),
                   checker.extension(conj(rat(j), believes(j, body))), false,
                   "C^" + std::to_string(k) + "_" + std::to_string(j + 1));
      }
    }
  } else {
    report.note("logic.c_equivalence_skipped_condition4");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Named example games.

inline NormalFormGame make_game(std::vector<std::vector<std::string>> strategies,
                                const std::vector<std::vector<long>>& payoffs) {
  std::vector<std::string> players;
  for (std::size_t i = 0; i < strategies.size(); ++i) players.push_back("P" + std::to_string(i + 1));
  std::vector<std::vector<Rational>> table;
  for (const auto& row : payoffs) {
    std::vector<Rational> entry;
    for (long v : row) entry.emplace_back(v);
    table.push_back(std::move(entry));
  }
  return NormalFormGame(std::move(players), std::move(strategies), std::move(table));
}

// Prisoner's dilemma: u1(C,C)=3, (C,D)=0, (D,C)=4, (D,D)=1, symmetric.
inline NormalFormGame prisoners_dilemma() {
  return make_game({{"C", "D"}, {"C", "D"}}, {{3, 3}, {0, 4}, {4, 0}, {1, 1}});
}

// u1(T,.)=(1,1), u1(B,.)=(1,0); player 2 indifferent (all zero).
inline NormalFormGame game_g1() {
  return make_game({{"T", "B"}, {"L", "R"}}, {{1, 0}, {1, 0}, {1, 0}, {0, 0}});
}

// Player 1 as in G1; u2(T,L)=1, u2(T,R)=0, u2(B,L)=0, u2(B,R)=1.
inline NormalFormGame game_g2() {
  return make_game({{"T", "B"}, {"L", "R"}}, {{1, 1}, {1, 0}, {1, 0}, {0, 1}});
}

inline NormalFormGame matching_pennies() {
  return make_game({{"H", "T"}, {"H", "T"}}, {{1, -1}, {-1, 1}, {-1, 1}, {1, -1}});
}

inline std::vector<std::pair<std::string, NormalFormGame>> fixed_suite() {
  return {{"prisoners_dilemma", prisoners_dilemma()},
          {"G1", game_g1()},
          {"G2", game_g2()},
          {"matching_pennies", matching_pennies()}};
}

// ---------------------------------------------------------------------------
// Full suite.

struct VerifyOptions {
  std::uint64_t seed_begin = 0;
  std::uint64_t seed_end = 0;  // inclusive
  std::size_t players = 2;
  std::size_t min_strategies = 1;
  std::size_t max_strategies = 4;
  int payoff_min = -3;
  int payoff_max = 3;
  std::size_t random_k_max = 3;
  std::size_t charrat_k_max = 5;
  bool include_fixed_suite = true;
  unsigned jobs = 1;
};

inline Report verify_game(const std::shared_ptr<const NormalFormGame>& game, const std::string& subject,
                          std::optional<std::size_t> k_max, std::size_t charrat_k_max, bool fixed) {
  Report report;
  const auto fix = eliminate(*game, DominanceMode::kWeak, DominanceClass::kMixed, std::nullopt);
  const std::size_t k = k_max.value_or(*fix.converged_at + 2);
  report.merge(crosscheck_pearce(*game, subject));
  report.merge(crosscheck_charwd(game, k, subject));
  report.merge(crosscheck_charrat(game, charrat_k_max, subject));
  report.merge(crosscheck_convergence(game, subject));
  if (fixed) report.merge(crosscheck_corollary(game, subject));

  const auto oracle = logic::DiamondOracle::theorem(game);
  const auto sets = rationalizable_sets(*game);
  report.merge(crosscheck_logic(build_rationalizability_structure(game, sets.sets, sets.beliefs), oracle, 4, subject));
  report.merge(crosscheck_logic(build_Mbar(game, std::min<std::size_t>(k, 3)).structure, oracle, 4, subject));
  return report;
}

inline Report verify(const VerifyOptions& options) {
  Report report;
  if (options.include_fixed_suite) {
    for (const auto& [name, game] : fixed_suite()) {
      report.merge(verify_game(std::make_shared<const NormalFormGame>(game), name, std::nullopt,
                               options.charrat_k_max, true));
    }
  }
  if (options.seed_end < options.seed_begin) return report;
  const std::uint64_t count = options.seed_end - options.seed_begin + 1;
  std::vector<Report> per_seed(count);
  auto run = [&](std::uint64_t offset) {
    const std::uint64_t seed = options.seed_begin + offset;
    GameGenerator gen{seed, options.players, options.min_strategies, options.max_strategies, options.payoff_min,
                      options.payoff_max};
    auto game = std::make_shared<const NormalFormGame>(gen.generate());
    per_seed[offset] = verify_game(game, "seed " + std::to_string(seed), options.random_k_max,
                                   options.charrat_k_max, false);
  };
  const unsigned jobs = std::max(1u, options.jobs);
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::uint64_t k = next++; k < count; k = next++) run(k);
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& r : per_seed) report.merge(r);
  return report;
}

}  // namespace iadmit::harness
