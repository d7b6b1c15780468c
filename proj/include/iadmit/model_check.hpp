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
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "iadmit/elimination.hpp"
#include "iadmit/formula.hpp"
#include "iadmit/structure.hpp"

namespace iadmit::logic {

class ModelChecker;

// Decides <> phi ("phi holds at some state of some appropriate structure").
//  - theorem: answers conjunctions of play atoms and D^k_j formulas (at most
//    one level per player) from the weak elimination trace; refuses the rest.
//  - witness_family: true iff phi holds at a state of one of the given
//    structures (a sound under-approximation).
//  - reject: refuses every query.
class DiamondOracle {
 public:
  enum class Mode { kTheorem, kWitnessFamily, kReject };

  static DiamondOracle theorem(std::shared_ptr<const NormalFormGame> game) {
    DiamondOracle o(Mode::kTheorem);
    o.game_ = std::move(game);
    o.trace_ = std::make_shared<EliminationTrace>(
        eliminate(*o.game_, DominanceMode::kWeak, DominanceClass::kMixed, std::nullopt));
    o.families_ = std::make_shared<FormulaFamilies>(*o.game_);
    return o;
  }

  static DiamondOracle witness_family(std::vector<ProbabilityStructure> family) {
    DiamondOracle o(Mode::kWitnessFamily);
    o.family_ = std::make_shared<std::vector<ProbabilityStructure>>(std::move(family));
    return o;
  }

  static DiamondOracle reject() { return DiamondOracle(Mode::kReject); }

  Mode mode() const { return mode_; }
  const EliminationTrace* trace() const { return trace_.get(); }

  inline bool query(const FormulaPtr& phi) const;

 private:
  explicit DiamondOracle(Mode mode) : mode_(mode), cache_(std::make_shared<Cache>()) {}

  struct Cache {
    std::mutex mutex;
    std::unordered_map<const Formula*, bool> answers;
    std::vector<FormulaPtr> keep_alive;
  };

  inline bool theorem_query(const FormulaPtr& phi) const;
  inline std::optional<std::size_t> match_D(const FormulaPtr& f, std::size_t player) const;

  Mode mode_;
  std::shared_ptr<const NormalFormGame> game_;
  std::shared_ptr<EliminationTrace> trace_;
  std::shared_ptr<FormulaFamilies> families_;
  std::shared_ptr<std::vector<ProbabilityStructure>> family_;
  std::shared_ptr<Cache> cache_;
};

// Bottom-up evaluator for one structure. Extensions are memoized per formula
// node, so shared subformulas are evaluated once.
class ModelChecker {
 public:
  ModelChecker(const ProbabilityStructure& structure, const DiamondOracle& oracle)
      : m_(structure), oracle_(oracle) {}

  bool holds(std::size_t state, const FormulaPtr& f) {
    if (state >= m_.size()) throw DomainError("unknown state index " + std::to_string(state));
    return extension(f)[state] != 0;
  }

  // The truth set [[f]] as a membership mask over states.
  const std::vector<char>& extension(const FormulaPtr& f) {
    if (auto it = memo_.find(f.get()); it != memo_.end()) return it->second;
    std::vector<char> ext = evaluate(f);
    keep_alive_.push_back(f);
    return memo_.emplace(f.get(), std::move(ext)).first->second;
  }

  const ProbabilityStructure& structure() const { return m_; }

 private:
  std::vector<char> evaluate(const FormulaPtr& f) {
    const std::size_t size = m_.size();
    const NormalFormGame& game = m_.game();
    std::vector<char> out(size, 0);
    auto need_player = [&](std::size_t i) {
      if (i >= game.num_players()) {
        throw DomainError("formula mentions unknown player " + std::to_string(i + 1));
      }
    };
    switch (f->op()) {
      case Op::kTrue:
        std::fill(out.begin(), out.end(), 1);
        break;
      case Op::kRat:
        need_player(f->player());
        out = rational(f->player());
        break;
      case Op::kPlay: {
        const std::size_t s = game.strategy_index(f->player(), f->strategy());
        for (std::size_t w = 0; w < size; ++w) out[w] = m_.state(w).profile[f->player()] == s;
        break;
      }
      case Op::kNot: {
        const auto& inner = extension(f->operand());
        for (std::size_t w = 0; w < size; ++w) out[w] = !inner[w];
        break;
      }
      case Op::kAnd: {
        const auto lhs = extension(f->lhs());
        const auto& rhs = extension(f->rhs());
        for (std::size_t w = 0; w < size; ++w) out[w] = lhs[w] && rhs[w];
        break;
      }
      case Op::kBelief:
      case Op::kPossible:
      case Op::kProbAtLeast:
      case Op::kProbGreater: {
        need_player(f->player());
        const auto& inner = extension(f->operand());
        for (std::size_t w = 0; w < size; ++w) {
          const Rational p = m_.probability(w, f->player(), inner);
          switch (f->op()) {
            case Op::kBelief:
              out[w] = p == 1;
              break;
            case Op::kPossible:
              out[w] = p > 0;
              break;
            case Op::kProbAtLeast:
              out[w] = p >= f->threshold();
              break;
            default:
              out[w] = p > f->threshold();
              break;
          }
        }
        break;
      }
      case Op::kDiamond:
        std::fill(out.begin(), out.end(), oracle_.query(f->operand()) ? 1 : 0);
        break;
    }
    return out;
  }

  // RAT_i: s_i(w) is a best response to the marginal of PR_i(w) on Sigma_{-i}.
  const std::vector<char>& rational(std::size_t i) {
    if (rational_.empty()) rational_.resize(m_.game().num_players());
    auto& cached = rational_[i];
    if (!cached) {
      std::vector<char> out(m_.size(), 0);
      for (std::size_t w = 0; w < m_.size(); ++w) {
        Belief marginal{i, {}};
        for (const auto& [t, p] : m_.belief(w, i)) {
          marginal.weights[opponents_of(i, m_.state(t).profile)] += p;
        }
        out[w] = is_best_response(m_.game(), i, m_.state(w).profile[i], marginal);
      }
      cached = std::move(out);
    }
    return *cached;
  }

  const ProbabilityStructure& m_;
  const DiamondOracle& oracle_;
  std::unordered_map<const Formula*, std::vector<char>> memo_;
  std::vector<FormulaPtr> keep_alive_;
  std::vector<std::optional<std::vector<char>>> rational_;
};

inline std::optional<std::size_t> DiamondOracle::match_D(const FormulaPtr& f, std::size_t player) const {
  for (std::size_t k = 1;; ++k) {
    const auto& d = families_->D(k, player);
    if (d->height() > f->height()) return std::nullopt;
    if (equal(*d, *f)) return k;
  }
}

inline bool DiamondOracle::theorem_query(const FormulaPtr& phi) const {
  const std::size_t n = game_->num_players();
  std::vector<std::optional<std::size_t>> plays(n), levels(n);
  bool contradictory = false;

  auto record_level = [&](std::size_t j, std::size_t k) {
    if (levels[j] && *levels[j] != k) {
      throw OracleRejection("theorem oracle: two different D levels for player " + std::to_string(j + 1));
    }
    levels[j] = k;
  };
  auto visit = [&](auto&& self, const FormulaPtr& f) -> void {
    switch (f->op()) {
      case Op::kTrue:
        return;
      case Op::kPlay: {
        const std::size_t j = f->player();
        if (j >= n) throw DomainError("formula mentions unknown player " + std::to_string(j + 1));
        const std::size_t s = game_->strategy_index(j, f->strategy());
        if (plays[j] && *plays[j] != s) contradictory = true;
        plays[j] = s;
        return;
      }
      case Op::kAnd:
        for (std::size_t j = 0; j < n; ++j) {
          if (auto k = match_D(f, j)) {
            record_level(j, *k);
            return;
          }
        }
        self(self, f->lhs());
        self(self, f->rhs());
        return;
      default:
        throw OracleRejection("theorem oracle: conjunct outside the supported fragment: " +
                              render(*f).substr(0, 200));
    }
  };
  visit(visit, phi);

  if (contradictory) return false;
  for (std::size_t j = 0; j < n; ++j) {
    if (levels[j] && plays[j] && !trace_->at(*levels[j]).contains(j, *plays[j])) return false;
  }
  return true;
}

inline bool DiamondOracle::query(const FormulaPtr& phi) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    if (auto it = cache_->answers.find(phi.get()); it != cache_->answers.end()) return it->second;
  }
  bool answer = false;
  switch (mode_) {
    case Mode::kReject:
      throw OracleRejection("diamond queries are rejected in this mode");
    case Mode::kTheorem:
      answer = theorem_query(phi);
      break;
    case Mode::kWitnessFamily:
      for (const auto& m : *family_) {
        ModelChecker checker(m, *this);
        const auto& ext = checker.extension(phi);
        if (std::find(ext.begin(), ext.end(), 1) != ext.end()) {
          answer = true;
          break;
        }
      }
      break;
  }
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->answers.emplace(phi.get(), answer);
  cache_->keep_alive.push_back(phi);
  return answer;
}

inline bool check(const ProbabilityStructure& m, std::size_t state, const FormulaPtr& f,
                  const DiamondOracle& oracle) {
  ModelChecker checker(m, oracle);
  return checker.holds(state, f);
}

inline bool check(const ProbabilityStructure& m, const std::string& state_id, const FormulaPtr& f,
                  const DiamondOracle& oracle) {
  return check(m, m.index_of(state_id), f, oracle);
}

inline bool diamond_query(const DiamondOracle& oracle, const FormulaPtr& phi) { return oracle.query(phi); }

// k-th level strong admissibility, decided through k rounds of weak
// elimination (mixed dominators); the infinitary formula is never built.
inline bool strongly_admissible_level(const NormalFormGame& game, std::size_t player, std::size_t strategy,
                                      std::size_t k) {
  return survives(game, player, strategy, k, DominanceMode::kWeak, DominanceClass::kMixed);
}

}  // namespace iadmit::logic
