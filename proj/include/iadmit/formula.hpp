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

#include <cctype>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "iadmit/error.hpp"
#include "iadmit/game.hpp"
#include "iadmit/rational.hpp"

namespace iadmit::logic {

enum class Op {
  kTrue,
  kRat,          // RAT_i
  kPlay,         // play_i(sigma)
  kNot,
  kAnd,
  kBelief,       // B_i phi: probability one
  kPossible,     // <B_i> phi: positive probability
  kDiamond,      // <> phi: satisfiable in some appropriate structure
  kProbAtLeast,  // pr_i(phi) >= alpha
  kProbGreater,  // pr_i(phi) > alpha
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula node. Players are 0-based here and 1-based in text.
// Subformulas may be shared, so large families stay small as DAGs.
class Formula {
 public:
  Op op() const { return op_; }
  std::size_t player() const { return player_; }
  const std::string& strategy() const { return strategy_; }
  const Rational& threshold() const { return threshold_; }
  const FormulaPtr& lhs() const { return lhs_; }
  const FormulaPtr& rhs() const { return rhs_; }
  const FormulaPtr& operand() const { return lhs_; }
  std::size_t hash() const { return hash_; }
  std::size_t height() const { return height_; }

  static FormulaPtr make(Op op, std::size_t player, std::string strategy, Rational threshold,
                         FormulaPtr lhs, FormulaPtr rhs) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->op_ = op;
    f->player_ = player;
    f->strategy_ = std::move(strategy);
    f->threshold_ = std::move(threshold);
    f->lhs_ = std::move(lhs);
    f->rhs_ = std::move(rhs);
    std::size_t h = std::hash<int>{}(static_cast<int>(op)) * 0x9E3779B97F4A7C15ULL;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2); };
    mix(f->player_);
    mix(std::hash<std::string>{}(f->strategy_));
    if (op == Op::kProbAtLeast || op == Op::kProbGreater) {
      mix(std::hash<std::string>{}(f->threshold_.get_str()));
    }
    std::size_t height = 0;
    if (f->lhs_) {
      mix(f->lhs_->hash_);
      height = f->lhs_->height_;
    }
    if (f->rhs_) {
      mix(f->rhs_->hash_);
      height = std::max(height, f->rhs_->height_);
    }
    f->hash_ = h;
    f->height_ = height + 1;
    return f;
  }

 private:
  Formula() = default;

  Op op_ = Op::kTrue;
  std::size_t player_ = 0;
  std::string strategy_;
  Rational threshold_;
  FormulaPtr lhs_, rhs_;
  std::size_t hash_ = 0;
  std::size_t height_ = 1;
};

namespace detail {

struct PairHash {
  std::size_t operator()(const std::pair<const Formula*, const Formula*>& p) const {
    return std::hash<const void*>{}(p.first) * 31 + std::hash<const void*>{}(p.second);
  }
};

using EqualCache = std::unordered_set<std::pair<const Formula*, const Formula*>, PairHash>;

inline bool equal_rec(const Formula& a, const Formula& b, EqualCache& proven) {
  if (&a == &b) return true;
  if (a.hash() != b.hash() || a.op() != b.op() || a.height() != b.height()) return false;
  if (proven.contains({&a, &b})) return true;
  bool same = false;
  switch (a.op()) {
    case Op::kTrue:
      same = true;
      break;
    case Op::kRat:
      same = a.player() == b.player();
      break;
    case Op::kPlay:
      same = a.player() == b.player() && a.strategy() == b.strategy();
      break;
    case Op::kNot:
    case Op::kDiamond:
      same = equal_rec(*a.operand(), *b.operand(), proven);
      break;
    case Op::kAnd:
      same = equal_rec(*a.lhs(), *b.lhs(), proven) && equal_rec(*a.rhs(), *b.rhs(), proven);
      break;
    case Op::kBelief:
    case Op::kPossible:
      same = a.player() == b.player() && equal_rec(*a.operand(), *b.operand(), proven);
      break;
    case Op::kProbAtLeast:
    case Op::kProbGreater:
      same = a.player() == b.player() && a.threshold() == b.threshold() &&
             equal_rec(*a.operand(), *b.operand(), proven);
      break;
  }
  if (same) proven.insert({&a, &b});
  return same;
}

}  // namespace detail

// Structural equality (shared subterms are compared once).
inline bool equal(const Formula& a, const Formula& b) {
  detail::EqualCache proven;
  return detail::equal_rec(a, b, proven);
}

inline bool equal(const FormulaPtr& a, const FormulaPtr& b) { return equal(*a, *b); }

// ---------------------------------------------------------------------------
// Constructors.

inline FormulaPtr truth() {
  static const FormulaPtr t = Formula::make(Op::kTrue, 0, {}, Rational(0), nullptr, nullptr);
  return t;
}
inline FormulaPtr rat(std::size_t i) { return Formula::make(Op::kRat, i, {}, Rational(0), nullptr, nullptr); }
inline FormulaPtr play(std::size_t i, std::string strategy) {
  return Formula::make(Op::kPlay, i, std::move(strategy), Rational(0), nullptr, nullptr);
}
inline FormulaPtr negate(FormulaPtr f) { return Formula::make(Op::kNot, 0, {}, Rational(0), std::move(f), nullptr); }
inline FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
  return Formula::make(Op::kAnd, 0, {}, Rational(0), std::move(a), std::move(b));
}
inline FormulaPtr believes(std::size_t i, FormulaPtr f) {
  return Formula::make(Op::kBelief, i, {}, Rational(0), std::move(f), nullptr);
}
inline FormulaPtr considers(std::size_t i, FormulaPtr f) {
  return Formula::make(Op::kPossible, i, {}, Rational(0), std::move(f), nullptr);
}
inline FormulaPtr diamond(FormulaPtr f) { return Formula::make(Op::kDiamond, 0, {}, Rational(0), std::move(f), nullptr); }

inline FormulaPtr probability(Op op, std::size_t i, FormulaPtr f, Rational alpha) {
  alpha.canonicalize();
  if (alpha < 0 || alpha > 1) throw DomainError("probability threshold " + to_string(alpha) + " outside [0,1]");
  return Formula::make(op, i, {}, std::move(alpha), std::move(f), nullptr);
}
inline FormulaPtr prob_at_least(std::size_t i, FormulaPtr f, Rational alpha) {
  return probability(Op::kProbAtLeast, i, std::move(f), std::move(alpha));
}
inline FormulaPtr prob_greater(std::size_t i, FormulaPtr f, Rational alpha) {
  return probability(Op::kProbGreater, i, std::move(f), std::move(alpha));
}

// a -> b, encoded as !(a & !b).
inline FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return negate(conj(std::move(a), negate(std::move(b)))); }
inline FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return negate(conj(negate(std::move(a)), negate(std::move(b)))); }

// Left-nested conjunction; the empty conjunction is `true`.
inline FormulaPtr conj_all(const std::vector<FormulaPtr>& parts) {
  if (parts.empty()) return truth();
  FormulaPtr acc = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) acc = conj(acc, parts[k]);
  return acc;
}

// RAT = RAT_1 & ... & RAT_n
inline FormulaPtr rat_all(std::size_t n) {
  std::vector<FormulaPtr> parts;
  for (std::size_t i = 0; i < n; ++i) parts.push_back(rat(i));
  return conj_all(parts);
}

// E phi = B_1 phi & ... & B_n phi
inline FormulaPtr everyone_believes(std::size_t n, const FormulaPtr& f) {
  std::vector<FormulaPtr> parts;
  for (std::size_t i = 0; i < n; ++i) parts.push_back(believes(i, f));
  return conj_all(parts);
}

inline FormulaPtr mk_E(std::size_t k, FormulaPtr f, std::size_t n) {
  for (std::size_t step = 0; step < k; ++step) f = everyone_believes(n, f);
  return f;
}

// play_{-i}(opponents), in increasing player order.
inline FormulaPtr play_opponents(const NormalFormGame& game, std::size_t i, const Profile& opponents) {
  std::vector<FormulaPtr> parts;
  for (std::size_t k = 0; k < opponents.size(); ++k) {
    const std::size_t j = k < i ? k : k + 1;
    parts.push_back(play(j, game.strategy_name(j, opponents[k])));
  }
  return conj_all(parts);
}

// O-_i phi = B_i phi & AND_{sigma_{-i}} ( <>(play_{-i}(sigma_{-i}) & phi) -> <B_i> play_{-i}(sigma_{-i}) )
inline FormulaPtr mk_Ominus(const NormalFormGame& game, std::size_t i, const FormulaPtr& body) {
  std::vector<FormulaPtr> clauses;
  for (const auto& opp : StrategyRestriction::full(game).opponent_profiles(i)) {
    const auto p = play_opponents(game, i, opp);
    clauses.push_back(implies(diamond(conj(p, body)), considers(i, p)));
  }
  return conj(believes(i, body), conj_all(clauses));
}

// Cached C^k_j and D^k_j families with shared subformulas.
class FormulaFamilies {
 public:
  explicit FormulaFamilies(const NormalFormGame& game) : game_(game) {}

  // C^0 = true; C^{k+1}_j = RAT_j & B_j(AND_{j' != j} C^k_{j'})
  const FormulaPtr& C(std::size_t k, std::size_t j) {
    check_player(j);
    extend(c_, k, [this](std::size_t level, std::size_t p) {
      return conj(rat(p), believes(p, others(c_[level - 1], p)));
    });
    return c_.at(k).at(j);
  }

  // D^0 = true; D^{k+1}_j = RAT_j & O-_j(AND_{j' != j} D^k_{j'})
  const FormulaPtr& D(std::size_t k, std::size_t j) {
    check_player(j);
    extend(d_, k, [this](std::size_t level, std::size_t p) {
      return conj(rat(p), mk_Ominus(game_, p, others(d_[level - 1], p)));
    });
    return d_.at(k).at(j);
  }

  // AND_{j' != j} D^k_{j'}
  FormulaPtr D_others(std::size_t k, std::size_t j) {
    D(k, j);
    return others(d_[k], j);
  }

  const NormalFormGame& game() const { return game_; }

 private:
  using Level = std::vector<FormulaPtr>;

  void check_player(std::size_t j) const {
    if (j >= game_.num_players()) throw DomainError("player index out of range");
  }

  FormulaPtr others(const Level& level, std::size_t j) const {
    std::vector<FormulaPtr> parts;
    for (std::size_t p = 0; p < level.size(); ++p) {
      if (p != j) parts.push_back(level[p]);
    }
    return conj_all(parts);
  }

  template <typename Step>
  void extend(std::vector<Level>& family, std::size_t k, Step&& step) {
    const std::size_t n = game_.num_players();
    if (family.empty()) family.emplace_back(n, truth());
    while (family.size() <= k) {
      const std::size_t level = family.size();
      Level next(n);
      for (std::size_t p = 0; p < n; ++p) next[p] = step(level, p);
      family.push_back(std::move(next));
    }
  }

  const NormalFormGame& game_;
  std::vector<Level> c_, d_;
};

inline FormulaPtr mk_D(const NormalFormGame& game, std::size_t k, std::size_t j) {
  FormulaFamilies families(game);
  return families.D(k, j);
}

inline FormulaPtr mk_C(const NormalFormGame& game, std::size_t k, std::size_t j) {
  FormulaFamilies families(game);
  return families.C(k, j);
}

// ---------------------------------------------------------------------------
// Concrete syntax.
//
//   true  RAT_i  play_i(id)  !f  f & g  f -> g  B_i f  <B_i> f  <> f
//   pr_i(f) >= p/q   pr_i(f) > p/q   ( f )
//
// Unary operators bind tightest, & is left associative, -> is lowest and
// right associative. With a game in scope the parser also expands the
// abbreviations RAT, E^k f, C^k_j and D^k_j.

namespace detail {

enum class Prec { kImplies = 1, kAnd = 2, kUnary = 3 };

inline bool is_implication(const Formula& f) {
  return f.op() == Op::kNot && f.operand()->op() == Op::kAnd && f.operand()->rhs()->op() == Op::kNot;
}

inline void render_into(const Formula& f, Prec context, std::string& out) {
  auto wrap = [&](Prec mine, auto&& body) {
    const bool parens = static_cast<int>(mine) < static_cast<int>(context);
    if (parens) out += '(';
    body();
    if (parens) out += ')';
  };
  auto unary = [&](const std::string& prefix, const Formula& operand) {
    out += prefix;
    render_into(operand, Prec::kUnary, out);
  };
  switch (f.op()) {
    case Op::kTrue:
      out += "true";
      return;
    case Op::kRat:
      out += "RAT_" + std::to_string(f.player() + 1);
      return;
    case Op::kPlay:
      out += "play_" + std::to_string(f.player() + 1) + "(" + f.strategy() + ")";
      return;
    case Op::kNot:
      if (is_implication(f)) {
        const auto& inner = *f.operand();
        wrap(Prec::kImplies, [&] {
          render_into(*inner.lhs(), Prec::kAnd, out);
          out += " -> ";
          render_into(*inner.rhs()->operand(), Prec::kImplies, out);
        });
      } else {
        unary("!", *f.operand());
      }
      return;
    case Op::kAnd:
      wrap(Prec::kAnd, [&] {
        render_into(*f.lhs(), Prec::kAnd, out);
        out += " & ";
        render_into(*f.rhs(), Prec::kUnary, out);
      });
      return;
    case Op::kBelief:
      unary("B_" + std::to_string(f.player() + 1) + " ", *f.operand());
      return;
    case Op::kPossible:
      unary("<B_" + std::to_string(f.player() + 1) + "> ", *f.operand());
      return;
    case Op::kDiamond:
      unary("<> ", *f.operand());
      return;
    case Op::kProbAtLeast:
    case Op::kProbGreater:
      out += "pr_" + std::to_string(f.player() + 1) + "(";
      render_into(*f.operand(), Prec::kImplies, out);
      out += f.op() == Op::kProbAtLeast ? ") >= " : ") > ";
      out += to_string(f.threshold());
      return;
  }
}

class Parser {
 public:
  Parser(std::string_view text, const NormalFormGame* game) : text_(text), game_(game) {
    if (game_) families_ = std::make_unique<FormulaFamilies>(*game_);
  }

  FormulaPtr parse() {
    auto f = implication();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  // Keyword followed by something that is not an identifier character.
  bool accept_word(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) return false;
    const std::size_t end = pos_ + word.size();
    if (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
      return false;
    }
    pos_ = end;
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  std::size_t number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoul(std::string(text_.substr(start, pos_ - start)));
  }

  std::size_t player_index() {
    const std::size_t at = pos_;
    const std::size_t k = number();
    if (k == 0) throw ParseError("player indices start at 1", at);
    if (game_ && k > game_->num_players()) {
      throw ParseError("unknown player " + std::to_string(k), at);
    }
    return k - 1;
  }

  const NormalFormGame& need_game(const char* what) const {
    if (!game_) fail(std::string(what) + " needs a game in scope");
    return *game_;
  }

  FormulaPtr implication() {
    auto lhs = conjunction();
    if (accept("->")) return implies(lhs, implication());
    return lhs;
  }

  FormulaPtr conjunction() {
    auto acc = unary();
    while (accept("&")) acc = conj(acc, unary());
    return acc;
  }

  FormulaPtr unary() {
    skip_space();
    if (accept("!")) return negate(unary());
    if (accept("<>")) return diamond(unary());
    if (accept("<B_")) {
      const std::size_t i = player_index();
      expect(">");
      return considers(i, unary());
    }
    if (accept("B_")) {
      const std::size_t i = player_index();
      return believes(i, unary());
    }
    if (accept("E^")) {
      const std::size_t k = number();
      const auto& game = need_game("E^k");
      return mk_E(k, unary(), game.num_players());
    }
    return primary();
  }

  FormulaPtr primary() {
    skip_space();
    if (accept("(")) {
      auto f = implication();
      expect(")");
      return f;
    }
    if (accept_word("true")) return truth();
    if (accept("RAT_")) return rat(player_index());
    if (accept_word("RAT")) return rat_all(need_game("RAT").num_players());
    if (accept("play_")) {
      const std::size_t i = player_index();
      expect("(");
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
             text_[pos_] != '(' && text_[pos_] != ')') {
        ++pos_;
      }
      if (start == pos_) fail("expected a strategy id");
      std::string id(text_.substr(start, pos_ - start));
      if (game_ && !game_->find_strategy(i, id)) {
        throw ParseError("unknown strategy '" + id + "' for player " + std::to_string(i + 1), start);
      }
      expect(")");
      return play(i, std::move(id));
    }
    if (accept("pr_")) {
      const std::size_t i = player_index();
      expect("(");
      auto body = implication();
      expect(")");
      Op op;
      if (accept(">=")) {
        op = Op::kProbAtLeast;
      } else if (accept(">")) {
        op = Op::kProbGreater;
      } else {
        fail("expected '>=' or '>' after pr_i(...)");
      }
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) {
        ++pos_;
      }
      Rational alpha;
      try {
        alpha = parse_rational(text_.substr(start, pos_ - start));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), start);
      }
      if (alpha < 0 || alpha > 1) throw ParseError("threshold outside [0,1]", start);
      return probability(op, i, std::move(body), std::move(alpha));
    }
    if (accept("D^") || accept("C^")) {
      const bool is_d = text_[pos_ - 2] == 'D';
      const std::size_t k = number();
      expect("_");
      const std::size_t j = player_index();
      need_game(is_d ? "D^k_j" : "C^k_j");
      return is_d ? families_->D(k, j) : families_->C(k, j);
    }
    if (pos_ >= text_.size()) fail("unexpected end of formula");
    fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  const NormalFormGame* game_;
  std::unique_ptr<FormulaFamilies> families_;
};

}  // namespace detail

inline std::string render(const Formula& f) {
  std::string out;
  detail::render_into(f, detail::Prec::kImplies, out);
  return out;
}
inline std::string render(const FormulaPtr& f) { return render(*f); }

// With `game` set, player and strategy ids are validated against it.
inline FormulaPtr parse(std::string_view text, const NormalFormGame* game = nullptr) {
  return detail::Parser(text, game).parse();
}

// Throws DomainError if `f` mentions players or strategies outside `game`.
inline void validate(const Formula& f, const NormalFormGame& game) {
  std::unordered_set<const Formula*> seen;
  auto visit = [&](auto&& self, const Formula& node) -> void {
    if (!seen.insert(&node).second) return;
    switch (node.op()) {
      case Op::kRat:
      case Op::kBelief:
      case Op::kPossible:
      case Op::kProbAtLeast:
      case Op::kProbGreater:
        if (node.player() >= game.num_players()) {
          throw DomainError("formula mentions unknown player " + std::to_string(node.player() + 1));
        }
        break;
      case Op::kPlay:
        game.strategy_index(node.player(), node.strategy());
        break;
      default:
        break;
    }
    if (node.lhs()) self(self, *node.lhs());
    if (node.rhs()) self(self, *node.rhs());
  };
  visit(visit, f);
}

}  // namespace iadmit::logic
