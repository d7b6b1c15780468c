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

#include <gtest/gtest.h>

#include "iadmit/harness.hpp"
#include "iadmit/model_check.hpp"

namespace iadmit::logic {
namespace {

std::shared_ptr<const NormalFormGame> shared(NormalFormGame g) { return std::make_shared<const NormalFormGame>(std::move(g)); }

ProbabilityStructure two_state() {
  auto g = shared(harness::game_g1());
  std::vector<State> states{{"a", {0, 0}, {{{0, Rational(1, 2)}, {1, Rational(1, 2)}}, {{0, Rational(1)}}}},
                            {"b", {0, 1}, {{{0, Rational(1, 2)}, {1, Rational(1, 2)}}, {{1, Rational(1)}}}}};
  return ProbabilityStructure(g, states);
}

TEST(ModelCheck, HandComputedTruthValues) {
  const auto m = two_state();
  const auto oracle = DiamondOracle::reject();
  ModelChecker c(m, oracle);
  auto at = [&](const char* text) {
    const auto f = parse(text, &m.game());
    return std::make_pair(c.holds(0, f), c.holds(1, f));
  };
  EXPECT_EQ(at("play_2(L)"), std::make_pair(true, false));
  EXPECT_EQ(at("B_1 play_2(L)"), std::make_pair(false, false));
  EXPECT_EQ(at("<B_1> play_2(L)"), std::make_pair(true, true));
  EXPECT_EQ(at("pr_1(play_2(L)) >= 1/2"), std::make_pair(true, true));
  EXPECT_EQ(at("pr_1(play_2(L)) > 1/2"), std::make_pair(false, false));
  EXPECT_EQ(at("B_2 play_2(L)"), std::make_pair(true, false));
  // Player 1 expects 1 from T and 1/2 from B: T is rational.
  EXPECT_EQ(at("RAT_1"), std::make_pair(true, true));
  EXPECT_EQ(at("RAT_2 & B_1 RAT_2"), std::make_pair(true, true));
  EXPECT_EQ(at("play_2(L) -> B_2 play_2(L)"), std::make_pair(true, true));
  EXPECT_THROW(c.holds(0, parse("<> true")), OracleRejection);
  EXPECT_THROW(c.holds(2, parse("true")), DomainError);
  EXPECT_THROW(c.holds(0, parse("play_2(Q)")), DomainError);
}

TEST(ModelCheck, IrrationalBeliefPoint) {
  // Player 1 sure of L plays B: tied with T, still rational. Sure of R: not.
  auto g = shared(harness::game_g1());
  ProbabilityStructure m(g, {{"x", {1, 0}, {{{0, Rational(1)}}, {{0, Rational(1)}}}},
                             {"y", {1, 1}, {{{1, Rational(1)}}, {{1, Rational(1)}}}}});
  const auto oracle = DiamondOracle::reject();
  EXPECT_TRUE(check(m, "x", rat(0), oracle));
  EXPECT_FALSE(check(m, "y", rat(0), oracle));
  EXPECT_THROW(check(m, "z", rat(0), oracle), DomainError);
}

TEST(ModelCheck, TheoremOracle) {
  auto g = shared(harness::game_g2());
  const auto oracle = DiamondOracle::theorem(g);
  EXPECT_TRUE(diamond_query(oracle, parse("play_1(B)", g.get())));
  EXPECT_TRUE(diamond_query(oracle, parse("play_2(R) & D^1_2", g.get())));
  EXPECT_FALSE(diamond_query(oracle, parse("play_2(R) & D^2_2", g.get())));
  EXPECT_FALSE(diamond_query(oracle, parse("play_1(B) & D^1_1", g.get())));
  EXPECT_TRUE(diamond_query(oracle, parse("play_1(T) & play_2(L) & D^5_1 & D^5_2", g.get())));
  EXPECT_FALSE(diamond_query(oracle, parse("play_1(T) & play_1(B)", g.get())));
  EXPECT_THROW(diamond_query(oracle, parse("RAT_1", g.get())), OracleRejection);
  EXPECT_THROW(diamond_query(oracle, parse("D^1_1 & D^2_1", g.get())), OracleRejection);
}

TEST(ModelCheck, WitnessFamilyOracle) {
  const auto m = two_state();
  const auto oracle = DiamondOracle::witness_family({m});
  EXPECT_TRUE(diamond_query(oracle, parse("play_2(R) & RAT_1")));
  EXPECT_FALSE(diamond_query(oracle, parse("play_1(B)")));
  ModelChecker c(m, oracle);
  EXPECT_TRUE(c.holds(0, parse("<> B_2 play_2(R)")));
}

TEST(ModelCheck, MbarClauseForG2) {
  auto g = shared(harness::game_g2());
  const auto mbar = build_Mbar(g, 2);
  const auto oracle = DiamondOracle::theorem(g);
  EXPECT_TRUE(check(mbar.structure, "(2,1,(T,L))", mk_D(*g, 2, 1), oracle));
  EXPECT_TRUE(check(mbar.structure, "(2,2,(T,L))", mk_D(*g, 2, 0), oracle));
  // R is gone after two rounds: no state playing R satisfies D^2_2.
  ModelChecker c(mbar.structure, oracle);
  const auto& ext = c.extension(mk_D(*g, 2, 1));
  for (std::size_t w = 0; w < mbar.structure.size(); ++w) {
    if (mbar.structure.state(w).profile[1] == 1) EXPECT_FALSE(ext[w]) << mbar.structure.state(w).id;
  }
  EXPECT_TRUE(c.holds(mbar.structure.index_of("(1,1,(T,R))"), mk_D(*g, 1, 1)));
}

TEST(ModelCheck, StronglyAdmissibleLevel) {
  const auto g = harness::game_g2();
  EXPECT_TRUE(strongly_admissible_level(g, 1, 1, 1));
  EXPECT_FALSE(strongly_admissible_level(g, 1, 1, 2));
}

}  // namespace
}  // namespace iadmit::logic
