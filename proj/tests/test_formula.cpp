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

#include "iadmit/formula.hpp"
#include "iadmit/harness.hpp"

namespace iadmit::logic {
namespace {

TEST(Formula, ParsesDocumentedExamples) {
  const auto a = parse("RAT_1 & B_2 play_1(T)");
  EXPECT_TRUE(equal(a, conj(rat(0), believes(1, play(0, "T")))));
  const auto b = parse("pr_1(play_2(L)) >= 1/2");
  EXPECT_TRUE(equal(b, prob_at_least(0, play(1, "L"), Rational(1, 2))));
  const auto c = parse("<B_1> <> play_2(R)");
  EXPECT_TRUE(equal(c, considers(0, diamond(play(1, "R")))));
}

TEST(Formula, PrecedenceAndAssociativity) {
  // & is left-associative, -> is right-associative and lowest.
  EXPECT_TRUE(equal(parse("RAT_1 & RAT_2 & true"), conj(conj(rat(0), rat(1)), truth())));
  EXPECT_TRUE(equal(parse("RAT_1 -> RAT_2 -> true"), implies(rat(0), implies(rat(1), truth()))));
  EXPECT_TRUE(equal(parse("!RAT_1 & RAT_2"), conj(negate(rat(0)), rat(1))));
  EXPECT_TRUE(equal(parse("B_1 RAT_1 & RAT_2"), conj(believes(0, rat(0)), rat(1))));
  EXPECT_TRUE(equal(parse("RAT_1 & RAT_2 -> true"), implies(conj(rat(0), rat(1)), truth())));
}

TEST(Formula, RenderNormalizes) {
  EXPECT_EQ(render(parse("  B_1   (RAT_2&play_2( L ))")), "B_1 (RAT_2 & play_2(L))");
  EXPECT_EQ(render(parse("((RAT_1))")), "RAT_1");
  EXPECT_EQ(render(parse("RAT_1 & (RAT_2 & true)")), "RAT_1 & (RAT_2 & true)");
  EXPECT_EQ(render(parse("(RAT_1 -> RAT_2) -> true")), "(RAT_1 -> RAT_2) -> true");
  EXPECT_EQ(render(parse("pr_2(RAT_1 -> true) > 2/4")), "pr_2(RAT_1 -> true) > 1/2");
  EXPECT_EQ(render(parse("!(RAT_1 & !RAT_2)")), "RAT_1 -> RAT_2");
}

TEST(Formula, ParseErrorsCarryPositions) {
  auto position = [](const char* text) {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.position();
    }
    return ParseError::npos;
  };
  EXPECT_EQ(position("RAT_1 &"), 7u);
  EXPECT_EQ(position("RAT_0"), 4u);
  EXPECT_EQ(position("play_1(T"), 8u);
  EXPECT_EQ(position("pr_1(true) >= 3/2"), 14u);
  EXPECT_EQ(position("RAT_1 RAT_2"), 6u);
  EXPECT_NE(position("B_1"), ParseError::npos);
}

TEST(Formula, GameScopeValidatesIdsAndEnablesSugar) {
  const auto g = harness::game_g2();
  EXPECT_THROW(parse("play_1(L)", &g), ParseError);
  EXPECT_THROW(parse("RAT_3", &g), ParseError);
  EXPECT_THROW(parse("D^1_1"), ParseError);
  EXPECT_THROW(parse("RAT"), ParseError);
  EXPECT_TRUE(equal(parse("RAT", &g), conj(rat(0), rat(1))));
  EXPECT_TRUE(equal(parse("E^1 RAT", &g), mk_E(1, rat_all(2), 2)));
  EXPECT_TRUE(equal(parse("D^2_1", &g), mk_D(g, 2, 0)));
  EXPECT_TRUE(equal(parse("C^3_2", &g), mk_C(g, 3, 1)));
}

TEST(Formula, FamiliesUnfoldAsDefined) {
  const auto g = harness::game_g2();
  EXPECT_TRUE(equal(mk_D(g, 0, 0), truth()));
  EXPECT_TRUE(equal(mk_C(g, 0, 1), truth()));
  EXPECT_TRUE(equal(mk_C(g, 1, 0), conj(rat(0), believes(0, truth()))));
  EXPECT_TRUE(equal(mk_C(g, 2, 0), conj(rat(0), believes(0, mk_C(g, 1, 1)))));
  EXPECT_TRUE(equal(mk_D(g, 1, 1), conj(rat(1), mk_Ominus(g, 1, truth()))));
  EXPECT_TRUE(equal(mk_D(g, 2, 0), conj(rat(0), mk_Ominus(g, 0, mk_D(g, 1, 1)))));

  // O-_1(phi) for two opponent strategies L, R.
  const auto phi = rat(1);
  const auto expected =
      conj(believes(0, phi), conj(implies(diamond(conj(play(1, "L"), phi)), considers(0, play(1, "L"))),
                                  implies(diamond(conj(play(1, "R"), phi)), considers(0, play(1, "R")))));
  EXPECT_TRUE(equal(mk_Ominus(g, 0, phi), expected));
  EXPECT_TRUE(equal(mk_E(2, rat_all(2), 2),
                    everyone_believes(2, everyone_believes(2, rat_all(2)))));
}

TEST(Formula, StructuralEqualityAndHash) {
  const auto a = parse("B_1 (RAT_2 & pr_1(true) >= 1/3)");
  const auto b = parse("B_1 (RAT_2 & pr_1(true) >= 2/6)");
  EXPECT_TRUE(equal(a, b));
  EXPECT_EQ(a->hash(), b->hash());
  EXPECT_FALSE(equal(a, parse("B_2 (RAT_2 & pr_1(true) >= 1/3)")));
  EXPECT_FALSE(equal(parse("pr_1(true) >= 1/3"), parse("pr_1(true) > 1/3")));
  // Deep families compare quickly thanks to sharing.
  const auto g = harness::game_g2();
  EXPECT_TRUE(equal(mk_D(g, 8, 0), FormulaFamilies(g).D(8, 0)));
}

TEST(Formula, ValidateAgainstGame) {
  const auto g = harness::game_g2();
  EXPECT_NO_THROW(validate(*parse("B_1 play_2(L)"), g));
  EXPECT_THROW(validate(*parse("B_1 play_2(Q)"), g), DomainError);
  EXPECT_THROW(validate(*parse("RAT_4"), g), DomainError);
  EXPECT_THROW(prob_at_least(0, truth(), Rational(3, 2)), DomainError);
}

}  // namespace
}  // namespace iadmit::logic
