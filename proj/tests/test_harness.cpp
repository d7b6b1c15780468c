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

namespace iadmit::harness {
namespace {

std::shared_ptr<const NormalFormGame> shared(NormalFormGame g) { return std::make_shared<const NormalFormGame>(std::move(g)); }

TEST(Harness, GeneratorIsDeterministicAndInRange) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GameGenerator gen{seed};
    const auto a = gen.generate();
    EXPECT_EQ(a, gen.generate());
    EXPECT_EQ(a.num_players(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_GE(a.num_strategies(i), 1u);
      EXPECT_LE(a.num_strategies(i), 4u);
    }
    for (const auto& p : StrategyRestriction::full(a).profiles()) {
      for (const auto& v : a.payoffs(p)) {
        EXPECT_GE(v, -3);
        EXPECT_LE(v, 3);
      }
    }
  }
  EXPECT_FALSE(GameGenerator{1}.generate() == GameGenerator{2}.generate() &&
               GameGenerator{2}.generate() == GameGenerator{3}.generate());
  EXPECT_THROW((GameGenerator{0, 1}.generate()), DomainError);
}

TEST(Harness, ReportMergeIsAssociative) {
  Report a, b, c;
  a.pass("x");
  b.fail("x", "g", {{"k", 1}});
  b.note("n");
  c.pass("y");
  c.note("n", 2);
  Report left = a;
  left.merge(b);
  left.merge(c);
  Report bc = b;
  bc.merge(c);
  Report right = a;
  right.merge(bc);
  EXPECT_EQ(left.to_json(), right.to_json());
  EXPECT_EQ(left.violation_count(), 1u);
  EXPECT_EQ(left.notes("n"), 3u);
  EXPECT_EQ(left.stats().at("x").cases, 2u);
}

TEST(Harness, FixedSuitePasses) {
  for (const auto& [name, game] : fixed_suite()) {
    const auto g = shared(game);
    const auto fix = eliminate(game, DominanceMode::kWeak, DominanceClass::kMixed, std::nullopt);
    const std::size_t k = *fix.converged_at + 2;
    EXPECT_TRUE(crosscheck_pearce(game, name).ok()) << name;
    const auto wd = crosscheck_charwd(g, k, name);
    EXPECT_TRUE(wd.ok()) << name << wd.to_json().dump();
    EXPECT_GT(wd.cases_for("charwd.equivalence"), 0u);
    EXPECT_TRUE(crosscheck_charrat(g, 5, name).ok()) << name;
    EXPECT_TRUE(crosscheck_corollary(g, name).ok()) << name;
    EXPECT_TRUE(crosscheck_convergence(g, name).ok()) << name;
  }
}

TEST(Harness, G2ConvergenceExample) {
  // At (4, 2, (T,L)) of the depth-4 structure, D^3_1 and D^4_1 both hold.
  const auto g = shared(game_g2());
  const auto mbar = build_Mbar(g, 4);
  const auto oracle = logic::DiamondOracle::theorem(g);
  const auto f = logic::conj(logic::mk_D(*g, 3, 0), logic::mk_D(*g, 4, 0));
  EXPECT_TRUE(logic::check(mbar.structure, "(4,2,(T,L))", f, oracle));
}

TEST(Harness, CharratOnMatchingPennies) {
  const auto r = crosscheck_charrat(shared(matching_pennies()), 4, "mp");
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.stats().at("charrat.ek_rat").cases, 5u * 4u);
}

TEST(Harness, LogicChecksOnAnIrrationalState) {
  // Player 1 plays B while sure of R.
  const auto g = shared(game_g1());
  ProbabilityStructure m(g, {{"x", {1, 1}, {{{0, Rational(1)}}, {{0, Rational(1)}}}}});
  const auto r = crosscheck_logic(m, logic::DiamondOracle::theorem(g), 3, "g1");
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.cases_for("logic."), 0u);
}

TEST(Harness, VerifyIsDeterministicAcrossJobCounts) {
  VerifyOptions o;
  o.seed_begin = 10;
  o.seed_end = 29;
  o.include_fixed_suite = false;
  const auto one = verify(o).to_json().dump();
  o.jobs = 3;
  EXPECT_EQ(verify(o).to_json().dump(), one);
}

}  // namespace
}  // namespace iadmit::harness
