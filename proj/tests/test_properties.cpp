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

// Randomized properties with hand-rolled generators. Every case is derived
// from a printed seed so failures replay.

#include <gtest/gtest.h>

#include "iadmit/iadmit.hpp"
#include "oracles.hpp"

namespace iadmit {
namespace {

using logic::FormulaPtr;
using oracle::Draw;

FormulaPtr random_formula(Draw& d, const NormalFormGame& g, int depth) {
  const std::size_t n = g.num_players();
  auto player = [&] { return static_cast<std::size_t>(d.between(0, static_cast<long>(n) - 1)); };
  if (depth == 0 || d.between(0, 4) == 0) {
    switch (d.between(0, 2)) {
      case 0:
        return logic::truth();
      case 1:
        return logic::rat(player());
      default: {
        const auto i = player();
        const auto s = static_cast<std::size_t>(d.between(0, static_cast<long>(g.num_strategies(i)) - 1));
        return logic::play(i, g.strategy_name(i, s));
      }
    }
  }
  switch (d.between(0, 6)) {
    case 0:
      return logic::negate(random_formula(d, g, depth - 1));
    case 1:
      return logic::conj(random_formula(d, g, depth - 1), random_formula(d, g, depth - 1));
    case 2:
      return logic::believes(player(), random_formula(d, g, depth - 1));
    case 3:
      return logic::considers(player(), random_formula(d, g, depth - 1));
    case 4:
      return logic::implies(random_formula(d, g, depth - 1), random_formula(d, g, depth - 1));
    case 5: {
      const long q = d.between(1, 6);
      const Rational alpha = canonical(Rational(d.between(0, q), q));
      return d.coin() ? logic::prob_at_least(player(), random_formula(d, g, depth - 1), alpha)
                      : logic::prob_greater(player(), random_formula(d, g, depth - 1), alpha);
    }
    default:
      return logic::diamond(random_formula(d, g, depth - 1));
  }
}

ProbabilityStructure random_structure(Draw& d, std::shared_ptr<const NormalFormGame> g) {
  const auto states = static_cast<std::size_t>(d.between(1, 5));
  std::vector<State> out;
  for (std::size_t w = 0; w < states; ++w) {
    State st{"s" + std::to_string(w), {}, {}};
    for (std::size_t i = 0; i < g->num_players(); ++i) {
      st.profile.push_back(static_cast<std::size_t>(d.between(0, static_cast<long>(g->num_strategies(i)) - 1)));
    }
    for (std::size_t i = 0; i < g->num_players(); ++i) {
      std::vector<long> raw(states);
      long total = 0;
      for (auto& r : raw) total += (r = d.between(0, 3));
      if (total == 0) raw[static_cast<std::size_t>(d.between(0, static_cast<long>(states) - 1))] = total = 1;
      Distribution dist;
      for (std::size_t t = 0; t < states; ++t) {
        if (raw[t]) dist.emplace_back(t, canonical(Rational(raw[t], total)));
      }
      st.beliefs.push_back(dist);
    }
    out.push_back(st);
  }
  return ProbabilityStructure(std::move(g), out);
}

TEST(Property, RenderParseRoundTrip) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    Draw d(seed);
    const auto g = oracle::random_game(seed, 2 + seed % 2, 3);
    const auto f = random_formula(d, g, 5);
    const auto text = logic::render(f);
    const auto back = logic::parse(text, &g);
    EXPECT_TRUE(logic::equal(f, back)) << "seed " << seed << ": " << text;
    EXPECT_EQ(logic::render(back), text) << "seed " << seed;
  }
}

TEST(Property, SimplexMatchesVertexEnumeration) {
  using namespace lp;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Draw d(seed);
    const auto n = static_cast<std::size_t>(d.between(1, 3));
    LinearProgram p(n, d.coin() ? Sense::kMaximize : Sense::kMinimize);
    for (auto& c : p.objective) c = d.between(-4, 4);
    for (std::size_t j = 0; j < n; ++j) {
      p.lower_bounds[j] = d.between(-2, 0);
      p.upper_bounds[j] = Rational(d.between(1, 5));
    }
    const auto rows = d.between(0, 4);
    for (long r = 0; r < rows; ++r) {
      std::vector<Rational> a(n);
      for (auto& x : a) x = d.between(-3, 3);
      const auto rel = static_cast<Relation>(d.between(0, 2));
      p.add(a, rel, canonical(Rational(d.between(-4, 6), d.between(1, 2))));
    }
    const auto expected = oracle::vertex_optimum(p);
    const auto got = solve(p);
    if (!expected.feasible) {
      EXPECT_EQ(got.status, Status::kInfeasible) << "seed " << seed;
      continue;
    }
    ASSERT_EQ(got.status, Status::kOptimal) << "seed " << seed;
    EXPECT_EQ(got.value, expected.value) << "seed " << seed;
    EXPECT_TRUE(p.satisfied_by(got.point)) << "seed " << seed;
  }
}

TEST(Property, ModalDualitiesOnRandomStructures) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Draw d(seed);
    auto g = std::make_shared<const NormalFormGame>(oracle::random_game(seed, 2, 3));
    const auto m = random_structure(d, g);
    const auto oracle = logic::DiamondOracle::witness_family({m});
    logic::ModelChecker c(m, oracle);
    for (int t = 0; t < 6; ++t) {
      const auto phi = random_formula(d, *g, 3);
      const auto psi = random_formula(d, *g, 2);
      for (std::size_t i = 0; i < 2; ++i) {
        using namespace logic;
        const auto& poss = c.extension(considers(i, phi));
        const auto& dual = c.extension(negate(believes(i, negate(phi))));
        const auto& b_and = c.extension(believes(i, conj(phi, psi)));
        const auto& and_b = c.extension(conj(believes(i, phi), believes(i, psi)));
        const auto& pr1 = c.extension(prob_at_least(i, phi, Rational(1)));
        const auto& b = c.extension(believes(i, phi));
        const auto& pr0 = c.extension(prob_greater(i, phi, Rational(0)));
        for (std::size_t w = 0; w < m.size(); ++w) {
          EXPECT_EQ(poss[w], dual[w]) << seed;
          EXPECT_EQ(b_and[w], and_b[w]) << seed;
          EXPECT_EQ(pr1[w], b[w]) << seed;
          EXPECT_EQ(pr0[w], poss[w]) << seed;
        }
      }
    }
  }
}

TEST(Property, RationalityMatchesDirectExpectation) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Draw d(seed);
    auto g = std::make_shared<const NormalFormGame>(oracle::random_game(seed, 2, 4));
    const auto m = random_structure(d, g);
    const auto oracle = logic::DiamondOracle::reject();
    logic::ModelChecker c(m, oracle);
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& ext = c.extension(logic::rat(i));
      for (std::size_t w = 0; w < m.size(); ++w) {
        // Expected payoff of each own strategy against the states believed.
        std::vector<Rational> eu(g->num_strategies(i), Rational(0));
        for (const auto& [t, p] : m.belief(w, i)) {
          for (std::size_t s = 0; s < eu.size(); ++s) {
            auto profile = m.state(t).profile;
            profile[i] = s;
            eu[s] += p * g->payoff(i, profile);
          }
        }
        const bool best = std::all_of(eu.begin(), eu.end(),
                                      [&](const Rational& v) { return v <= eu[m.state(w).profile[i]]; });
        EXPECT_EQ(ext[w] != 0, best) << "seed " << seed << " state " << w;
      }
    }
  }
}

TEST(Property, JsonRoundTrips) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Draw d(seed);
    auto g = std::make_shared<const NormalFormGame>(oracle::random_game(seed, 2 + seed % 2, 3));
    EXPECT_EQ(game_from_json(nlohmann::json::parse(game_to_json(*g).dump())), *g);
    const auto m = random_structure(d, g);
    const auto j = structure_to_json(m);
    EXPECT_EQ(structure_to_json(structure_from_json(nlohmann::json::parse(j.dump()))), j);
  }
}

TEST(Property, BeliefCertificatesAreBestResponses) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const auto g = oracle::random_game(seed, 2 + seed % 2, 3);
    const auto full = StrategyRestriction::full(g);
    for (std::size_t i = 0; i < g.num_players(); ++i) {
      for (std::size_t s = 0; s < g.num_strategies(i); ++s) {
        for (auto mode : {SupportMode::kSubset, SupportMode::kFull}) {
          const auto cert = find_justifying_belief(g, i, s, full, mode);
          if (!cert) continue;
          Rational total = 0;
          std::vector<Rational> eu(g.num_strategies(i), Rational(0));
          for (const auto& [opp, w] : cert->belief.weights) {
            EXPECT_GT(w, 0);
            total += w;
            for (std::size_t t = 0; t < eu.size(); ++t) eu[t] += w * g.payoff(i, with_own(i, t, opp));
          }
          EXPECT_EQ(total, 1);
          for (const auto& v : eu) EXPECT_LE(v, eu[s]) << seed;
          if (mode == SupportMode::kFull) {
            EXPECT_EQ(cert->belief.weights.size(), full.opponent_profiles(i).size()) << seed;
          }
        }
      }
    }
  }
}

TEST(Property, ThreePlayerTheoremChecks) {
  // The harness claims on a few three-player games (not part of the two-player
  // acceptance runs).
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    auto g = std::make_shared<const NormalFormGame>(harness::GameGenerator{seed, 3, 1, 2}.generate());
    const auto label = "3p seed " + std::to_string(seed);
    EXPECT_TRUE(harness::crosscheck_pearce(*g, label).ok()) << label;
    const auto wd = harness::crosscheck_charwd(g, 2, label);
    EXPECT_TRUE(wd.ok()) << wd.to_json().dump();
    EXPECT_TRUE(harness::crosscheck_charrat(g, 3, label).ok()) << label;
  }
}

}  // namespace
}  // namespace iadmit
