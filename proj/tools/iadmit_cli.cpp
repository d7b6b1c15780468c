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

// Command-line front end. Exit status: 0 ok, 1 domain error, 2 input parse
// error, 3 verification violations.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "iadmit/iadmit.hpp"

namespace {

using namespace iadmit;
using nlohmann::json;

enum class Format { kJson, kTable };

struct Options {
  std::string format = "json";
  std::string game;
  // eliminate
  std::string criterion = "weak";
  std::string cls = "mixed";
  std::string rounds = "fix";
  // belief
  std::string player;
  std::string strategy;
  std::string support = "full";
  // check
  std::string structure;
  std::string state;
  std::string formula;
  std::string oracle = "theorem";
  std::vector<std::string> family;
  // witness
  std::string kind = "mbar";
  std::optional<std::size_t> k;
  std::string out;
  // verify
  std::string seeds = "0..199";
  std::size_t players = 2;
  std::size_t min_strategies = 1;
  std::size_t max_strategies = 4;
  int payoff_min = -3;
  int payoff_max = 3;
  std::size_t k_max = 3;
  unsigned jobs = 1;
  bool no_fixed = false;
};

Format format_of(const Options& o) { return o.format == "table" ? Format::kTable : Format::kJson; }

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string read_formula_text(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw ParseError("cannot read formula file '" + arg.substr(1) + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DominanceMode parse_mode(const std::string& s) { return s == "strong" ? DominanceMode::kStrong : DominanceMode::kWeak; }
DominanceClass parse_class(const std::string& s) { return s == "pure" ? DominanceClass::kPure : DominanceClass::kMixed; }

std::optional<std::size_t> parse_rounds(const std::string& s) {
  if (s == "fix") return std::nullopt;
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty() || s[0] == '-') throw ParseError("--rounds expects a count or 'fix', got '" + s + "'");
  return static_cast<std::size_t>(v);
}

std::string set_label(const NormalFormGame& g, std::size_t i, const std::vector<std::size_t>& set) {
  std::string out = "{";
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (k) out += ",";
    out += g.strategy_name(i, set[k]);
  }
  return out + "}";
}

void print_trace_table(const NormalFormGame& g, const EliminationTrace& trace) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"k"};
  for (std::size_t i = 0; i < g.num_players(); ++i) header.push_back("X_" + std::to_string(i + 1));
  header.push_back("removed next");
  rows.push_back(header);
  for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
    std::vector<std::string> row{std::to_string(k)};
    for (std::size_t i = 0; i < g.num_players(); ++i) row.push_back(set_label(g, i, trace.rounds[k][i]));
    std::string removed;
    if (k < trace.removals.size()) {
      for (const auto& r : trace.removals[k]) {
        if (!removed.empty()) removed += " ";
        removed += std::to_string(r.player + 1) + ":" + g.strategy_name(r.player, r.strategy);
      }
    }
    row.push_back(removed.empty() ? "-" : removed);
    rows.push_back(row);
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::string cell = row[c];
      if (c + 1 < row.size()) cell.resize(width[c] + 2, ' ');
      line += cell;
    }
    std::cout << line << "\n";
  }
  std::cout << "converged_at = " << (trace.converged_at ? std::to_string(*trace.converged_at) : "not reached")
            << "\n";
}

int cmd_eliminate(const Options& o) {
  const auto game = load_game(o.game);
  const auto trace = eliminate(game, parse_mode(o.criterion), parse_class(o.cls), parse_rounds(o.rounds));
  if (format_of(o) == Format::kTable) {
    print_trace_table(game, trace);
  } else {
    emit_json(trace_to_json(game, trace));
  }
  return 0;
}

int cmd_rationalizable(const Options& o) {
  const auto game = load_game(o.game);
  const auto sets = rationalizable_sets(game);
  if (format_of(o) == Format::kTable) {
    for (std::size_t i = 0; i < game.num_players(); ++i) {
      std::cout << "X_" << i + 1 << " = " << set_label(game, i, sets.sets[i]) << "\n";
      for (const auto& [s, b] : sets.beliefs[i]) {
        std::cout << "  " << game.strategy_name(i, s) << ":";
        for (const auto& [opp, w] : b.weights) std::cout << " " << game.opponent_label(i, opp) << "=" << to_string(w);
        std::cout << "\n";
      }
    }
    return 0;
  }
  json beliefs = json::array();
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    json per = json::object();
    for (const auto& [s, b] : sets.beliefs[i]) per[game.strategy_name(i, s)] = belief_to_json(game, b);
    beliefs.push_back(per);
  }
  emit_json({{"sets", restriction_to_json(game, sets.sets)}, {"beliefs", beliefs}});
  return 0;
}

int cmd_belief(const Options& o) {
  const auto game = load_game(o.game);
  const std::size_t i = game.player_index(o.player);
  const std::size_t s = game.strategy_index(i, o.strategy);
  std::optional<std::size_t> depth = o.k;
  const auto restriction = depth ? eliminate(game, DominanceMode::kWeak, DominanceClass::kMixed, depth).at(*depth)
                                 : StrategyRestriction::full(game);
  const auto mode = o.support == "subset" ? SupportMode::kSubset : SupportMode::kFull;
  const auto cert = find_justifying_belief(game, i, s, restriction, mode);
  if (format_of(o) == Format::kTable) {
    if (!cert) {
      std::cout << "none\n";
      return 0;
    }
    for (const auto& [opp, w] : cert->belief.weights) {
      std::cout << game.opponent_label(i, opp) << "  " << to_string(w) << "\n";
    }
    return 0;
  }
  emit_json(cert ? certificate_to_json(game, *cert) : json("none"));
  return 0;
}

logic::DiamondOracle make_oracle(const Options& o, const ProbabilityStructure& m) {
  if (o.oracle == "reject") return logic::DiamondOracle::reject();
  if (o.oracle == "family") {
    std::vector<ProbabilityStructure> family;
    if (o.family.empty()) family.push_back(m);
    for (const auto& path : o.family) family.push_back(load_structure(path));
    return logic::DiamondOracle::witness_family(std::move(family));
  }
  return logic::DiamondOracle::theorem(m.game_ptr());
}

int cmd_check(const Options& o) {
  const auto m = load_structure(o.structure);
  const auto f = logic::parse(read_formula_text(o.formula), &m.game());
  const auto oracle = make_oracle(o, m);
  const bool value = logic::check(m, o.state, f, oracle);
  if (format_of(o) == Format::kTable) {
    std::cout << (value ? "true" : "false") << "\n";
  } else {
    emit_json({{"state", o.state}, {"formula", logic::render(*f)}, {"value", value}});
  }
  return 0;
}

int cmd_witness(const Options& o) {
  auto game = std::make_shared<const NormalFormGame>(load_game(o.game));
  json j;
  if (o.kind == "rat") {
    const auto sets = rationalizable_sets(*game);
    j = structure_to_json(build_rationalizability_structure(game, sets.sets, sets.beliefs));
  } else {
    const auto fix = eliminate(*game, DominanceMode::kWeak, DominanceClass::kMixed, std::nullopt);
    const std::size_t k = o.k.value_or(*fix.converged_at + 2);
    if (o.kind == "mbar") {
      j = structure_to_json(build_Mbar(game, k).structure);
    } else {
      if (o.player.empty() || o.strategy.empty()) throw DomainError("--kind minfty needs --player and --strategy");
      const std::size_t i = game->player_index(o.player);
      const auto minf = build_Minfty(game, i, game->strategy_index(i, o.strategy), k);
      j = structure_to_json(minf.structure);
      j["designated"] = minf.structure.state(minf.designated).id;
    }
  }
  if (o.out.empty()) {
    emit_json(j);
  } else {
    std::ofstream out(o.out);
    if (!out) throw DomainError("cannot write '" + o.out + "'");
    out << j.dump(2) << "\n";
  }
  return 0;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    std::size_t pos = 0;
    if (dots == std::string::npos) {
      const auto v = std::stoull(s, &pos);
      if (pos == s.size()) return {v, v};
    } else {
      const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
      std::size_t pa = 0, pb = 0;
      const auto va = std::stoull(a, &pa);
      const auto vb = std::stoull(b, &pb);
      if (pa == a.size() && pb == b.size() && va <= vb) return {va, vb};
    }
  } catch (const std::exception&) {
  }
  throw ParseError("--seeds expects A..B with A <= B, got '" + s + "'");
}

int cmd_verify(const Options& o) {
  harness::VerifyOptions v;
  std::tie(v.seed_begin, v.seed_end) = parse_seed_range(o.seeds);
  v.players = o.players;
  v.min_strategies = o.min_strategies;
  v.max_strategies = o.max_strategies;
  v.payoff_min = o.payoff_min;
  v.payoff_max = o.payoff_max;
  v.random_k_max = o.k_max;
  v.include_fixed_suite = !o.no_fixed;
  v.jobs = o.jobs;
  const auto report = harness::verify(v);
  if (format_of(o) == Format::kTable) {
    for (const auto& [name, st] : report.stats()) {
      std::cout << std::left << std::setw(32) << name << st.cases << " cases, " << st.violations
                << " violations\n";
    }
  } else {
    json j = report.to_json();
    j["seeds"] = o.seeds;
    emit_json(j);
  }
  return report.ok() ? 0 : 3;
}

int cmd_parse(const Options& o) {
  std::optional<NormalFormGame> game;
  if (!o.game.empty()) game = load_game(o.game);
  const auto f = logic::parse(read_formula_text(o.formula), game ? &*game : nullptr);
  if (format_of(o) == Format::kTable) {
    std::cout << logic::render(*f) << "\n";
  } else {
    emit_json({{"formula", logic::render(*f)}, {"height", f->height()}});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterated admissibility toolkit"};
  app.require_subcommand(1);
  Options o;
  auto add_format = [&o](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  };

  auto* elim = app.add_subcommand("eliminate", "Iterated elimination trace");
  elim->add_option("--game", o.game, "Game JSON file")->required();
  elim->add_option("--criterion", o.criterion)->check(CLI::IsMember({"weak", "strong"}));
  elim->add_option("--class", o.cls)->check(CLI::IsMember({"pure", "mixed"}));
  elim->add_option("--rounds", o.rounds, "Round count or 'fix'");
  add_format(elim);

  auto* rat = app.add_subcommand("rationalizable", "Strong-elimination fixpoint with justifying beliefs");
  rat->add_option("--game", o.game)->required();
  add_format(rat);

  auto* bel = app.add_subcommand("belief", "Belief under which a strategy is a best response");
  bel->add_option("--game", o.game)->required();
  bel->add_option("--player", o.player, "Player name or 1-based index")->required();
  bel->add_option("--strategy", o.strategy)->required();
  bel->add_option("--support", o.support)->check(CLI::IsMember({"full", "subset"}));
  bel->add_option("--k", o.k, "Restrict to the survivors of k weak rounds");
  add_format(bel);

  auto* chk = app.add_subcommand("check", "Model-check a formula at a state");
  chk->add_option("--structure", o.structure)->required();
  chk->add_option("--state", o.state)->required();
  chk->add_option("--formula", o.formula, "Formula text or @file")->required();
  chk->add_option("--oracle", o.oracle)->check(CLI::IsMember({"theorem", "family", "reject"}));
  chk->add_option("--family", o.family, "Structure files searched by the family oracle");
  add_format(chk);

  auto* wit = app.add_subcommand("witness", "Write a witness structure as JSON");
  wit->add_option("--game", o.game)->required();
  wit->add_option("--kind", o.kind)->check(CLI::IsMember({"mbar", "minfty", "rat"}));
  wit->add_option("--k", o.k, "Depth (default converged_at + 2)");
  wit->add_option("--player", o.player);
  wit->add_option("--strategy", o.strategy);
  wit->add_option("--out", o.out, "Output file (default stdout)");

  auto* ver = app.add_subcommand("verify", "Run the cross-check harness");
  ver->add_option("--seeds", o.seeds, "Seed range A..B");
  ver->add_option("--players", o.players)->check(CLI::Range(2, 6));
  ver->add_option("--min-strategies", o.min_strategies)->check(CLI::Range(1, 8));
  ver->add_option("--max-strategies", o.max_strategies)->check(CLI::Range(1, 8));
  ver->add_option("--payoff-min", o.payoff_min);
  ver->add_option("--payoff-max", o.payoff_max);
  ver->add_option("--k-max", o.k_max, "Depth for random games");
  ver->add_option("--jobs", o.jobs)->check(CLI::Range(1, 256));
  ver->add_flag("--no-fixed", o.no_fixed, "Skip the named example games");
  add_format(ver);

  auto* par = app.add_subcommand("parse", "Parse and echo a normalized formula");
  par->add_option("formula", o.formula, "Formula text or @file")->required();
  par->add_option("--game", o.game, "Game for sugar and name validation");
  add_format(par);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*elim) return cmd_eliminate(o);
    if (*rat) return cmd_rationalizable(o);
    if (*bel) return cmd_belief(o);
    if (*chk) return cmd_check(o);
    if (*wit) return cmd_witness(o);
    if (*ver) return cmd_verify(o);
    if (*par) return cmd_parse(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
