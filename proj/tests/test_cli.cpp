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

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(IADMIT_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string game(const char* name) { return std::string(IADMIT_EXAMPLES) + "/" + name + ".json"; }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "iadmit_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TEST(Cli, EliminateTableForG2) {
  const auto r = run("eliminate --game " + game("g2") + " --criterion weak --class mixed --rounds fix --format table");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("1  {T}    {L,R}"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("2  {T}    {L}"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("converged_at = 2"), std::string::npos) << r.out;
}

TEST(Cli, EliminateJson) {
  const auto r = run("eliminate --game " + game("prisoners_dilemma") + " --criterion strong --class pure");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("converged_at"), 1);
  EXPECT_EQ(j.at("rounds")[1].at("surviving"), nlohmann::json::parse(R"([["D"],["D"]])"));
}

TEST(Cli, ParseEchoesNormalizedFormula) {
  const auto r = run("parse \"B_1 (RAT_2 & play_2(L))\" --format table");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "B_1 (RAT_2 & play_2(L))\n");
  const auto bad = run("parse \"B_1 (RAT_2 &\"");
  EXPECT_EQ(bad.status, 2);
}

TEST(Cli, FormulaFromFile) {
  const auto path = scratch("f.txt");
  std::ofstream(path) << "play_1(T) & RAT_2\n";
  const auto r = run("parse @" + path.string() + " --game " + game("g2") + " --format table");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "play_1(T) & RAT_2\n");
}

TEST(Cli, BeliefCertificateOrNone) {
  const auto none = run("belief --game " + game("g1") + " --player 1 --strategy B --support full --format table");
  EXPECT_EQ(none.status, 0);
  EXPECT_EQ(none.out, "none\n");
  const auto some = run("belief --game " + game("g1") + " --player 1 --strategy B --support subset");
  ASSERT_EQ(some.status, 0);
  const auto j = nlohmann::json::parse(some.out);
  EXPECT_EQ(j.at("belief"), nlohmann::json::parse(R"j({"(L)": "1"})j"));
}

TEST(Cli, WitnessThenCheck) {
  const auto path = scratch("mbar2.json");
  ASSERT_EQ(run("witness --game " + game("g2") + " --kind mbar --k 2 --out " + path.string()).status, 0);
  const auto r = run("check --structure " + path.string() +
                     " --state \"(2,1,(T,L))\" --formula \"D^2_2\" --oracle theorem --format table");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "true\n");
  const auto rejected = run("check --structure " + path.string() +
                            " --state \"(2,1,(T,L))\" --formula \"D^2_2\" --oracle reject");
  EXPECT_EQ(rejected.status, 1);
  const auto family = run("check --structure " + path.string() +
                          " --state \"(0,1,(B,R))\" --formula \"<> play_1(B)\" --oracle family --format table");
  EXPECT_EQ(family.status, 0);
  EXPECT_EQ(family.out, "true\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("belief --game " + game("g1") + " --player 1 --strategy Z").status, 1);
  EXPECT_EQ(run("eliminate --game /nonexistent/game.json").status, 2);
  EXPECT_EQ(run("eliminate --game " + game("g1") + " --criterion sideways").status, 2);
  EXPECT_EQ(run("eliminate --game " + game("g1") + " --rounds x").status, 2);
  EXPECT_EQ(run("verify --seeds 5..1").status, 2);
  EXPECT_EQ(run("").status, 2);
  const auto path = scratch("m.json");
  ASSERT_EQ(run("witness --game " + game("g2") + " --kind rat --out " + path.string()).status, 0);
  EXPECT_EQ(run("check --structure " + path.string() + " --state nowhere --formula true").status, 1);
  EXPECT_EQ(run("witness --game " + game("g2") + " --kind minfty --player 1 --strategy B").status, 1);
}

TEST(Cli, VerifyIsByteIdentical) {
  const auto a = run("verify --seeds 0..9");
  const auto b = run("verify --seeds 0..9");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(nlohmann::json::parse(a.out).at("ok").get<bool>());
}

}  // namespace
