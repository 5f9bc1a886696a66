// Copyright 2026 The Powersys Authors
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

#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "powersys/cli.hpp"

namespace powersys::cli {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(POWERSYS_DATA_DIR) + "/" + name; }

// Parses json-lines output into rows of one table.
std::vector<nlohmann::json> rows(const std::string& text, const std::string& table) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto obj = nlohmann::json::parse(line);
    if (obj["table"] == table) out.push_back(std::move(obj));
  }
  return out;
}

double metric(const std::string& text, const std::string& table, const std::string& name) {
  for (const auto& row : rows(text, table)) {
    if (row["metric"] == name) return row["value"].get<double>();
  }
  ADD_FAILURE() << "no metric " << name;
  return 0.0;
}

TEST(Cli, AnalyzeMutualPair) {
  const auto r = run({"analyze", data("fig4_mutual_half.system.json"), "--format", "json-lines"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(metric(r.out, "indices", "freedom"), 1.0 / 3.0, 1e-11);
  EXPECT_NEAR(metric(r.out, "indices", "mutualism"), 2.0 / 3.0, 1e-11);
  EXPECT_EQ(metric(r.out, "indices", "hierarchy"), 0.0);
  const auto nodes = rows(r.out, "nodes");
  ASSERT_EQ(nodes.size(), 2u);
  EXPECT_NEAR(nodes[0]["power"].get<double>(), 1.0, 1e-11);
}

TEST(Cli, AnalyzeTextIsHumanPrecision) {
  const auto r = run({"analyze", data("fig4_mutual_half.system.json")});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("mutualism    0.6667"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("class        mutual"), std::string::npos) << r.out;
}

TEST(Cli, PdThreshold) {
  const auto r = run({"pd", "--p", "-1", "--q", "-6", "--r", "0", "--s", "-5", "--threshold"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("threshold           0.3333"), std::string::npos) << r.out;
  const auto csv = run({"pd", "--p", "-1", "--q", "-6", "--r", "0", "--s", "-5", "--threshold",
                        "--format", "csv"});
  EXPECT_NE(csv.out.find("threshold,0.333333333333"), std::string::npos) << csv.out;
}

TEST(Cli, PdShiftAndGame) {
  const auto shift = run({"pd", "--p=-1", "--q=-6", "--r=0", "--s=-5", "--shift", "cd",
                          "--format", "json-lines"});
  ASSERT_EQ(shift.code, kExitOk) << shift.err;
  EXPECT_NEAR(metric(shift.out, "hierarchy_shift", "colonization"), 1.0 / 6.0, 1e-6);
  const auto game = run({"pd", "--p", "-1", "--q", "-6", "--r", "0", "--s", "-5", "--format",
                         "json-lines"});
  const auto eq = rows(game.out, "equilibria");
  ASSERT_EQ(eq.size(), 1u);
  EXPECT_EQ(eq[0]["Player 1"], "Defects");
}

TEST(Cli, PdOrderingViolationIsValidationFailure) {
  const auto r = run({"pd", "--p", "1", "--q", "-6", "--r", "0", "--s", "-5", "--threshold"});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("q < s < p < r"), std::string::npos) << r.err;
}

TEST(Cli, TransformAndNashReproduceTable2) {
  const auto t = run({"transform", data("pd_table1.game.json"), data("pd_table2.system.json"),
                      "--format", "json-lines"});
  ASSERT_EQ(t.code, kExitOk) << t.err;
  const auto cells = rows(t.out, "compound");
  ASSERT_EQ(cells.size(), 4u);
  EXPECT_EQ(cells[1]["u[Player 1]"].get<double>(), -3.0);
  EXPECT_EQ(cells[2]["u[Player 1]"].get<double>(), -3.0);

  const auto n = run({"nash", data("pd_table1_1.game.json"), "--format", "json-lines"});
  ASSERT_EQ(n.code, kExitOk) << n.err;
  EXPECT_EQ(rows(n.out, "equilibria").size(), 1u);
}

TEST(Cli, MultiplicativeRejectsNegativePayoffs) {
  const auto r = run({"transform", data("pd_table1.game.json"), data("fig4_mutual_half.system.json"),
                      "--mode", "multiplicative"});
  EXPECT_EQ(r.code, kExitValidation);
}

TEST(Cli, EcologyFigures) {
  for (const char* f : {"fig5a_single_master.system.json", "fig5b_all_masters.system.json"}) {
    const auto r = run({"ecology", "--cost", "3", "--revenue", "2", "--system", data(f), "--format",
                        "json-lines"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(metric(r.out, "outcome", "trees"), 1.0) << f;
  }
  const auto pair = run({"ecology", "--cost", "3", "--revenue", "2", "--system",
                         data("fig6_mutual_pair.system.json"), "--format", "json-lines"});
  EXPECT_EQ(metric(pair.out, "outcome", "trees"), 2.0);
  const auto free = run({"ecology", "--n", "4", "--cost", "3", "--revenue", "2", "--format",
                         "json-lines"});
  EXPECT_EQ(metric(free.out, "outcome", "trees"), 0.0);
  EXPECT_EQ(run({"ecology", "--cost", "3", "--revenue", "2"}).code, kExitUsage);
}

TEST(Cli, LandownerFigures) {
  auto wage = [](const std::string& file) {
    const auto r = run({"landowner", data(file), "--landowner", "0", "--format", "json-lines"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    return metric(r.out, "equilibrium", "wage");
  };
  EXPECT_NEAR(wage("fig11_free.system.json"), 4.8, 1e-9);
  EXPECT_GT(wage("fig12_partial_union.system.json"), 4.8);
  EXPECT_GT(wage("fig13_full_union.system.json"), 10.0);
  EXPECT_NEAR(wage("fig14_one_submits.system.json"), 4.0, 1e-7);
  EXPECT_NEAR(wage("fig15_all_submit.system.json"), 1.6, 1e-7);
  EXPECT_NEAR(wage("fig16_counterweight.system.json"), 4.8, 1e-6);
  EXPECT_EQ(run({"landowner", data("fig11_free.system.json"), "--landowner", "9"}).code,
            kExitValidation);
}

TEST(Cli, DotAndSpectraAreDeterministic) {
  const auto a = run({"dot", data("fig1_chain.system.json")});
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, run({"dot", data("fig1_chain.system.json")}).out);
  EXPECT_EQ(a.out.rfind("digraph", 0), 0u);
  const auto s = run({"spectra", data("fig1_chain.system.json")});
  EXPECT_NE(s.out.find("0,2,0.25\n"), std::string::npos) << s.out;
}

TEST(Cli, UsageErrors) {
  const auto unknown = run({"analyze", data("fig11_free.system.json"), "--bogus"});
  EXPECT_EQ(unknown.code, kExitUsage);
  EXPECT_NE(unknown.err.find("--format"), std::string::npos) << "usage lists valid flags";
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"pd", "--p", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"analyze", "x", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(run({"pd", "--p", "-1", "--q", "-6", "--r", "0", "--s", "-5", "--shift", "cc"}).code,
            kExitUsage);
}

TEST(Cli, BadFilesAreValidationFailures) {
  EXPECT_EQ(run({"analyze", "/nonexistent.json"}).code, kExitValidation);
  const auto r = run({"analyze", data("pd_table1.game.json")});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("$"), std::string::npos) << r.err;
}

TEST(Cli, HelpExitsCleanly) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("landowner"), std::string::npos);
}

}  // namespace
}  // namespace powersys::cli
