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

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "oracles.hpp"
#include "powersys/errors.hpp"
#include "powersys/io.hpp"

namespace powersys::io {
namespace {

using Eigen::MatrixXd;

std::string syntax_location(std::string_view text) {
  try {
    parse_system(text);
  } catch (const SyntaxError& e) {
    return e.location();
  }
  return "";
}

TEST(ParseSystem, SingleEdge) {
  const auto system =
      parse_system(R"({"version":1,"nodes":["0","1"],"edges":[{"from":"0","to":"1","weight":0.5}]})");
  EXPECT_EQ(system.labels(), (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(system.weight(0, 1), 0.5);
  EXPECT_EQ(system.weight(1, 0), 0.0);
  EXPECT_NEAR(total_power(colonize(system), 0), 1.5, 1e-15);
}

TEST(ParseSystem, EdgesAreOptional) {
  EXPECT_EQ(parse_system(R"({"version":1,"nodes":["a"]})").size(), 1);
}

TEST(ParseSystem, SyntaxErrorsCarryLocation) {
  EXPECT_EQ(syntax_location(R"({"version":1,"nodes":["a","a"]})"), "$.nodes[1]");
  EXPECT_EQ(syntax_location(R"({"version":2,"nodes":["a"]})"), "$.version");
  EXPECT_EQ(syntax_location(R"({"nodes":["a"]})"), "$");
  EXPECT_EQ(syntax_location(R"({"version":1,"nodes":["a","b"],"edges":[{"from":"a","to":"c","weight":0.1}]})"),
            "$.edges[0].to");
  EXPECT_EQ(syntax_location(R"({"version":1,"nodes":["a","b"],"edges":[{"from":"a","to":"b","weight":"x"}]})"),
            "$.edges[0].weight");
  EXPECT_EQ(syntax_location(
                R"({"version":1,"nodes":["a","b"],"edges":[{"from":"a","to":"b","weight":0.1},{"from":"a","to":"b","weight":0.2}]})"),
            "$.edges[1]");
  EXPECT_EQ(syntax_location("{\"version\":1,\n\"nodes\":[\"a\",\n]}"), "line 3");
}

TEST(ParseSystem, AxiomViolationsAreValidationErrors) {
  EXPECT_THROW(
      parse_system(R"({"version":1,"nodes":["a","b","c"],"edges":[{"from":"a","to":"c","weight":0.7},{"from":"b","to":"c","weight":0.4}]})"),
      ValidationError);
  EXPECT_THROW(parse_system(R"({"version":1,"nodes":["a"],"edges":[{"from":"a","to":"a","weight":0.1}]})"),
               ValidationError);
}

TEST(SerializeSystem, CanonicalFormRoundTrips) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + trial % 8;
    MatrixXd f = testing::random_adjacency(rng, n, 0.5, 0.95);
    std::vector<std::string> labels;
    for (Index i = 0; i < n; ++i) labels.push_back("n" + std::to_string((i * 7) % 11) + "_" + std::to_string(i));
    const PowerSystem<double> system(labels, f);
    const std::string canonical = serialize_system(system);
    const auto back = parse_system(canonical);
    EXPECT_EQ(back.labels(), labels);
    EXPECT_EQ(back.adjacency(), f) << "weights must survive bit-for-bit";
    EXPECT_EQ(serialize_system(back), canonical);

    // A shuffled document with the same content has the same canonical form.
    auto doc = nlohmann::json::parse(canonical);
    auto& edges = doc["edges"];
    std::shuffle(edges.begin(), edges.end(), rng);
    EXPECT_EQ(serialize_system(parse_system(doc.dump(2))), canonical);
  }
}

TEST(Game, RoundTripWithPassivePlayer) {
  std::vector<Player> ps{{"P1", {"C", "D"}}, {"L", {}}, {"P2", {"x", "y", "z"}}};
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  MatrixXd table(6, 3);
  for (Index i = 0; i < table.size(); ++i) table(i) = u(rng);
  const NormalFormGame game(ps, table);
  const std::string text = serialize_game(game);
  const auto back = parse_game(text);
  ASSERT_EQ(back.player_count(), 3u);
  EXPECT_TRUE(back.players()[1].passive());
  EXPECT_EQ(back.players()[2].strategies, ps[2].strategies);
  EXPECT_EQ(back.payoff_table(), table);
  EXPECT_EQ(serialize_game(back), text);
}

TEST(Game, ParsesDocumentedExample) {
  const auto game = parse_game(R"({"version":1,
    "players":[{"name":"P1"},{"name":"L","passive":true}],
    "strategies":{"P1":["C","D"]},
    "payoffs":[{"profile":{"P1":"C"},"values":[-1.0,0.0]},
               {"profile":{"P1":"D"},"values":[2.0,3.0]}]})");
  EXPECT_EQ(game.active(), (std::vector<std::size_t>{0}));
  EXPECT_EQ(game.payoff({1}, 1), 3.0);
}

std::string game_error(std::string_view text) {
  try {
    parse_game(text);
  } catch (const SyntaxError& e) {
    return e.location();
  }
  return "";
}

TEST(Game, CoverageErrors) {
  const std::string head = R"({"version":1,"players":[{"name":"P1"}],"strategies":{"P1":["C","D"]},)";
  // Missing profile D.
  EXPECT_EQ(game_error(head + R"("payoffs":[{"profile":{"P1":"C"},"values":[1]}]})"), "$.payoffs");
  // Duplicate profile.
  EXPECT_EQ(game_error(head + R"("payoffs":[{"profile":{"P1":"C"},"values":[1]},{"profile":{"P1":"C"},"values":[2]},{"profile":{"P1":"D"},"values":[2]}]})"),
            "$.payoffs[1]");
  // Wrong payoff vector length.
  EXPECT_EQ(game_error(head + R"("payoffs":[{"profile":{"P1":"C"},"values":[1,2]},{"profile":{"P1":"D"},"values":[2]}]})"),
            "$.payoffs[0].values");
  // Unknown strategy.
  EXPECT_EQ(game_error(head + R"("payoffs":[{"profile":{"P1":"Q"},"values":[1]},{"profile":{"P1":"D"},"values":[2]}]})"),
            "$.payoffs[0].profile.P1");
  // Passive player with strategies.
  EXPECT_NE(game_error(R"({"version":1,"players":[{"name":"P1"},{"name":"L","passive":true}],"strategies":{"P1":["C"],"L":["x"]},"payoffs":[{"profile":{"P1":"C"},"values":[1,2]}]})"),
            "");
}

TEST(ExportDot, FreeSystemHasEqualNodesAndNoEdges) {
  const auto system = PowerSystem<double>::free(2);
  const auto dot = export_dot(system, colonize(system));
  EXPECT_EQ(dot.find("->"), std::string::npos);
  EXPECT_NE(dot.find("\"0\" [width=1.0000"), std::string::npos);
  EXPECT_NE(dot.find("\"1\" [width=1.0000"), std::string::npos);
}

TEST(ExportDot, SourceDrawnLarger) {
  MatrixXd f = MatrixXd::Zero(2, 2);
  f(0, 1) = 0.5;
  const PowerSystem<double> system(f);
  const auto dot = export_dot(system, colonize(system));
  EXPECT_NE(dot.find("\"0\" [width=1.0000, label=\"0\\np=1.500\"]"), std::string::npos) << dot;
  // 0.3 + 0.7 * 0.5 / 1.5
  EXPECT_NE(dot.find("\"1\" [width=0.5333, label=\"1\\np=0.500\"]"), std::string::npos) << dot;
  EXPECT_NE(dot.find("\"0\" -> \"1\" [label=\"0.500\"]"), std::string::npos) << dot;
}

TEST(ExportDot, DeterministicAndLabelSorted) {
  std::mt19937 rng(4);
  const MatrixXd f = testing::random_adjacency(rng, 6, 0.6);
  const PowerSystem<double> system({"zeta", "alpha", "mid", "b\"q", "c", "a"}, f);
  const auto c = colonize(system);
  const auto first = export_dot(system, c);
  EXPECT_EQ(first, export_dot(system, c));
  EXPECT_EQ(first, export_dot(PowerSystem<double>(system.labels(), f), colonize(system)));
  EXPECT_LT(first.find("\"a\" [width"), first.find("\"alpha\" [width"));
  EXPECT_LT(first.find("\"mid\" [width"), first.find("\"zeta\" [width"));
  EXPECT_NE(first.find("\"b\\\"q\""), std::string::npos);
}

TEST(SpectraCsv, IdentityRows) {
  const auto c = colonize(PowerSystem<double>::free(3));
  const auto csv = export_spectra_csv({"0", "1", "2"}, c);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "colonizer,colonized,value");
  int rows = 0, ones = 0;
  while (std::getline(in, line)) {
    ++rows;
    if (line.size() >= 2 && line.substr(line.size() - 2) == ",1") ++ones;
  }
  EXPECT_EQ(rows, 9);
  EXPECT_EQ(ones, 3);
}

TEST(SpectraCsv, MutualPairShowsThirds) {
  MatrixXd f(2, 2);
  f << 0, 0.5, 0.5, 0;
  const auto csv = export_spectra_csv({"0", "1"}, colonize(PowerSystem<double>(f)));
  EXPECT_NE(csv.find("0,1,0.333333333333"), std::string::npos) << csv;
  EXPECT_NE(csv.find("0,0,0.666666666667"), std::string::npos) << csv;
}

TEST(SpectraCsv, ReparseMatchesAtPrintedPrecision) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + trial % 6;
    const auto c = colonize(PowerSystem<double>(testing::random_adjacency(rng, n, 0.6)));
    std::vector<std::string> labels;
    for (Index i = 0; i < n; ++i) labels.push_back(i == 1 ? "with,comma" : "x" + std::to_string(i));
    const auto csv = export_spectra_csv(labels, c);
    const auto back = parse_spectra_csv(csv);
    EXPECT_EQ(back.labels, labels);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        EXPECT_EQ(format_number(back.colonization(i, j)), format_number(c(i, j)));
      }
    }
    EXPECT_EQ(export_spectra_csv(labels, back.colonization), csv);
  }
}

TEST(SpectraCsv, RejectsMalformed) {
  EXPECT_THROW(parse_spectra_csv("wrong,header,here\n"), SyntaxError);
  EXPECT_THROW(parse_spectra_csv("colonizer,colonized,value\na,a,1\na,b\n"), SyntaxError);
  EXPECT_THROW(parse_spectra_csv("colonizer,colonized,value\na,a,abc\n"), SyntaxError);
}

TEST(FormatNumber, Digits) {
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(1.0 / 3.0, kHumanDigits), "0.3333");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(15.2, kHumanDigits), "15.2");
}

TEST(ReadFile, MissingFileThrows) {
  EXPECT_THROW(read_file("/nonexistent/powersys/file.json"), Error);
}

}  // namespace
}  // namespace powersys::io
