// Copyright 2026 The spjm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>

#include "spjm/bench.h"
#include "test_support.h"

namespace spjm {
namespace {

using testing::FixturePath;
using testing::ReadText;
using testing::TempDir;

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string Quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const char* cli = std::getenv("SPJM_CLI");
    if (cli == nullptr) GTEST_SKIP() << "SPJM_CLI not set";
    cli_ = cli;
  }

  CliResult Run(const std::vector<std::string>& args) {
    std::string err_path = tmp_.path() + "/stderr.txt";
    std::string cmd = Quote(cli_);
    for (const auto& a : args) cmd += " " + Quote(a);
    cmd += " 2>" + Quote(err_path);
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = ReadText(err_path);
    return r;
  }

  std::vector<std::string> Mini(std::vector<std::string> rest) {
    std::vector<std::string> args = {"--manifest", FixturePath("mini/manifest.txt")};
    args.insert(args.end(), rest.begin(), rest.end());
    return args;
  }

  std::string cli_;
  TempDir tmp_;
};

TEST_F(Cli, LoadListsRelationsAndGraphs) {
  CliResult r = Run(Mini({"load"}));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("relation Person rows=3"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("graph mini vertices=5 edges=7"), std::string::npos) << r.out;
}

TEST_F(Cli, QueryPrintsRowsAndTimingLine) {
  for (const char* opt : {"converged", "agnostic"}) {
    CliResult r = Run(Mini({"--optimizer", opt, "query", testing::MiniQuery("friends_of_tom_place")}));
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("p2_name,pl_name\nJerry,Paris\n"), std::string::npos) << r.out;
    EXPECT_TRUE(std::regex_search(r.out, std::regex(R"(optimize_us=\d+ execute_us=\d+ rows=1\n$)"))) << r.out;
  }
}

TEST_F(Cli, QueryFromFileAndOutputFile) {
  std::string q = tmp_.path() + "/q.sql";
  std::ofstream(q) << testing::MiniQuery("all_persons");
  std::string out = tmp_.path() + "/out.csv";
  CliResult r = Run(Mini({"--output", out, "query", "@" + q}));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ReadText(out), "v_id,name\nPerson#0,Tom\nPerson#1,Jerry\nPerson#2,Spike\n");
}

TEST_F(Cli, ModeOverride) {
  CliResult none = Run(Mini({"query", testing::MiniQuery("two_hop")}));
  CliResult distinct = Run(Mini({"--mode", "vertices", "query", testing::MiniQuery("two_hop")}));
  EXPECT_NE(none.out.find("rows=6"), std::string::npos) << none.out;
  EXPECT_NE(distinct.out.find("rows=2"), std::string::npos) << distinct.out;
}

TEST_F(Cli, ParseErrorExitsTwoWithExpectedTokens) {
  CliResult r = Run(Mini({"query", "SELECT FROM"}));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("ParseError: line 1, col 8"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("expected one of"), std::string::npos) << r.err;
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(Run({"--bogus", "load"}).code, 2);
  EXPECT_EQ(Run({}).code, 2);
  EXPECT_EQ(Run(Mini({"--mode", "sometimes", "load"})).code, 2);
  EXPECT_EQ(Run(Mini({"--k", "5", "load"})).code, 2);
  EXPECT_EQ(Run({"gen", "--persons", "10"}).code, 2);
}

TEST_F(Cli, RuntimeErrorsExitOne) {
  CliResult missing = Run({"--manifest", "/nonexistent/manifest.txt", "load"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("MissingFile"), std::string::npos) << missing.err;
  CliResult graph = Run(Mini({"query", "SELECT * FROM GRAPH_TABLE (nope MATCH (v:Person) COLUMNS (v.name AS n)) g"}));
  EXPECT_EQ(graph.code, 1);
  EXPECT_NE(graph.err.find("UnknownGraph"), std::string::npos) << graph.err;
}

TEST_F(Cli, ExplainIsByteStable) {
  CliResult a = Run(Mini({"explain", testing::MiniQuery("friends_of_tom_place")}));
  CliResult b = Run(Mini({"explain", testing::MiniQuery("friends_of_tom_place")}));
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("optimizer: converged  graph_index: on  mode: none\n", 0), 0u) << a.out;
  EXPECT_NE(a.out.find("EXPAND_INTERSECT"), std::string::npos);
  EXPECT_NE(a.out.find("json:\n{"), std::string::npos);
  CliResult c = Run(Mini({"--no-graph-index", "explain", testing::MiniQuery("friends_of_tom_place")}));
  EXPECT_EQ(c.out.find("EXPAND"), std::string::npos) << c.out;
}

TEST_F(Cli, CreateGraphFromDdl) {
  CliResult r = Run(Mini({"create-graph", FixturePath("mini/mini.ddl")}));
  // mini already exists in the manifest.
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("DuplicateName"), std::string::npos) << r.err;
  std::string ddl = tmp_.path() + "/g2.ddl";
  std::ofstream(ddl) << "CREATE PROPERTY GRAPH g2 VERTEX TABLES (Person) EDGE TABLES (Knows SOURCE KEY (pid1) "
                        "REFERENCES Person (person_id) DESTINATION KEY (pid2) REFERENCES Person (person_id));";
  r = Run(Mini({"create-graph", ddl}));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("graph g2 vertices=3 edges=4"), std::string::npos) << r.out;
}

TEST_F(Cli, GenIsDeterministic) {
  std::string a = tmp_.path() + "/a";
  std::string b = tmp_.path() + "/b";
  std::string c = tmp_.path() + "/c";
  EXPECT_EQ(Run({"--seed", "7", "--output", a, "gen", "--persons", "200"}).code, 0);
  EXPECT_EQ(Run({"--seed", "7", "--output", b, "gen", "--persons", "200"}).code, 0);
  EXPECT_EQ(Run({"--seed", "8", "--output", c, "gen", "--persons", "200"}).code, 0);
  for (const char* f : {"person.csv", "message.csv", "place.csv", "knows.csv", "likes.csv", "social.ddl"}) {
    EXPECT_EQ(ReadText(a + "/" + f), ReadText(b + "/" + f)) << f;
  }
  EXPECT_NE(ReadText(a + "/knows.csv"), ReadText(c + "/knows.csv"));
}

TEST_F(Cli, GeneratedGraphHasTriangles) {
  std::string dir = tmp_.path() + "/social";
  ASSERT_EQ(Run({"--output", dir, "gen", "--persons", "300"}).code, 0);
  CliResult r = Run({"--manifest", dir + "/manifest.txt", "query",
                     "SELECT * FROM GRAPH_TABLE (social MATCH (a:Person)-[:Knows]->(b:Person)-[:Knows]->(c:Person), "
                     "(a)-[:Knows]->(c) COLUMNS (ID(a) AS a)) g"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::smatch m;
  ASSERT_TRUE(std::regex_search(r.out, m, std::regex(R"(rows=(\d+))"))) << r.out;
  EXPECT_GT(std::stoll(m[1]), 0);
}

TEST_F(Cli, BenchReportsBothOptimizers) {
  std::string dir = tmp_.path() + "/social";
  ASSERT_EQ(Run({"--output", dir, "gen", "--persons", "300"}).code, 0);
  std::string csv = tmp_.path() + "/bench.csv";
  CliResult r = Run({"--manifest", dir + "/manifest.txt", "--output", csv, "bench",
                     FixturePath("bench/social_queries.sql")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("triangle"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("geomean_speedup="), std::string::npos) << r.out;
  std::string report = ReadText(csv);
  EXPECT_EQ(std::count(report.begin(), report.end(), '\n'), 7) << report;
}

TEST_F(Cli, EmptyBenchFileExitsZero) {
  std::string f = tmp_.path() + "/empty.sql";
  std::ofstream(f) << "-- nothing here\n";
  CliResult r = Run(Mini({"bench", f}));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.find("geomean_speedup="), std::string::npos);
}

TEST_F(Cli, SpaceAndVerify) {
  CliResult s = Run({"space", "--family", "path", "--from", "1", "--to", "3"});
  EXPECT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("8448"), std::string::npos) << s.out;
  CliResult v = Run(Mini({"verify", "--graphs", "2", "--patterns", "2", "--queries", FixturePath("mini/queries.sql")}));
  EXPECT_EQ(v.code, 0) << v.err;
  EXPECT_NE(v.out.find("failures=0"), std::string::npos) << v.out;
}

TEST(BenchFile, NamesAndSplitsQueries) {
  auto qs = ParseBenchFile("-- first\nSELECT 1;\nSELECT 2;\n\n-- third\nSELECT 3;");
  ASSERT_EQ(qs.size(), 3u);
  EXPECT_EQ(qs[0].name, "first");
  EXPECT_EQ(qs[1].name, "q2");
  EXPECT_EQ(qs[2].name, "third");
  EXPECT_TRUE(ParseBenchFile("  \n-- only a comment\n").empty());
}

TEST(BenchReport, GeometricMean) {
  std::vector<BenchRow> rows(2);
  rows[0].agnostic.execute_ms = 8;
  rows[0].converged.execute_ms = 2;
  rows[1].agnostic.execute_ms = 2;
  rows[1].converged.execute_ms = 2;
  EXPECT_DOUBLE_EQ(rows[0].speedup(), 4.0);
  EXPECT_DOUBLE_EQ(GeometricMeanSpeedup(rows), 2.0);
}

}  // namespace
}  // namespace spjm
