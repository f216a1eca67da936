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

#include <numeric>
#include <random>

#include "spjm/parser.h"
#include "spjm/query.h"
#include "test_support.h"

namespace spjm {
namespace {

using testing::CodeOf;
using testing::MiniQuery;

class PgqFrontend : public ::testing::Test {
 protected:
  void SetUp() override { session_ = testing::MiniSession(); }
  const Catalog& cat() const { return session_->catalog(); }
  BoundQuery Bind(const std::string& text) const { return ParseQuery(text, cat()); }

  std::unique_ptr<Session> session_;
};

TEST(PgqParser, FriendsOfTomQueryShape) {
  auto stmt = std::get<ast::SelectStmt>(Parse(MiniQuery("friends_of_tom_place")));
  ASSERT_EQ(stmt.items.size(), 2u);
  EXPECT_EQ(stmt.items[0].column, (ast::ColumnRef{"g", "p2_name"}));
  EXPECT_EQ(stmt.items[1].column, (ast::ColumnRef{"p", "pl_name"}));
  ASSERT_EQ(stmt.from.size(), 2u);
  const auto& gt = std::get<ast::GraphTable>(stmt.from[0].item);
  EXPECT_EQ(gt.graph, "mini");
  EXPECT_EQ(gt.alias, "g");
  EXPECT_EQ(gt.mode, ast::MatchMode::kNone);
  ASSERT_EQ(gt.paths.size(), 3u);
  EXPECT_EQ(gt.paths[0].nodes[0].var, "p1");
  EXPECT_EQ(gt.paths[0].nodes[0].label, "Person");
  EXPECT_EQ(gt.paths[0].edges[0].var, "k");
  EXPECT_EQ(gt.paths[0].edges[0].label, "Knows");
  EXPECT_EQ(gt.paths[0].edges[0].dir, ast::ArrowDir::kForward);
  EXPECT_EQ(gt.paths[2].nodes[1].label, "");
  ASSERT_EQ(gt.columns.size(), 3u);
  EXPECT_EQ(gt.columns[2], (ast::GraphColumn{ast::ColumnKind::kAttr, "p2", "place_id", "place_id"}));
  const auto& join = stmt.from[1];
  EXPECT_TRUE(join.explicit_join);
  EXPECT_EQ(std::get<ast::TableRef>(join.item), (ast::TableRef{"Place", "p"}));
  ASSERT_EQ(join.on.size(), 1u);
  ASSERT_EQ(stmt.where.size(), 1u);
  EXPECT_EQ(stmt.where[0].op, CmpOp::kEq);
  EXPECT_EQ(std::get<ast::Literal>(stmt.where[0].rhs).value, Value(std::string("Tom")));
}

TEST(PgqParser, MinimalQuery) {
  auto stmt = std::get<ast::SelectStmt>(Parse("SELECT * FROM GRAPH_TABLE (g MATCH (v:L) COLUMNS (v.a AS a)) t"));
  ASSERT_EQ(stmt.items.size(), 1u);
  EXPECT_TRUE(stmt.items[0].star);
  const auto& gt = std::get<ast::GraphTable>(stmt.from[0].item);
  ASSERT_EQ(gt.paths.size(), 1u);
  EXPECT_TRUE(gt.paths[0].edges.empty());
}

TEST(PgqParser, SelectFromIsParseErrorWithPosition) {
  try {
    Parse("SELECT FROM");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.col(), 8);
    EXPECT_FALSE(e.expected().empty());
    EXPECT_EQ(std::string(e.what()).rfind("ParseError: line 1, col 8", 0), 0u) << e.what();
  }
}

TEST(PgqParser, ErrorPositionOnLaterLine) {
  try {
    Parse("SELECT *\nFROM GRAPH_TABLE (g MATCH (v:L)-[e:E]=>(w) COLUMNS (v.a AS a)) t");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(PgqParser, Arrows) {
  auto gt = std::get<ast::GraphTable>(
      std::get<ast::SelectStmt>(Parse("SELECT * FROM GRAPH_TABLE (g MATCH (a)-[x:E]->(b)<-[y:E]-(c)-[z:E]-(d) "
                                      "COLUMNS (ID(a))) t"))
          .from[0]
          .item);
  ASSERT_EQ(gt.paths[0].edges.size(), 3u);
  EXPECT_EQ(gt.paths[0].edges[0].dir, ast::ArrowDir::kForward);
  EXPECT_EQ(gt.paths[0].edges[1].dir, ast::ArrowDir::kBackward);
  EXPECT_EQ(gt.paths[0].edges[2].dir, ast::ArrowDir::kEither);
  EXPECT_EQ(gt.columns[0].kind, ast::ColumnKind::kId);
  EXPECT_EQ(gt.columns[0].alias, "a_id");
}

TEST(PgqParser, DistinctModes) {
  auto mode = [](const std::string& clause) {
    auto s = std::get<ast::SelectStmt>(
        Parse("SELECT * FROM GRAPH_TABLE (g MATCH " + clause + " (a:L) COLUMNS (LABEL(a))) t"));
    return std::get<ast::GraphTable>(s.from[0].item).mode;
  };
  EXPECT_EQ(mode(""), ast::MatchMode::kNone);
  EXPECT_EQ(mode("DISTINCT VERTICES"), ast::MatchMode::kVertices);
  EXPECT_EQ(mode("DISTINCT EDGES"), ast::MatchMode::kEdges);
  EXPECT_EQ(mode("DISTINCT ALL"), ast::MatchMode::kAll);
}

TEST(PgqParser, NotEqualSpellings) {
  auto a = Parse("SELECT * FROM GRAPH_TABLE (g MATCH (v:L) COLUMNS (v.a AS a)) t WHERE t.a <> 1");
  auto b = Parse("SELECT * FROM GRAPH_TABLE (g MATCH (v:L) COLUMNS (v.a AS a)) t WHERE t.a != 1");
  EXPECT_EQ(a, b);
  EXPECT_EQ(std::get<ast::SelectStmt>(a).where[0].op, CmpOp::kNe);
}

TEST(PgqParser, PrettyPrintRoundTripsCorpus) {
  for (const auto& q : testing::MiniQueries()) {
    ast::Statement s = Parse(q.text);
    std::string printed = PrettyPrint(s);
    EXPECT_EQ(Parse(printed), s) << q.name << "\n" << printed;
    EXPECT_EQ(PrettyPrint(Parse(printed)), printed) << q.name;
  }
}

TEST(PgqParser, DdlRoundTripAndMapping) {
  auto stmts = ParseScript(testing::ReadText(testing::FixturePath("mini/mini.ddl")));
  ASSERT_EQ(stmts.size(), 1u);
  auto ddl = std::get<ast::CreateGraphStmt>(stmts[0]);
  EXPECT_EQ(Parse(PrettyPrint(ddl)), stmts[0]);
  RGMapping m = ast::ToMapping(ddl);
  EXPECT_EQ(m.graph_name, "mini");
  ASSERT_EQ(m.vertex_tables.size(), 2u);
  EXPECT_EQ(m.vertex_tables[0].label, m.vertex_tables[0].relation);
  ASSERT_EQ(m.edge_tables.size(), 2u);
  for (const auto& e : m.edge_tables) {
    if (e.label != "Likes") continue;
    EXPECT_EQ(e.source.ref_relation, "Person");
    EXPECT_EQ(e.target.ref_relation, "Message");
  }
}

TEST(PgqParser, ScriptSplitsStatements) {
  auto stmts = ParseScript(
      "SELECT * FROM GRAPH_TABLE (g MATCH (v:L) COLUMNS (v.a AS a)) t;\n"
      "-- comment\n"
      "SELECT * FROM GRAPH_TABLE (g MATCH (v:L) COLUMNS (v.b AS b)) t;");
  EXPECT_EQ(stmts.size(), 2u);
}

TEST_F(PgqFrontend, BindsFriendsOfTomQuery) {
  BoundQuery q = Bind(MiniQuery("friends_of_tom_place"));
  const PatternGraph& p = q.graph.pattern;
  EXPECT_EQ(p.n(), 3u);
  EXPECT_EQ(p.m(), 3u);
  EXPECT_TRUE(p.Connected());
  EXPECT_EQ(q.inputs.size(), 2u);
  EXPECT_EQ(q.outputs.size(), 2u);
  EXPECT_EQ(q.graph.pattern.vertices[p.VertexIndex("m")].label, q.graph.graph->LabelOrThrow("Message"));
}

TEST_F(PgqFrontend, AnonymousElementsGetFreshNames) {
  BoundQuery q = Bind(
      "SELECT * FROM GRAPH_TABLE (mini MATCH (p:Person)-[:Knows]->(:Person)-[:Likes]->(m:Message) "
      "COLUMNS (p.name AS n)) g");
  const PatternGraph& p = q.graph.pattern;
  ASSERT_EQ(p.m(), 2u);
  EXPECT_EQ(p.edges[0].var, "_e0");
  EXPECT_EQ(p.edges[1].var, "_e1");
  EXPECT_EQ(p.vertices[1].var, "_v0");
}

TEST_F(PgqFrontend, BackwardArrowSwapsEndpoints) {
  BoundQuery q = Bind(MiniQuery("liked_by"));
  const PatternGraph& p = q.graph.pattern;
  EXPECT_EQ(p.edges[0].src, p.VertexIndex("p"));
  EXPECT_EQ(p.edges[0].tgt, p.VertexIndex("m"));
  EXPECT_FALSE(p.edges[0].either);
}

TEST_F(PgqFrontend, EitherEdge) {
  BoundQuery q = Bind(MiniQuery("knows_either_direction"));
  EXPECT_TRUE(q.graph.pattern.edges[0].either);
}

TEST_F(PgqFrontend, InlineConstraintBindsToElement) {
  BoundQuery q = Bind(MiniQuery("inline_name"));
  const PatternGraph& p = q.graph.pattern;
  ASSERT_EQ(p.vertices[p.VertexIndex("p")].constraints.size(), 1u);
  EXPECT_EQ(p.vertices[p.VertexIndex("p")].constraints[0].literal, Value(std::string("Tom")));
}

TEST_F(PgqFrontend, DisconnectedPattern) {
  EXPECT_EQ(CodeOf([&] {
              Bind("SELECT * FROM GRAPH_TABLE (mini MATCH (a:Person), (b:Message) COLUMNS (a.name AS n)) g");
            }),
            ErrorCode::kDisconnectedPattern);
}

TEST_F(PgqFrontend, StringComparedWithIntIsTypeMismatch) {
  EXPECT_EQ(CodeOf([&] {
              Bind("SELECT * FROM GRAPH_TABLE (mini MATCH (v:Person) COLUMNS (v.name AS name)) g WHERE g.name > 3");
            }),
            ErrorCode::kTypeMismatch);
  EXPECT_EQ(CodeOf([&] { Bind("SELECT * FROM GRAPH_TABLE (mini MATCH (v:Person {name: 3}) COLUMNS (v.name AS n)) g"); }),
            ErrorCode::kTypeMismatch);
}

TEST_F(PgqFrontend, NameResolutionErrors) {
  EXPECT_EQ(CodeOf([&] { Bind("SELECT * FROM GRAPH_TABLE (nope MATCH (v:Person) COLUMNS (v.name AS n)) g"); }),
            ErrorCode::kUnknownGraph);
  EXPECT_EQ(CodeOf([&] { Bind("SELECT * FROM GRAPH_TABLE (mini MATCH (v:Robot) COLUMNS (v.name AS n)) g"); }),
            ErrorCode::kUnknownLabel);
  EXPECT_EQ(CodeOf([&] { Bind("SELECT * FROM GRAPH_TABLE (mini MATCH (v:Person) COLUMNS (v.age AS n)) g"); }),
            ErrorCode::kUnknownAttribute);
  EXPECT_EQ(CodeOf([&] { Bind("SELECT * FROM GRAPH_TABLE (mini MATCH (v:Person) COLUMNS (w.name AS n)) g"); }),
            ErrorCode::kUnknownAlias);
  EXPECT_EQ(CodeOf([&] {
              Bind("SELECT * FROM GRAPH_TABLE (mini MATCH (v:Person) COLUMNS (v.name AS n)) g WHERE h.n = 'x'");
            }),
            ErrorCode::kUnknownAlias);
  EXPECT_EQ(CodeOf([&] {
              Bind("SELECT * FROM GRAPH_TABLE (mini MATCH (v:Person)-[e:Likes]->(w:Person) COLUMNS (v.name AS n)) g");
            }),
            ErrorCode::kTypeMismatch);
}

TEST_F(PgqFrontend, MetaColumnsCannotBeFiltered) {
  EXPECT_EQ(CodeOf([&] {
              Bind("SELECT * FROM GRAPH_TABLE (mini MATCH (v:Person) COLUMNS (ID(v) AS i)) g WHERE g.i = 'Person#0'");
            }),
            ErrorCode::kUnsupported);
}

TEST_F(PgqFrontend, WholeCorpusBinds) {
  for (const auto& q : testing::MiniQueries()) {
    EXPECT_NO_THROW(Bind(q.text)) << q.name;
  }
}

// Random comma-separated lists of single edges and lone vertices over Person;
// the validator must agree with a union-find over the same variables.
TEST_F(PgqFrontend, ConnectivityMatchesUnionFind) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 5);
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::string match;
    std::vector<bool> used(n, false);
    int items = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < items; ++i) {
      int a = static_cast<int>(rng() % n);
      int b = static_cast<int>(rng() % n);
      if (!match.empty()) match += ", ";
      if (a == b) {
        match += "(v" + std::to_string(a) + ":Person)";
      } else {
        match += "(v" + std::to_string(a) + ":Person)-[:Knows]->(v" + std::to_string(b) + ":Person)";
        parent[find(a)] = find(b);
        used[b] = true;
      }
      used[a] = true;
    }
    int roots = 0;
    for (int v = 0; v < n; ++v) roots += used[v] && find(v) == v;
    std::string text = "SELECT * FROM GRAPH_TABLE (mini MATCH " + match + " COLUMNS (LABEL(v0))) g";
    if (!used[0]) text = "SELECT * FROM GRAPH_TABLE (mini MATCH " + match + " COLUMNS (LABEL(v" +
                         match.substr(2, match.find(':') - 2) + "))) g";
    if (roots == 1) {
      EXPECT_NO_THROW(Bind(text)) << text;
    } else {
      EXPECT_EQ(CodeOf([&] { Bind(text); }), ErrorCode::kDisconnectedPattern) << text;
    }
  }
}

}  // namespace
}  // namespace spjm
