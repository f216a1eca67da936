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

#include <algorithm>
#include <map>
#include <set>

#include "spjm/oracle.h"
#include "spjm/verify.h"
#include "test_support.h"

namespace spjm {
namespace {

using Rows = std::vector<std::vector<std::string>>;
using Assignment = std::map<std::string, uint64_t>;

std::string Select(const std::string& match, const std::string& columns, const std::string& mode = "") {
  return "SELECT * FROM GRAPH_TABLE (mini MATCH " + mode + " " + match + " COLUMNS (" + columns + ")) g";
}

std::multiset<Assignment> Assignments(const GraphRelation& gr) {
  std::multiset<Assignment> out;
  for (const auto& row : gr.rows) {
    Assignment a;
    for (size_t i = 0; i < row.size(); ++i) a[gr.vars[i]] = row[i].Pack();
    out.insert(a);
  }
  return out;
}

std::set<Assignment> AsSet(const std::multiset<Assignment>& m) { return {m.begin(), m.end()}; }

// Nested-loop natural join on shared variable names.
std::multiset<Assignment> Join(const std::multiset<Assignment>& l, const std::multiset<Assignment>& r) {
  std::multiset<Assignment> out;
  for (const auto& a : l) {
    for (const auto& b : r) {
      bool ok = true;
      for (const auto& [k, v] : b) {
        auto it = a.find(k);
        if (it != a.end() && it->second != v) ok = false;
      }
      if (!ok) continue;
      Assignment c = a;
      c.insert(b.begin(), b.end());
      out.insert(c);
    }
  }
  return out;
}

VertexMask EndpointMask(const PatternGraph& p, EdgeMask edges) {
  VertexMask m = 0;
  for (size_t i = 0; i < p.m(); ++i) {
    if (edges >> i & 1) m |= (1u << p.edges[i].src) | (1u << p.edges[i].tgt);
  }
  return m;
}

// Every split of the edges into two non-empty halves must recompose the matches.
void CheckTwoSplits(const GraphView& g, const PatternGraph& p) {
  auto full = Assignments(MatchBruteforce(g, p, MatchMode::kNone));
  EdgeMask all = p.m() >= 64 ? ~EdgeMask{0} : (EdgeMask{1} << p.m()) - 1;
  for (EdgeMask left = 1; left < all; ++left) {
    EdgeMask right = all & ~left;
    VertexMask lv = EndpointMask(p, left);
    VertexMask rv = EndpointMask(p, right) | (p.FullMask() & ~lv);
    auto joined = Join(Assignments(MatchBruteforce(g, p.Sub(lv, left), MatchMode::kNone)),
                       Assignments(MatchBruteforce(g, p.Sub(rv, right), MatchMode::kNone)));
    EXPECT_EQ(joined, full) << PatternText(g, p) << " split " << left;
  }
}

class MatchOracle : public ::testing::Test {
 protected:
  void SetUp() override { session_ = testing::MiniSession(); }
  BoundQuery Bind(const std::string& text) const { return ParseQuery(text, session_->catalog()); }
  Rows Eval(const std::string& text) const { return EvaluateReference(Bind(text)).SortedRows(); }
  const GraphView& graph() const { return *session_->catalog().GetGraph("mini"); }

  std::unique_ptr<Session> session_;
};

TEST_F(MatchOracle, CoLikedPatternGoldenRows) {
  Rows expect = {{"Person#0", "Knows#0", "Person#1", "Likes#0", "Likes#1", "Message#0"},
                 {"Person#1", "Knows#1", "Person#0", "Likes#1", "Likes#0", "Message#0"}};
  EXPECT_EQ(Eval(testing::MiniQuery("co_liked_triangle_ids")), expect);
}

TEST_F(MatchOracle, BruteforceRowsUseElementIds) {
  BoundQuery q = Bind(Select(testing::kCoLikedPattern, "ID(p1)"));
  GraphRelation gr = MatchBruteforce(graph(), q.graph.pattern, MatchMode::kNone);
  EXPECT_EQ(gr.vars, (std::vector<std::string>{"p1", "p2", "m", "k", "l1", "l2"}));
  ASSERT_EQ(gr.rows.size(), 2u);
  EXPECT_EQ(CountMatches(graph(), q.graph.pattern), 2u);
  std::string csv = GraphRelationCsv(graph(), gr);
  EXPECT_NE(csv.find("Person#0,Person#1,Message#0,Knows#0,Likes#0,Likes#1"), std::string::npos) << csv;
}

TEST_F(MatchOracle, SingleVertexPattern) {
  EXPECT_EQ(Eval(testing::MiniQuery("all_persons")),
            (Rows{{"Person#0", "Tom"}, {"Person#1", "Jerry"}, {"Person#2", "Spike"}}));
}

TEST_F(MatchOracle, IdLabelAndAttributeProjection) {
  Rows rows = Eval(Select("(v:Person {name: 'Tom'})", "ID(v), LABEL(v), v.name AS name"));
  EXPECT_EQ(rows, (Rows{{"Person#0", "Person", "Tom"}}));
  StringTable t = EvaluateReference(Bind(Select("(v:Person {name: 'Tom'})", "ID(v), LABEL(v)")));
  EXPECT_EQ(t.columns, (std::vector<std::string>{"v_id", "v_label"}));
}

TEST_F(MatchOracle, ZeroColumnProjectionKeepsMultiplicity) {
  BoundQuery q = Bind(Select("(a:Person)-[k:Knows]->(b:Person)", "ID(a)"));
  GraphRelation gr = MatchBruteforce(graph(), q.graph.pattern, MatchMode::kNone);
  RelationPtr r = ProjectColumns(graph(), gr, {}, q.graph.pattern);
  EXPECT_EQ(r->schema().size(), 0u);
  EXPECT_EQ(r->size(), 4u);
}

TEST_F(MatchOracle, EitherEdgeCountsBothOrientations) {
  EXPECT_EQ(Eval(testing::MiniQuery("knows_either_direction")).size(), 8u);
  EXPECT_EQ(Eval(testing::MiniQuery("knows_pairs")).size(), 4u);
  BoundQuery q = Bind(Select("(a:Person)-[x:Likes]-(b:Message)", "ID(x)"));
  EXPECT_EQ(CountMatches(graph(), q.graph.pattern), 3u);
}

TEST_F(MatchOracle, KnownCounts) {
  EXPECT_EQ(Eval(testing::MiniQuery("two_hop")).size(), 6u);
  EXPECT_EQ(Eval(testing::MiniQuery("two_hop_distinct_vertices")).size(), 2u);
  EXPECT_EQ(Eval(testing::MiniQuery("knows_triangle")).size(), 0u);
  EXPECT_EQ(Eval(testing::MiniQuery("nobody")).size(), 0u);
  EXPECT_EQ(Eval(testing::MiniQuery("co_likers")), (Rows{{"Tom", "Jerry"}}));
}

TEST_F(MatchOracle, FriendsOfTomPlace) {
  EXPECT_EQ(Eval(testing::MiniQuery("friends_of_tom_place")), (Rows{{"Jerry", "Paris"}}));
}

TEST_F(MatchOracle, InstanceFilterRestrictsCandidates) {
  BoundQuery q = Bind(Select("(a:Person)-[k:Knows]->(b:Person)", "ID(a)"));
  InstanceFilter f;
  f.vertex = [](ElementId v) { return v.rid != 2; };
  f.edge = [](ElementId) { return true; };
  EXPECT_EQ(MatchBruteforce(graph(), q.graph.pattern, MatchMode::kNone, &f).rows.size(), 2u);
}

TEST_F(MatchOracle, TwoSplitsRecomposeOnFixture) {
  CheckTwoSplits(graph(), Bind(Select(testing::kCoLikedPattern, "ID(p1)")).graph.pattern);
  CheckTwoSplits(graph(), Bind(testing::MiniQuery("knows_square")).graph.pattern);
  CheckTwoSplits(graph(), Bind(testing::MiniQuery("two_hop_either_distinct_edges")).graph.pattern);
}

TEST(MatchOracleRandom, TwoSplitsRecomposeOnRandomGraphs) {
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    auto cat = RandomGraphCatalog(seed, 12, 30);
    for (uint64_t k = 0; k < 4; ++k) {
      BoundQuery q = ParseQuery(RandomPatternQuery(seed * 100 + k, false), *cat);
      PatternGraph p = q.graph.pattern.WithoutConstraints();
      if (p.m() < 2 || p.m() > 4) continue;
      CheckTwoSplits(*q.graph.graph, p);
    }
  }
}

bool DistinctVertices(const GraphRelation& gr, size_t n) {
  for (const auto& row : gr.rows) {
    std::set<uint64_t> s;
    for (size_t i = 0; i < n; ++i) s.insert(row[i].Pack());
    if (s.size() != n) return false;
  }
  return true;
}

bool DistinctEdges(const GraphRelation& gr, size_t n) {
  for (const auto& row : gr.rows) {
    std::set<uint64_t> s;
    for (size_t i = n; i < row.size(); ++i) s.insert(row[i].Pack());
    if (s.size() != row.size() - n) return false;
  }
  return true;
}

void CheckModes(const GraphView& g, const PatternGraph& p) {
  auto none_rows = Assignments(MatchBruteforce(g, p, MatchMode::kNone));
  auto none = AsSet(none_rows);
  auto vr = MatchBruteforce(g, p, MatchMode::kVertices);
  auto er = MatchBruteforce(g, p, MatchMode::kEdges);
  auto ar = MatchBruteforce(g, p, MatchMode::kAll);
  EXPECT_TRUE(DistinctVertices(vr, p.n()));
  EXPECT_TRUE(DistinctEdges(er, p.n()));
  EXPECT_TRUE(DistinctVertices(ar, p.n()) && DistinctEdges(ar, p.n()));
  auto v = AsSet(Assignments(vr));
  auto e = AsSet(Assignments(er));
  auto a = AsSet(Assignments(ar));
  EXPECT_TRUE(std::includes(none.begin(), none.end(), v.begin(), v.end()));
  EXPECT_TRUE(std::includes(none.begin(), none.end(), e.begin(), e.end()));
  std::set<Assignment> both;
  std::set_intersection(v.begin(), v.end(), e.begin(), e.end(), std::inserter(both, both.end()));
  EXPECT_EQ(a, both);
  EXPECT_EQ(CountMatches(g, p, MatchMode::kVertices), vr.rows.size());
  EXPECT_EQ(CountMatches(g, p, MatchMode::kEdges), er.rows.size());
  EXPECT_EQ(CountMatches(g, p, MatchMode::kAll), ar.rows.size());
  // A self-loop under an either edge matches in both orientations, so rows repeat.
  EXPECT_EQ(CountMatches(g, p, MatchMode::kNone), none_rows.size());
}

TEST_F(MatchOracle, DistinctnessModesAreNestedSubsets) {
  for (const auto& q : testing::MiniQueries()) CheckModes(graph(), Bind(q.text).graph.pattern);
}

TEST(MatchOracleRandom, DistinctnessModesAreNestedSubsets) {
  for (uint64_t seed = 1; seed <= 8; ++seed) {
    auto cat = RandomGraphCatalog(seed, 15, 40);
    for (uint64_t k = 0; k < 4; ++k) {
      BoundQuery q = ParseQuery(RandomPatternQuery(seed * 31 + k, false), *cat);
      CheckModes(*q.graph.graph, q.graph.pattern);
    }
  }
}

}  // namespace
}  // namespace spjm
