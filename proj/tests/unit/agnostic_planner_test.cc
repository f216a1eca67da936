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

#include <cmath>
#include <random>

#include "spjm/agnostic.h"
#include "spjm/executor.h"
#include "spjm/verify.h"
#include "test_support.h"

namespace spjm {
namespace {

using testing::MiniQuery;

class AgnosticPlanner : public ::testing::Test {
 protected:
  void SetUp() override { session_ = testing::MiniSession(); }
  BoundQuery Bind(const std::string& text) const { return ParseQuery(text, session_->catalog()); }
  StringTable Run(const PlanNode& plan) const { return Execute(plan, session_->catalog()).ToStrings(); }

  std::unique_ptr<Session> session_;
};

TEST_F(AgnosticPlanner, CoLikedPatternHasThreeVertexAndThreeEdgeAliases) {
  AgnosticQuery aq = TransformToSpj(Bind(MiniQuery("co_liked_triangle_ids")));
  ASSERT_EQ(aq.variants.size(), 1u);
  const SpjQuery& s = aq.variants[0];
  EXPECT_EQ(s.vertex_aliases, 3u);
  EXPECT_EQ(s.edge_aliases, 3u);
  EXPECT_EQ(s.tables.size(), 6u);
  // One source and one target equality per edge.
  size_t ev = 0;
  for (const auto& j : s.joins) ev += j.ev_edge >= 0;
  EXPECT_EQ(ev, 6u);
  EXPECT_TRUE(s.distinct_groups.empty());
}

TEST_F(AgnosticPlanner, RelationalInputsAreExtraTables) {
  AgnosticQuery aq = TransformToSpj(Bind(MiniQuery("friends_of_tom_place")));
  ASSERT_EQ(aq.variants.size(), 1u);
  EXPECT_EQ(aq.variants[0].tables.size(), 7u);
  EXPECT_EQ(aq.variants[0].vertex_aliases, 3u);
  EXPECT_EQ(aq.variants[0].edge_aliases, 3u);
}

TEST_F(AgnosticPlanner, SingleVertexIsOneScan) {
  BoundQuery q = Bind(MiniQuery("all_persons"));
  AgnosticQuery aq = TransformToSpj(q);
  ASSERT_EQ(aq.variants.size(), 1u);
  EXPECT_EQ(aq.variants[0].tables.size(), 1u);
  EXPECT_TRUE(aq.variants[0].joins.empty());
  PlanPtr plan = PlanAgnostic(q);
  EXPECT_FALSE(PlanContains(*plan, OpKind::kHashJoin));
  EXPECT_TRUE(Run(*plan).SameMultiset(EvaluateReference(q)));
}

TEST_F(AgnosticPlanner, EitherEdgeBecomesUnionOfOrientations) {
  BoundQuery q = Bind(MiniQuery("knows_either_direction"));
  EXPECT_EQ(TransformToSpj(q).variants.size(), 2u);
  PlanPtr plan = PlanAgnostic(q);
  EXPECT_TRUE(PlanContains(*plan, OpKind::kUnionAll));
  EXPECT_EQ(Run(*plan).rows.size(), 8u);

  BoundQuery two = Bind(MiniQuery("two_hop_either_distinct_edges"));
  EXPECT_EQ(TransformToSpj(two).variants.size(), 4u);
}

TEST_F(AgnosticPlanner, DistinctModesAddGroups) {
  AgnosticQuery v = TransformToSpj(Bind(MiniQuery("two_hop_distinct_vertices")));
  ASSERT_EQ(v.variants[0].distinct_groups.size(), 1u);
  EXPECT_EQ(v.variants[0].distinct_groups[0].size(), 3u);
  AgnosticQuery a = TransformToSpj(Bind(MiniQuery("two_hop_distinct_all")));
  EXPECT_EQ(a.variants[0].distinct_groups.size(), 2u);
  EXPECT_TRUE(PlanContains(*PlanAgnostic(Bind(MiniQuery("two_hop_distinct_all"))), OpKind::kAllDistinct));
}

TEST_F(AgnosticPlanner, IndexSwitchesEvJoins) {
  BoundQuery q = Bind(MiniQuery("co_liked_triangle_ids"));
  PlanPtr plain = PlanAgnostic(q, {.graph_index = false});
  PlanPtr indexed = PlanAgnostic(q, {.graph_index = true});
  EXPECT_FALSE(PlanContains(*plain, OpKind::kEvIndexJoin));
  EXPECT_TRUE(PlanContains(*indexed, OpKind::kEvIndexJoin));
  for (OpKind k : PlanKinds(*indexed)) EXPECT_FALSE(IsGraphOp(k)) << OpKindName(k);
  for (OpKind k : PlanKinds(*plain)) EXPECT_FALSE(IsGraphOp(k)) << OpKindName(k);
}

TEST(JoinOrder, SmallChainPicksSelectiveJoinFirst) {
  JoinGraph g;
  g.aliases = {"a", "b", "c"};
  g.rows = {100, 1000, 10};
  g.conditions = {{0, 1, 100, 1000}, {1, 2, 1000, 10}};
  JoinTree t = OptimizeJoinOrder(g);
  EXPECT_DOUBLE_EQ(t.Root().cost, 11.0);
  EXPECT_DOUBLE_EQ(t.Root().rows, 1.0);
  uint64_t first = t.nodes[t.Root().left].tables;
  uint64_t second = t.nodes[t.Root().right].tables;
  EXPECT_TRUE(first == 0b110 || second == 0b110);
  EXPECT_DOUBLE_EQ(ExhaustiveJoinCost(g), 11.0);
}

TEST(JoinOrder, DisconnectedNeedsCrossProduct) {
  JoinGraph g;
  g.aliases = {"a", "b"};
  g.rows = {1, 1};
  EXPECT_EQ(testing::CodeOf([&] { OptimizeJoinOrder(g); }), ErrorCode::kCrossProductRequired);
}

JoinGraph RandomJoinGraph(std::mt19937_64& rng, int n) {
  JoinGraph g;
  for (int i = 0; i < n; ++i) {
    g.aliases.push_back("t" + std::to_string(i));
    g.rows.push_back(static_cast<double>(1 + rng() % 5000));
  }
  // Spanning tree plus a few extra edges.
  for (int i = 1; i < n; ++i) {
    int j = static_cast<int>(rng() % i);
    g.conditions.push_back({i, j, static_cast<double>(1 + rng() % 500), static_cast<double>(1 + rng() % 500)});
  }
  for (int k = 0; k < n / 2; ++k) {
    int a = static_cast<int>(rng() % n);
    int b = static_cast<int>(rng() % n);
    if (a != b) g.conditions.push_back({a, b, static_cast<double>(1 + rng() % 500), static_cast<double>(1 + rng() % 500)});
  }
  return g;
}

TEST(JoinOrder, DpMatchesExhaustive) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    JoinGraph g = RandomJoinGraph(rng, 2 + trial % 6);
    double dp = OptimizeJoinOrder(g).Root().cost;
    double ex = ExhaustiveJoinCost(g);
    EXPECT_LE(std::abs(dp - ex), 1e-9 * std::max(1.0, ex)) << trial;
  }
}

TEST(JoinOrder, TreeCoversEveryTable) {
  std::mt19937_64 rng(5);
  JoinGraph g = RandomJoinGraph(rng, 7);
  JoinTree t = OptimizeJoinOrder(g);
  EXPECT_EQ(t.Root().tables, (uint64_t{1} << 7) - 1);
  size_t leaves = 0;
  for (const auto& n : t.nodes) leaves += n.table >= 0;
  EXPECT_EQ(leaves, 7u);
}

TEST_F(AgnosticPlanner, CorpusMatchesReferenceInEveryMode) {
  for (const auto& fq : testing::MiniQueries()) {
    for (MatchMode mode : {MatchMode::kNone, MatchMode::kVertices, MatchMode::kEdges, MatchMode::kAll}) {
      BoundQuery q = Bind(fq.text);
      q.graph.mode = mode;
      StringTable ref = EvaluateReference(q);
      for (bool index : {false, true}) {
        StringTable got = Run(*PlanAgnostic(q, {.graph_index = index}));
        EXPECT_TRUE(got.SameMultiset(ref)) << fq.name << " mode " << MatchModeName(mode) << " index " << index;
      }
    }
  }
}

TEST(AgnosticPlannerRandom, MatchesReferenceOnRandomGraphs) {
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    auto cat = RandomGraphCatalog(seed, 30, 80);
    for (uint64_t k = 0; k < 4; ++k) {
      BoundQuery q = ParseQuery(RandomPatternQuery(seed * 17 + k, k % 2 == 1), *cat);
      StringTable ref = EvaluateReference(q);
      for (bool index : {false, true}) {
        EXPECT_TRUE(Execute(*PlanAgnostic(q, {.graph_index = index}), *cat).ToStrings().SameMultiset(ref))
            << RandomPatternQuery(seed * 17 + k, k % 2 == 1);
      }
    }
  }
}

}  // namespace
}  // namespace spjm
