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

#include "spjm/plan_space.h"
#include "test_support.h"

namespace spjm {
namespace {

using testing::CodeOf;

BigInt Pow(int base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

BigInt Catalan(int n) {
  BigInt c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

// Ordered cross-product-free binary trees over a chain of k relations:
// every bracketing of the chain, times two child orders per join.
BigInt ChainTrees(int k) { return Catalan(k - 1) * Pow(2, k - 1); }

PatternGraph SingleVertex() {
  PatternGraph p;
  p.vertices.push_back({"v0", 0, {}});
  return p;
}

TEST(PlanSpace, SingleVertexIsOnePlan) {
  EXPECT_EQ(CountAgnostic(SingleVertex()), 1);
  EXPECT_EQ(CountAware(SingleVertex()), 1);
}

TEST(PlanSpace, SingleEdge) {
  PatternGraph p = PathPattern(1);
  EXPECT_EQ(p.n(), 2u);
  EXPECT_EQ(p.m(), 1u);
  EXPECT_EQ(CountAware(p), 2);
  EXPECT_EQ(CountAgnostic(p), ChainTrees(3));
  EXPECT_EQ(CountAgnostic(p), 8);
}

TEST(PlanSpace, PathAgnosticMatchesChainClosedForm) {
  for (int m = 1; m <= 8; ++m) EXPECT_EQ(CountAgnostic(PathPattern(m)), ChainTrees(2 * m + 1)) << m;
}

TEST(PlanSpace, PathProperties) {
  BigInt prev_agnostic = 0;
  BigInt prev_aware = 0;
  for (int m = 2; m <= 8; ++m) {
    PatternGraph p = PathPattern(m);
    BigInt ag = CountAgnostic(p);
    BigInt aw = CountAware(p);
    int n = static_cast<int>(p.n());
    EXPECT_LE(aw, Pow(4, n - 1)) << m;
    EXPECT_LE(aw, ag) << m;
    if (m >= 3) {
      EXPECT_GE(ag, 4 * prev_agnostic) << m;
      // ag/aw >= 2 * prev_ag/prev_aw, compared without division.
      EXPECT_GE(ag * prev_aware, 2 * prev_agnostic * aw) << m;
    }
    EXPECT_GT(ag, prev_agnostic);
    prev_agnostic = ag;
    prev_aware = aw;
  }
}

TEST(PlanSpace, AwareNeverExceedsAgnostic) {
  for (const char* family : {"path", "cycle", "star", "clique"}) {
    for (int size = 1; size <= 5; ++size) {
      if ((std::string(family) == "cycle" || std::string(family) == "clique") && size < 3) continue;
      PatternGraph p = FamilyPattern(family, size);
      EXPECT_GE(CountAware(p), 1);
      EXPECT_LE(CountAware(p), CountAgnostic(p)) << family << size;
    }
  }
}

TEST(PlanSpace, MemoizedCountsMatchNaive) {
  std::vector<PatternGraph> ps = {PathPattern(1), PathPattern(2), PathPattern(3), PathPattern(4),
                                  CyclePattern(3), CyclePattern(4), StarPattern(2), StarPattern(3),
                                  CliquePattern(3), SingleVertex()};
  for (const auto& p : ps) {
    EXPECT_EQ(CountAgnostic(p), CountAgnosticNaive(p)) << p.n() << "/" << p.m();
    EXPECT_EQ(CountAware(p), CountAwareNaive(p)) << p.n() << "/" << p.m();
  }
  EXPECT_EQ(CountAware(CliquePattern(4)), CountAwareNaive(CliquePattern(4)));
  EXPECT_EQ(CodeOf([] { CountAgnosticNaive(CliquePattern(4)); }), ErrorCode::kSizeLimit);
}

TEST(PlanSpace, FamilyShapes) {
  EXPECT_EQ(CyclePattern(4).m(), 4u);
  EXPECT_EQ(StarPattern(3).n(), 4u);
  EXPECT_EQ(CliquePattern(4).m(), 6u);
  EXPECT_TRUE(CliquePattern(5).Connected());
  EXPECT_EQ(CodeOf([] { FamilyPattern("lattice", 3); }), ErrorCode::kInvalidArgument);
}

TEST(PlanSpace, SizeLimits) {
  EXPECT_EQ(CodeOf([] { CountAgnostic(PathPattern(9)); }), ErrorCode::kSizeLimit);
  EXPECT_EQ(CodeOf([] { CountAware(PathPattern(10)); }), ErrorCode::kSizeLimit);
}

TEST(PlanSpace, ReportMarksSizeLimit) {
  auto rows = SpaceReport("path", 8, 9);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].agnostic, "2317200261120");
  EXPECT_EQ(rows[0].aware, "256");
  EXPECT_EQ(rows[1].agnostic, "SizeLimit");
  EXPECT_EQ(rows[1].aware, "512");
  EXPECT_TRUE(rows[1].ratio.empty());
  std::string csv = SpaceReportCsv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "family,size,agnostic_count,aware_count,ratio,micros_agnostic,micros_aware");
  EXPECT_NE(SpaceReportText(rows).find("SizeLimit"), std::string::npos);
}

}  // namespace
}  // namespace spjm
