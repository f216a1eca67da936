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

#ifndef SPJM_JOIN_ORDER_H_
#define SPJM_JOIN_ORDER_H_

#include <cstdint>
#include <string>
#include <vector>

namespace spjm {

// Equality between a column of table a and a column of table b.
struct JoinCondition {
  int a = 0;
  int b = 0;
  double ndv_a = 1;
  double ndv_b = 1;
};

struct JoinGraph {
  std::vector<std::string> aliases;
  std::vector<double> rows;  // estimated rows after single-table filters
  std::vector<JoinCondition> conditions;
};

struct JoinTreeNode {
  int table = -1;  // leaf when >= 0
  int left = -1;
  int right = -1;
  uint64_t tables = 0;       // bitmask over JoinGraph tables
  std::vector<int> conditions;  // conditions joining left and right
  double rows = 0;
  double cost = 0;
};

struct JoinTree {
  std::vector<JoinTreeNode> nodes;
  int root = -1;

  const JoinTreeNode& Root() const { return nodes[root]; }
};

// Estimated rows of joining `tables`: product of inputs over the product of
// max(ndv) of every condition inside the set.
double EstimateJoinRows(const JoinGraph& g, uint64_t tables);

// Cross-product-free join tree minimizing the sum of internal-node rows.
// Connected-subset DP up to dp_limit tables, greedy above. The smaller input
// is the left child. Ties go to the lexicographically smaller aliases.
// Throws CrossProductRequired when the join graph is disconnected.
JoinTree OptimizeJoinOrder(const JoinGraph& g, int dp_limit = 12);

// Minimum cost over all cross-product-free trees by exhaustive enumeration; for tests.
double ExhaustiveJoinCost(const JoinGraph& g);

}  // namespace spjm

#endif  // SPJM_JOIN_ORDER_H_
