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

#ifndef SPJM_CONVERGED_H_
#define SPJM_CONVERGED_H_

#include <set>
#include <string>
#include <vector>

#include "spjm/agnostic.h"
#include "spjm/glogue.h"
#include "spjm/plan.h"
#include "spjm/query.h"

namespace spjm {

enum class DecompKind {
  kVertex,    // single-vertex leaf
  kStar,      // complete star leaf; always a right child
  kExtend,    // left = sub-pattern without the star center, right = star
  kHashJoin,  // two overlapping induced sub-patterns
};

const char* DecompKindName(DecompKind kind);

struct DecompNode {
  DecompKind kind = DecompKind::kVertex;
  VertexMask vertices = 0;
  EdgeMask edges = 0;
  int center = -1;  // kVertex: the vertex; kStar: the star center
  int left = -1;
  int right = -1;
  double rows = 0;  // estimated matches
  double cost = 0;  // accumulated cost of the subtree
};

struct DecompositionTree {
  PatternGraph pattern;
  bool index = true;
  std::vector<DecompNode> nodes;
  int root = -1;

  const DecompNode& Root() const { return nodes[root]; }
  double Cost() const { return Root().cost; }
};

// Cost-based search over induced connected sub-patterns. With an index,
// star extensions cost |L| times the average degree (one leg) or the average
// intersection size (more legs); otherwise every join costs |L| * |R|.
// Throws SizeLimit above 12 pattern vertices.
DecompositionTree SearchGraphPlan(const PatternGraph& p, const GraphView& g, CardinalityEstimator& est, bool index);

// Minimum cost over every legal tree, enumerated without memoization. For tests.
double ExhaustiveMinCost(const PatternGraph& p, const GraphView& g, CardinalityEstimator& est, bool index);
// Number of legal trees under the same split rules.
size_t ExhaustiveTreeCount(const PatternGraph& p);

// Empty when the tree is legal; otherwise the first violation.
std::string ValidateDecomposition(const DecompositionTree& t);

std::string DecompositionText(const DecompositionTree& t);

// Moves predicates over the attributes of a single pattern element into
// that element's constraints.
BoundQuery ApplyFilterIntoMatch(const BoundQuery& q);

// Physical graph subplan of a tree: expansions and intersections with an
// index, attribute-key hash joins of scans without.
PlanPtr LowerDecomposition(const DecompositionTree& t, const GraphView& g);

// Fuses EXPAND_EDGE + GET_VERTEX pairs whose edge is never used, stops
// intersections from emitting unused edges, and drops the matching
// SCAN_GRAPH_TABLE columns. `used` holds the names of graph table columns
// referenced above the scan. Returns the number of fused pairs.
int ApplyTrimAndFuse(PlanNode& graph_table, const std::set<std::string>& used, MatchMode mode);

struct ConvergedOptions {
  bool graph_index = true;
  bool filter_into_match = true;
  bool trim_and_fuse = true;
  TableStats* stats = nullptr;
};

struct ConvergedPlan {
  PlanPtr plan;
  std::vector<DecompositionTree> trees;  // one per directed variant without index
  double graph_rows = 0;                 // SCAN_GRAPH_TABLE estimate
  int fused = 0;
};

ConvergedPlan OptimizeConverged(const BoundQuery& q, CardinalityEstimator& est, const ConvergedOptions& options = {});

}  // namespace spjm

#endif  // SPJM_CONVERGED_H_
