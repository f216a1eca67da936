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

#ifndef SPJM_ORACLE_H_
#define SPJM_ORACLE_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spjm/graph_view.h"
#include "spjm/query.h"

namespace spjm {

// Rows bind pattern vertices (declaration order) followed by pattern edges.
struct GraphRelation {
  std::vector<std::string> vars;
  std::vector<std::vector<ElementId>> rows;
};

// Restricts matching to a sub-instance of the graph. Null members allow everything.
struct InstanceFilter {
  std::function<bool(ElementId)> vertex;
  std::function<bool(ElementId)> edge;
};

// Homomorphic bindings of `p`, filtered by constraints and `mode`, sorted by ElementId.
GraphRelation MatchBruteforce(const GraphView& g, const PatternGraph& p, MatchMode mode,
                              const InstanceFilter* filter = nullptr);

uint64_t CountMatches(const GraphView& g, const PatternGraph& p, MatchMode mode = MatchMode::kNone);

// Graph-calibrated projection. The output relation is named "graph_table".
RelationPtr ProjectColumns(const GraphView& g, const GraphRelation& gr,
                           const std::vector<GraphColumnBinding>& columns, const PatternGraph& p);

// Rows of rendered cells. Comparisons in tests are on sorted rows.
struct StringTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::vector<std::vector<std::string>> SortedRows() const;
  bool SameMultiset(const StringTable& other) const;
  std::string ToCsv(bool header = true) const;
};

// Whole query by brute force: oracle matching, projection, nested-loop joins.
StringTable EvaluateReference(const BoundQuery& q);

// One CSV line per binding, sorted; the golden-file format.
std::string GraphRelationCsv(const GraphView& g, const GraphRelation& gr);

}  // namespace spjm

#endif  // SPJM_ORACLE_H_
