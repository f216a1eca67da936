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

#ifndef SPJM_AGNOSTIC_H_
#define SPJM_AGNOSTIC_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spjm/join_order.h"
#include "spjm/plan.h"
#include "spjm/query.h"

namespace spjm {

// Element id pseudo-attribute of graph-derived tables.
inline constexpr const char* kIdAttr = "#id";

struct SpjTable {
  std::string alias;
  RelationPtr relation;
  std::string element_label;  // empty for relational inputs
  bool is_edge = false;
  PlanPtr scan;  // prebuilt leaf replacing the base-table scan
};

struct SpjColumn {
  int table = 0;
  std::string attr;

  bool operator==(const SpjColumn&) const = default;
};

struct SpjPredicate {
  SpjColumn lhs;
  CmpOp op = CmpOp::kEq;
  bool rhs_is_column = false;
  SpjColumn rhs;
  Value literal;
  // EVJoin equalities: edge table, vertex table, and whether the vertex is the source.
  int ev_edge = -1;
  int ev_vertex = -1;
  bool ev_source = true;

  std::vector<int> Tables() const;
  bool IsJoin() const { return op == CmpOp::kEq && rhs_is_column && lhs.table != rhs.table; }
};

struct SpjOutput {
  std::string name;
  SpjColumn column;
  bool label_fn = false;
};

// pi(sigma(R1 join ... join Rk)); joins are equalities between two tables.
struct SpjQuery {
  std::string graph;
  std::vector<SpjTable> tables;
  std::vector<SpjPredicate> joins;
  std::vector<SpjPredicate> filters;
  std::vector<SpjOutput> outputs;
  std::vector<std::vector<int>> distinct_groups;
  size_t vertex_aliases = 0;
  size_t edge_aliases = 0;

  std::string ColumnName(const SpjColumn& c) const { return tables[c.table].alias + "." + c.attr; }
};

// UNION ALL of directed variants; one variant unless the pattern has undirected edges.
struct AgnosticQuery {
  std::vector<SpjQuery> variants;
};

// Rewrites the matching operator into vertex/edge relation joins and merges it with the relational part.
AgnosticQuery TransformToSpj(const BoundQuery& q);

// Exact per-column distinct counts and filter selectivities, computed by scans and cached.
class TableStats {
 public:
  double Distinct(const Relation& rel, const std::string& attr);
  double FilteredRows(const SpjQuery& q, int table);

 private:
  std::map<std::pair<const Relation*, std::string>, double> ndv_;
};

JoinGraph BuildJoinGraph(const SpjQuery& q, TableStats& stats);

struct AgnosticOptions {
  bool graph_index = false;
  TableStats* stats = nullptr;  // shared cache; a local one when null
};

PlanPtr LowerSpj(const SpjQuery& q, const JoinTree& tree, const JoinGraph& jg, const AgnosticOptions& options);

// Transform, order joins, lower; variants are combined with UNION_ALL.
PlanPtr PlanAgnostic(const BoundQuery& q, const AgnosticOptions& options = {});

}  // namespace spjm

#endif  // SPJM_AGNOSTIC_H_
