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

#ifndef SPJM_PLAN_H_
#define SPJM_PLAN_H_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "spjm/graph_view.h"
#include "spjm/query.h"
#include "spjm/value.h"

namespace spjm {

enum class OpKind {
  // Relational.
  kScan,
  kFilter,
  kProject,
  kHashJoin,
  kEvIndexJoin,
  kUnionAll,
  kAllDistinct,
  // Graph. Only below SCAN_GRAPH_TABLE.
  kScanVertex,
  kScanEdge,
  kExpandEdge,
  kGetVertex,
  kExpand,
  kExpandIntersect,
  kGraphHashJoin,
  // Bridge.
  kScanGraphTable,
};

const char* OpKindName(OpKind kind);
OpKind ParseOpKind(const std::string& name);
bool IsGraphOp(OpKind kind);

// Column predicate on a relational row; operands are column names.
struct PlanPredicate {
  std::string lhs;
  CmpOp op = CmpOp::kEq;
  bool rhs_is_column = false;
  std::string rhs;
  Value literal;

  bool operator==(const PlanPredicate&) const = default;
};

// Predicate on the attributes of one graph element; operands are attribute names.
struct AttrPredicate {
  std::string attr;
  CmpOp op = CmpOp::kEq;
  bool rhs_is_attr = false;
  std::string rhs_attr;
  Value literal;

  bool operator==(const AttrPredicate&) const = default;
};

enum class ProjectFn { kCopy, kLabel };

struct ProjectItem {
  std::string name;
  std::string source;
  ProjectFn fn = ProjectFn::kCopy;

  bool operator==(const ProjectItem&) const = default;
};

// One leg of an expansion: from a bound vertex along an edge label.
struct ExpandLeg {
  std::string from;
  std::string edge;
  std::string edge_label;
  Direction dir = Direction::kOut;
  std::vector<AttrPredicate> edge_constraints;

  bool operator==(const ExpandLeg&) const = default;
};

// Join key of a graph hash join: the element itself when attr is empty.
struct GraphKey {
  std::string var;
  std::string attr;

  bool operator==(const GraphKey&) const = default;
};

enum class TableColumnKind { kAttr, kId, kLabel };

// One graph-calibrated projection column of SCAN_GRAPH_TABLE.
struct TableColumn {
  std::string name;
  TableColumnKind kind = TableColumnKind::kAttr;
  std::string var;
  std::string attr;

  bool operator==(const TableColumn&) const = default;
};

struct PlanNode;
using PlanPtr = std::shared_ptr<PlanNode>;

// Physical operator. Fields are shared across kinds; each kind reads the
// subset listed next to it. Columns, labels and attributes are by name and
// are resolved when the plan is opened.
struct PlanNode {
  OpKind kind = OpKind::kScan;
  std::vector<PlanPtr> children;

  // SCAN: relation, alias; element_label set -> also emits `alias.#id`.
  std::string relation;
  std::string alias;
  std::string graph;
  std::string element_label;

  // FILTER; residual checks of HASH_JOIN and EV_INDEX_JOIN.
  std::vector<PlanPredicate> predicates;

  // PROJECT.
  std::vector<ProjectItem> items;

  // HASH_JOIN: equal-length key column lists.
  std::vector<std::string> left_keys;
  std::vector<std::string> right_keys;
  bool build_left = false;

  // EV_INDEX_JOIN: probe column is an element column of the left child; the
  // right side is a base table (relation/alias/element_label) reached by
  // edge_label. from_edge: probe holds an edge, look up its `end` vertex;
  // otherwise probe holds a vertex, list its edges with dir.
  std::string probe;
  std::string edge_label;
  bool from_edge = false;
  bool end_is_source = true;
  Direction dir = Direction::kOut;

  // Graph operators.
  std::string var;    // produced vertex or edge variable
  std::string from;   // bound vertex variable
  std::string edge;   // edge variable (EXPAND_EDGE, GET_VERTEX)
  std::string label;  // label of `var`
  std::vector<AttrPredicate> constraints;       // on `var`
  std::vector<AttrPredicate> edge_constraints;  // EXPAND_EDGE
  std::vector<ExpandLeg> legs;                  // EXPAND_INTERSECT
  bool emit_edges = true;                       // EXPAND_INTERSECT

  // GRAPH_HASH_JOIN.
  std::vector<GraphKey> gleft_keys;
  std::vector<GraphKey> gright_keys;

  // ALL_DISTINCT: columns within each group must hold pairwise distinct elements.
  std::vector<std::vector<std::string>> groups;

  // SCAN_GRAPH_TABLE: graph, alias, columns; single child is the graph subplan.
  std::vector<TableColumn> columns;

  // Optimizer annotations; negative when absent.
  double est_rows = -1;
  double est_cost = -1;
};

// Conversions between index-based and name-based element predicates.
AttrPredicate ToAttrPredicate(const Relation& rel, const ElementPredicate& p);
std::vector<AttrPredicate> ToAttrPredicates(const Relation& rel, const std::vector<ElementPredicate>& ps);
// Throws SchemaMismatch on unknown attributes or mismatched types.
std::vector<ElementPredicate> ResolveAttrPredicates(const Relation& rel, const std::vector<AttrPredicate>& ps);

PlanPtr MakeNode(OpKind kind, std::vector<PlanPtr> children = {});

// Indented operator tree, one operator per line.
std::string ExplainText(const PlanNode& root);

std::string PlanToJson(const PlanNode& root);
PlanPtr PlanFromJson(const std::string& text);

// Pre-order walk.
void VisitPlan(const PlanNode& root, const std::function<void(const PlanNode&)>& f);

// Operator kinds in pre-order.
std::vector<OpKind> PlanKinds(const PlanNode& root);
bool PlanContains(const PlanNode& root, OpKind kind);

}  // namespace spjm

#endif  // SPJM_PLAN_H_
