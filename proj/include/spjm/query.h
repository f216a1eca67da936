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

#ifndef SPJM_QUERY_H_
#define SPJM_QUERY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spjm/ast.h"
#include "spjm/graph_view.h"
#include "spjm/storage.h"

namespace spjm {

using MatchMode = ast::MatchMode;

const char* MatchModeName(MatchMode mode);

// Predicate over the attributes of one graph element.
struct ElementPredicate {
  size_t attr = 0;
  CmpOp op = CmpOp::kEq;
  bool rhs_is_attr = false;
  size_t rhs_attr = 0;
  Value literal;

  bool operator==(const ElementPredicate&) const = default;
};

bool EvalElementPredicate(const Relation& rel, RowId rid, const ElementPredicate& p);
bool EvalElementPredicates(const Relation& rel, RowId rid, const std::vector<ElementPredicate>& ps);
std::string ElementPredicateText(const Relation& rel, const std::string& var, const ElementPredicate& p);

struct PatternVertex {
  std::string var;
  LabelId label = 0;
  std::vector<ElementPredicate> constraints;
};

// Directed src -> tgt unless `either`, which matches both orientations.
struct PatternEdge {
  std::string var;
  LabelId label = 0;
  int src = 0;
  int tgt = 0;
  bool either = false;
  std::vector<ElementPredicate> constraints;
};

using VertexMask = uint32_t;
using EdgeMask = uint64_t;

struct PatternGraph {
  std::vector<PatternVertex> vertices;
  std::vector<PatternEdge> edges;

  size_t n() const { return vertices.size(); }
  size_t m() const { return edges.size(); }
  VertexMask FullMask() const { return n() >= 32 ? ~0u : ((1u << n()) - 1); }

  int VertexIndex(const std::string& var) const;
  int EdgeIndex(const std::string& var) const;

  // Edges whose both endpoints are in `mask`.
  EdgeMask InducedEdges(VertexMask mask) const;
  bool Connected(VertexMask mask) const;
  bool Connected() const { return Connected(FullMask()); }
  VertexMask Neighbors(int v) const;

  // Sub-pattern with the given vertices and edges, reindexed in original order.
  PatternGraph Sub(VertexMask vertices, EdgeMask edges) const;
  PatternGraph Induced(VertexMask mask) const { return Sub(mask, InducedEdges(mask)); }

  bool HasConstraints() const;
  PatternGraph WithoutConstraints() const;
};

std::string PatternText(const GraphView& g, const PatternGraph& p);

enum class InputKind { kTable, kGraph };

struct InputColumn {
  std::string name;
  AttrType type = AttrType::kInt64;
  // Graph ID/LABEL columns: projectable, not usable in predicates.
  bool meta = false;
};

struct QueryInput {
  std::string alias;
  InputKind kind = InputKind::kTable;
  RelationPtr relation;  // kTable only
  std::vector<InputColumn> columns;
};

struct ColumnId {
  int input = 0;
  int column = 0;
  auto operator<=>(const ColumnId&) const = default;
};

struct BoundOperand {
  bool is_column = true;
  ColumnId column;
  Value literal;
};

struct BoundPredicate {
  BoundOperand lhs;
  CmpOp op = CmpOp::kEq;
  BoundOperand rhs;

  bool IsEquiJoin() const { return op == CmpOp::kEq && lhs.is_column && rhs.is_column && lhs.column.input != rhs.column.input; }
  std::vector<int> Inputs() const;
};

struct GraphColumnBinding {
  std::string alias;
  ast::ColumnKind kind = ast::ColumnKind::kAttr;
  bool is_edge = false;
  int element = 0;  // index into pattern vertices or edges
  size_t attr = 0;  // kAttr only
  AttrType type = AttrType::kString;
};

struct GraphComponent {
  GraphPtr graph;
  PatternGraph pattern;
  MatchMode mode = MatchMode::kNone;
  std::vector<GraphColumnBinding> columns;
};

struct OutputColumn {
  std::string name;
  ColumnId column;
};

// Validated query: inputs (one of them the graph table), conjunctive predicates, output list.
struct BoundQuery {
  std::vector<QueryInput> inputs;
  int graph_input = 0;
  GraphComponent graph;
  std::vector<BoundPredicate> predicates;
  std::vector<OutputColumn> outputs;

  const InputColumn& Column(ColumnId id) const { return inputs[id.input].columns[id.column]; }
  std::string ColumnName(ColumnId id) const { return inputs[id.input].alias + "." + Column(id).name; }
};

std::string PredicateText(const BoundQuery& q, const BoundPredicate& p);

BoundQuery Validate(const ast::SelectStmt& stmt, const Catalog& catalog);

// Convenience: parse + validate; throws if the text is not a SELECT.
BoundQuery ParseQuery(const std::string& text, const Catalog& catalog);

}  // namespace spjm

#endif  // SPJM_QUERY_H_
