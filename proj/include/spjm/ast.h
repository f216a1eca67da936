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

#ifndef SPJM_AST_H_
#define SPJM_AST_H_

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spjm/graph_view.h"
#include "spjm/value.h"

namespace spjm::ast {

struct ColumnRef {
  std::string qualifier;  // empty when unqualified
  std::string name;
  bool operator==(const ColumnRef&) const = default;
};

struct Literal {
  Value value;
  bool operator==(const Literal&) const = default;
};

using Operand = std::variant<ColumnRef, Literal>;

struct Comparison {
  Operand lhs;
  CmpOp op = CmpOp::kEq;
  Operand rhs;
  bool operator==(const Comparison&) const = default;
};

struct PropertyConstraint {
  std::string attr;
  Literal value;
  bool operator==(const PropertyConstraint&) const = default;
};

struct NodePattern {
  std::string var;  // empty when anonymous
  std::string label;
  std::vector<PropertyConstraint> props;
  bool operator==(const NodePattern&) const = default;
};

enum class ArrowDir { kForward, kBackward, kEither };

struct EdgePattern {
  std::string var;
  std::string label;
  ArrowDir dir = ArrowDir::kForward;
  std::vector<PropertyConstraint> props;
  bool operator==(const EdgePattern&) const = default;
};

// nodes.size() == edges.size() + 1
struct PathPattern {
  std::vector<NodePattern> nodes;
  std::vector<EdgePattern> edges;
  bool operator==(const PathPattern&) const = default;
};

enum class MatchMode { kNone, kVertices, kEdges, kAll };

enum class ColumnKind { kAttr, kId, kLabel };

struct GraphColumn {
  ColumnKind kind = ColumnKind::kAttr;
  std::string var;
  std::string attr;  // kAttr only
  std::string alias;
  bool operator==(const GraphColumn&) const = default;
};

struct GraphTable {
  std::string graph;
  MatchMode mode = MatchMode::kNone;
  std::vector<PathPattern> paths;
  std::vector<GraphColumn> columns;
  std::string alias;
  bool operator==(const GraphTable&) const = default;
};

struct TableRef {
  std::string name;
  std::string alias;
  bool operator==(const TableRef&) const = default;
};

using FromItem = std::variant<TableRef, GraphTable>;

struct FromEntry {
  FromItem item;
  bool explicit_join = false;  // JOIN ... ON, otherwise comma
  std::vector<Comparison> on;
  bool operator==(const FromEntry&) const = default;
};

struct SelectItem {
  bool star = false;
  ColumnRef column;
  std::string alias;
  bool operator==(const SelectItem&) const = default;
};

struct SelectStmt {
  std::vector<SelectItem> items;
  std::vector<FromEntry> from;
  std::vector<Comparison> where;
  bool operator==(const SelectStmt&) const = default;
};

struct VertexTableDecl {
  std::string relation;
  std::string label;  // empty -> relation name
  std::vector<std::string> properties;
  bool operator==(const VertexTableDecl&) const = default;
};

struct EdgeKeyDecl {
  std::string key_attr;
  std::string ref_relation;
  std::string ref_attr;
  bool operator==(const EdgeKeyDecl&) const = default;
};

struct EdgeTableDecl {
  std::string relation;
  std::string label;
  EdgeKeyDecl source;
  EdgeKeyDecl target;
  std::vector<std::string> properties;
  bool operator==(const EdgeTableDecl&) const = default;
};

struct CreateGraphStmt {
  std::string name;
  std::vector<VertexTableDecl> vertex_tables;
  std::vector<EdgeTableDecl> edge_tables;
  bool operator==(const CreateGraphStmt&) const = default;
};

using Statement = std::variant<SelectStmt, CreateGraphStmt>;

RGMapping ToMapping(const CreateGraphStmt& stmt);

}  // namespace spjm::ast

#endif  // SPJM_AST_H_
