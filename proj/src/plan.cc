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

#include "spjm/plan.h"

#include <array>
#include <cstdio>
#include <utility>

#include "spjm/error.h"

namespace spjm {

namespace {

constexpr std::array<std::pair<OpKind, const char*>, 15> kKindNames = {{
    {OpKind::kScan, "SCAN"},
    {OpKind::kFilter, "FILTER"},
    {OpKind::kProject, "PROJECT"},
    {OpKind::kHashJoin, "HASH_JOIN"},
    {OpKind::kEvIndexJoin, "EV_INDEX_JOIN"},
    {OpKind::kUnionAll, "UNION_ALL"},
    {OpKind::kAllDistinct, "ALL_DISTINCT"},
    {OpKind::kScanVertex, "SCAN_VERTEX"},
    {OpKind::kScanEdge, "SCAN_EDGE"},
    {OpKind::kExpandEdge, "EXPAND_EDGE"},
    {OpKind::kGetVertex, "GET_VERTEX"},
    {OpKind::kExpand, "EXPAND"},
    {OpKind::kExpandIntersect, "EXPAND_INTERSECT"},
    {OpKind::kGraphHashJoin, "GRAPH_HASH_JOIN"},
    {OpKind::kScanGraphTable, "SCAN_GRAPH_TABLE"},
}};

std::string Number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string PredText(const PlanPredicate& p) {
  return p.lhs + " " + CmpOpSymbol(p.op) + " " + (p.rhs_is_column ? p.rhs : ValueToLiteral(p.literal));
}

std::string AttrPredText(const std::vector<AttrPredicate>& ps) {
  if (ps.empty()) return "";
  std::string out = " {";
  for (size_t i = 0; i < ps.size(); ++i) {
    const auto& p = ps[i];
    out += (i ? " AND " : "") + p.attr + " " + CmpOpSymbol(p.op) + " " +
           (p.rhs_is_attr ? p.rhs_attr : ValueToLiteral(p.literal));
  }
  return out + "}";
}

std::string EdgeText(const std::string& var, const std::string& label, Direction dir,
                     const std::vector<AttrPredicate>& cs) {
  std::string body = "[" + var + ":" + label + AttrPredText(cs) + "]";
  switch (dir) {
    case Direction::kOut:
      return "-" + body + "->";
    case Direction::kIn:
      return "<-" + body + "-";
    case Direction::kBoth:
      return "-" + body + "-";
  }
  return body;
}

std::string Join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string Describe(const PlanNode& n) {
  std::string s = OpKindName(n.kind);
  switch (n.kind) {
    case OpKind::kScan:
      s += " " + n.relation + " AS " + n.alias;
      if (!n.element_label.empty()) s += " [#id " + n.element_label + "]";
      break;
    case OpKind::kFilter: {
      std::vector<std::string> ps;
      for (const auto& p : n.predicates) ps.push_back(PredText(p));
      s += " " + Join(ps, " AND ");
      break;
    }
    case OpKind::kProject: {
      std::vector<std::string> items;
      for (const auto& it : n.items) {
        std::string src = it.fn == ProjectFn::kLabel ? "LABEL(" + it.source + ")" : it.source;
        items.push_back(src == it.name ? src : src + " AS " + it.name);
      }
      s += " " + Join(items, ", ");
      break;
    }
    case OpKind::kHashJoin: {
      std::vector<std::string> ks;
      for (size_t i = 0; i < n.left_keys.size(); ++i) ks.push_back(n.left_keys[i] + " = " + n.right_keys[i]);
      s += " " + Join(ks, " AND ");
      if (n.build_left) s += " build=left";
      if (!n.predicates.empty()) {
        std::vector<std::string> ps;
        for (const auto& p : n.predicates) ps.push_back(PredText(p));
        s += " residual " + Join(ps, " AND ");
      }
      break;
    }
    case OpKind::kEvIndexJoin: {
      s += " " + n.probe + (n.from_edge ? std::string(n.end_is_source ? " source" : " target") + " ->"
                                        : std::string(" ") + DirectionName(n.dir) + " " + n.edge_label + " ->");
      s += " " + n.relation + " AS " + n.alias;
      if (!n.predicates.empty()) {
        std::vector<std::string> ps;
        for (const auto& p : n.predicates) ps.push_back(PredText(p));
        s += " residual " + Join(ps, " AND ");
      }
      break;
    }
    case OpKind::kUnionAll:
      break;
    case OpKind::kAllDistinct: {
      for (const auto& g : n.groups) s += " {" + Join(g, ", ") + "}";
      break;
    }
    case OpKind::kScanVertex:
      s += " (" + n.var + ":" + n.label + AttrPredText(n.constraints) + ")";
      break;
    case OpKind::kScanEdge:
      s += " [" + n.var + ":" + n.label + AttrPredText(n.constraints) + "]";
      break;
    case OpKind::kExpandEdge:
      s += " (" + n.from + ")" + EdgeText(n.var, n.label, n.dir, n.edge_constraints);
      break;
    case OpKind::kGetVertex:
      s += " [" + n.edge + "] " + DirectionName(n.dir) + " of (" + n.from + ") -> (" + n.var + ":" + n.label +
           AttrPredText(n.constraints) + ")";
      break;
    case OpKind::kExpand:
      s += " (" + n.from + ")" + EdgeText(n.edge, n.edge_label, n.dir, {}) + "(" + n.var + ":" + n.label +
           AttrPredText(n.constraints) + ")";
      break;
    case OpKind::kExpandIntersect: {
      std::vector<std::string> legs;
      for (const auto& l : n.legs) legs.push_back("(" + l.from + ")" + EdgeText(l.edge, l.edge_label, l.dir, l.edge_constraints));
      s += " " + Join(legs, ", ") + " => (" + n.var + ":" + n.label + AttrPredText(n.constraints) + ")";
      if (!n.emit_edges) s += " [edges trimmed]";
      break;
    }
    case OpKind::kGraphHashJoin: {
      std::vector<std::string> ks;
      auto key = [](const GraphKey& k) { return k.attr.empty() ? k.var : k.var + "." + k.attr; };
      for (size_t i = 0; i < n.gleft_keys.size(); ++i) ks.push_back(key(n.gleft_keys[i]) + " = " + key(n.gright_keys[i]));
      s += " " + Join(ks, " AND ");
      if (n.build_left) s += " build=left";
      break;
    }
    case OpKind::kScanGraphTable: {
      std::vector<std::string> cols;
      for (const auto& c : n.columns) {
        std::string src = c.kind == TableColumnKind::kId      ? "ID(" + c.var + ")"
                          : c.kind == TableColumnKind::kLabel ? "LABEL(" + c.var + ")"
                                                              : c.var + "." + c.attr;
        cols.push_back(src + " AS " + c.name);
      }
      s += " " + n.graph + " AS " + n.alias + " COLUMNS (" + Join(cols, ", ") + ")";
      break;
    }
  }
  if (n.est_rows >= 0) s += "  rows~" + Number(n.est_rows);
  if (n.est_cost >= 0) s += " cost~" + Number(n.est_cost);
  return s;
}

void ExplainRec(const PlanNode& n, int depth, std::string& out) {
  out += std::string(2 * depth, ' ') + Describe(n) + "\n";
  for (const auto& c : n.children) ExplainRec(*c, depth + 1, out);
}

}  // namespace

const char* OpKindName(OpKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

OpKind ParseOpKind(const std::string& name) {
  for (const auto& [k, n] : kKindNames) {
    if (name == n) return k;
  }
  throw Error(ErrorCode::kSchemaMismatch, "unknown operator kind '" + name + "'");
}

bool IsGraphOp(OpKind kind) {
  switch (kind) {
    case OpKind::kScanVertex:
    case OpKind::kScanEdge:
    case OpKind::kExpandEdge:
    case OpKind::kGetVertex:
    case OpKind::kExpand:
    case OpKind::kExpandIntersect:
    case OpKind::kGraphHashJoin:
      return true;
    default:
      return false;
  }
}

AttrPredicate ToAttrPredicate(const Relation& rel, const ElementPredicate& p) {
  AttrPredicate out;
  out.attr = rel.schema().attribute(p.attr).name;
  out.op = p.op;
  out.rhs_is_attr = p.rhs_is_attr;
  if (p.rhs_is_attr) {
    out.rhs_attr = rel.schema().attribute(p.rhs_attr).name;
  } else {
    out.literal = p.literal;
  }
  return out;
}

std::vector<AttrPredicate> ToAttrPredicates(const Relation& rel, const std::vector<ElementPredicate>& ps) {
  std::vector<AttrPredicate> out;
  for (const auto& p : ps) out.push_back(ToAttrPredicate(rel, p));
  return out;
}

std::vector<ElementPredicate> ResolveAttrPredicates(const Relation& rel, const std::vector<AttrPredicate>& ps) {
  std::vector<ElementPredicate> out;
  auto index = [&](const std::string& name) {
    auto i = rel.schema().IndexOf(name);
    if (!i) throw Error(ErrorCode::kSchemaMismatch, "relation " + rel.name() + " has no attribute " + name);
    return *i;
  };
  for (const auto& p : ps) {
    ElementPredicate e;
    e.attr = index(p.attr);
    e.op = p.op;
    e.rhs_is_attr = p.rhs_is_attr;
    bool lhs_str = IsStringType(rel.schema().attribute(e.attr).type);
    if (p.rhs_is_attr) {
      e.rhs_attr = index(p.rhs_attr);
      if (lhs_str != IsStringType(rel.schema().attribute(e.rhs_attr).type)) {
        throw Error(ErrorCode::kSchemaMismatch, "type mismatch in constraint on " + p.attr);
      }
    } else {
      e.literal = p.literal;
      if (lhs_str == IsInt(p.literal)) throw Error(ErrorCode::kSchemaMismatch, "type mismatch in constraint on " + p.attr);
    }
    out.push_back(std::move(e));
  }
  return out;
}

PlanPtr MakeNode(OpKind kind, std::vector<PlanPtr> children) {
  auto n = std::make_shared<PlanNode>();
  n->kind = kind;
  n->children = std::move(children);
  return n;
}

std::string ExplainText(const PlanNode& root) {
  std::string out;
  ExplainRec(root, 0, out);
  return out;
}

void VisitPlan(const PlanNode& root, const std::function<void(const PlanNode&)>& f) {
  f(root);
  for (const auto& c : root.children) VisitPlan(*c, f);
}

std::vector<OpKind> PlanKinds(const PlanNode& root) {
  std::vector<OpKind> out;
  VisitPlan(root, [&](const PlanNode& n) { out.push_back(n.kind); });
  return out;
}

bool PlanContains(const PlanNode& root, OpKind kind) {
  bool found = false;
  VisitPlan(root, [&](const PlanNode& n) { found = found || n.kind == kind; });
  return found;
}

}  // namespace spjm
