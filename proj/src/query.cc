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

#include "spjm/query.h"

#include <algorithm>
#include <map>
#include <set>

#include "spjm/error.h"
#include "spjm/parser.h"

namespace spjm {

const char* MatchModeName(MatchMode mode) {
  switch (mode) {
    case MatchMode::kNone:
      return "none";
    case MatchMode::kVertices:
      return "distinct-vertices";
    case MatchMode::kEdges:
      return "distinct-edges";
    case MatchMode::kAll:
      return "distinct-all";
  }
  return "?";
}

bool EvalElementPredicate(const Relation& rel, RowId rid, const ElementPredicate& p) {
  const auto& col = rel.column(p.attr);
  if (col.index() == 0) {
    int64_t a = std::get<0>(col)[rid];
    int64_t b = p.rhs_is_attr ? rel.ints(p.rhs_attr)[rid] : std::get<int64_t>(p.literal);
    return ApplyCmp(p.op, a, b);
  }
  const std::string& a = std::get<1>(col)[rid];
  const std::string& b = p.rhs_is_attr ? rel.strings(p.rhs_attr)[rid] : std::get<std::string>(p.literal);
  return ApplyCmp(p.op, a, b);
}

bool EvalElementPredicates(const Relation& rel, RowId rid, const std::vector<ElementPredicate>& ps) {
  for (const auto& p : ps) {
    if (!EvalElementPredicate(rel, rid, p)) return false;
  }
  return true;
}

std::string ElementPredicateText(const Relation& rel, const std::string& var, const ElementPredicate& p) {
  std::string rhs = p.rhs_is_attr ? var + "." + rel.schema().attribute(p.rhs_attr).name : ValueToLiteral(p.literal);
  return var + "." + rel.schema().attribute(p.attr).name + " " + CmpOpSymbol(p.op) + " " + rhs;
}

int PatternGraph::VertexIndex(const std::string& var) const {
  for (size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].var == var) return static_cast<int>(i);
  }
  return -1;
}

int PatternGraph::EdgeIndex(const std::string& var) const {
  for (size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].var == var) return static_cast<int>(i);
  }
  return -1;
}

EdgeMask PatternGraph::InducedEdges(VertexMask mask) const {
  EdgeMask out = 0;
  for (size_t i = 0; i < edges.size(); ++i) {
    if ((mask >> edges[i].src & 1) && (mask >> edges[i].tgt & 1)) out |= EdgeMask{1} << i;
  }
  return out;
}

VertexMask PatternGraph::Neighbors(int v) const {
  VertexMask out = 0;
  for (const auto& e : edges) {
    if (e.src == v) out |= 1u << e.tgt;
    if (e.tgt == v) out |= 1u << e.src;
  }
  return out;
}

bool PatternGraph::Connected(VertexMask mask) const {
  if (mask == 0) return false;
  VertexMask seen = mask & (~mask + 1);
  VertexMask frontier = seen;
  while (frontier) {
    VertexMask next = 0;
    for (const auto& e : edges) {
      bool s_in = (frontier >> e.src) & 1;
      bool t_in = (frontier >> e.tgt) & 1;
      if (s_in && (mask >> e.tgt & 1)) next |= 1u << e.tgt;
      if (t_in && (mask >> e.src & 1)) next |= 1u << e.src;
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == mask;
}

PatternGraph PatternGraph::Sub(VertexMask vmask, EdgeMask emask) const {
  PatternGraph out;
  std::vector<int> remap(vertices.size(), -1);
  for (size_t i = 0; i < vertices.size(); ++i) {
    if (vmask >> i & 1) {
      remap[i] = static_cast<int>(out.vertices.size());
      out.vertices.push_back(vertices[i]);
    }
  }
  for (size_t i = 0; i < edges.size(); ++i) {
    if (!(emask >> i & 1)) continue;
    PatternEdge e = edges[i];
    e.src = remap[e.src];
    e.tgt = remap[e.tgt];
    out.edges.push_back(std::move(e));
  }
  return out;
}

bool PatternGraph::HasConstraints() const {
  for (const auto& v : vertices) {
    if (!v.constraints.empty()) return true;
  }
  for (const auto& e : edges) {
    if (!e.constraints.empty()) return true;
  }
  return false;
}

PatternGraph PatternGraph::WithoutConstraints() const {
  PatternGraph out = *this;
  for (auto& v : out.vertices) v.constraints.clear();
  for (auto& e : out.edges) e.constraints.clear();
  return out;
}

std::string PatternText(const GraphView& g, const PatternGraph& p) {
  std::string out;
  for (size_t i = 0; i < p.vertices.size(); ++i) {
    const auto& v = p.vertices[i];
    out += (i ? ", (" : "(") + v.var + ":" + g.label_name(v.label);
    const Relation& rel = *g.label(v.label).relation;
    for (size_t c = 0; c < v.constraints.size(); ++c) {
      out += (c ? " AND " : " WHERE ") + ElementPredicateText(rel, v.var, v.constraints[c]);
    }
    out += ")";
  }
  for (const auto& e : p.edges) {
    out += ", (" + p.vertices[e.src].var + ")-[" + e.var + ":" + g.label_name(e.label);
    const Relation& rel = *g.label(e.label).relation;
    for (size_t c = 0; c < e.constraints.size(); ++c) {
      out += (c ? " AND " : " WHERE ") + ElementPredicateText(rel, e.var, e.constraints[c]);
    }
    out += std::string("]") + (e.either ? "-" : "->") + "(" + p.vertices[e.tgt].var + ")";
  }
  return out;
}

std::vector<int> BoundPredicate::Inputs() const {
  std::vector<int> out;
  if (lhs.is_column) out.push_back(lhs.column.input);
  if (rhs.is_column && std::find(out.begin(), out.end(), rhs.column.input) == out.end()) {
    out.push_back(rhs.column.input);
  }
  return out;
}

std::string PredicateText(const BoundQuery& q, const BoundPredicate& p) {
  auto text = [&](const BoundOperand& o) {
    return o.is_column ? q.ColumnName(o.column) : ValueToLiteral(o.literal);
  };
  return text(p.lhs) + " " + CmpOpSymbol(p.op) + " " + text(p.rhs);
}

namespace {

AttrType LiteralType(const Value& v) { return IsInt(v) ? AttrType::kInt64 : AttrType::kString; }

class Binder {
 public:
  Binder(const ast::SelectStmt& stmt, const Catalog& catalog) : stmt_(stmt), catalog_(catalog) {}

  BoundQuery Run() {
    const ast::GraphTable* gt = nullptr;
    for (const auto& entry : stmt_.from) {
      if (const auto* g = std::get_if<ast::GraphTable>(&entry.item)) {
        if (gt) throw Error(ErrorCode::kUnsupported, "a query may contain only one GRAPH_TABLE");
        gt = g;
      }
    }
    if (!gt) throw Error(ErrorCode::kUnsupported, "a query needs one GRAPH_TABLE");
    BindGraph(*gt);
    std::set<std::string> aliases;
    for (const auto& entry : stmt_.from) {
      QueryInput in;
      if (const auto* t = std::get_if<ast::TableRef>(&entry.item)) {
        in.kind = InputKind::kTable;
        in.relation = catalog_.GetRelation(t->name);
        in.alias = t->alias.empty() ? t->name : t->alias;
        for (const auto& a : in.relation->schema().attributes()) in.columns.push_back({a.name, a.type, false});
      } else {
        const auto& g = std::get<ast::GraphTable>(entry.item);
        in.kind = InputKind::kGraph;
        in.alias = g.alias.empty() ? g.graph : g.alias;
        for (const auto& c : q_.graph.columns) {
          in.columns.push_back({c.alias, c.type, c.kind != ast::ColumnKind::kAttr});
        }
        q_.graph_input = static_cast<int>(q_.inputs.size());
      }
      if (!aliases.insert(in.alias).second) throw Error(ErrorCode::kDuplicateName, "alias " + in.alias + " used twice");
      q_.inputs.push_back(std::move(in));
    }
    for (const auto& entry : stmt_.from) {
      for (const auto& c : entry.on) q_.predicates.push_back(BindPredicate(c));
    }
    for (const auto& c : stmt_.where) q_.predicates.push_back(BindPredicate(c));
    for (const auto& item : stmt_.items) {
      if (item.star) {
        for (size_t i = 0; i < q_.inputs.size(); ++i) {
          for (size_t c = 0; c < q_.inputs[i].columns.size(); ++c) {
            q_.outputs.push_back({q_.inputs[i].columns[c].name, {static_cast<int>(i), static_cast<int>(c)}});
          }
        }
        continue;
      }
      ColumnId id = Resolve(item.column);
      q_.outputs.push_back({item.alias.empty() ? item.column.name : item.alias, id});
    }
    return std::move(q_);
  }

 private:
  ColumnId Resolve(const ast::ColumnRef& ref) {
    std::optional<ColumnId> found;
    for (size_t i = 0; i < q_.inputs.size(); ++i) {
      if (!ref.qualifier.empty() && q_.inputs[i].alias != ref.qualifier) continue;
      for (size_t c = 0; c < q_.inputs[i].columns.size(); ++c) {
        if (q_.inputs[i].columns[c].name != ref.name) continue;
        if (found) throw Error(ErrorCode::kUnknownAttribute, "ambiguous column " + ref.name);
        found = ColumnId{static_cast<int>(i), static_cast<int>(c)};
      }
    }
    if (!found) {
      if (!ref.qualifier.empty()) {
        bool alias_known = std::any_of(q_.inputs.begin(), q_.inputs.end(),
                                       [&](const QueryInput& in) { return in.alias == ref.qualifier; });
        if (!alias_known) throw Error(ErrorCode::kUnknownAlias, ref.qualifier);
      }
      throw Error(ErrorCode::kUnknownAttribute,
                  (ref.qualifier.empty() ? "" : ref.qualifier + ".") + ref.name);
    }
    return *found;
  }

  BoundOperand BindOperand(const ast::Operand& o, AttrType& type) {
    BoundOperand b;
    if (const auto* lit = std::get_if<ast::Literal>(&o)) {
      b.is_column = false;
      b.literal = lit->value;
      type = LiteralType(lit->value);
      return b;
    }
    b.column = Resolve(std::get<ast::ColumnRef>(o));
    const InputColumn& col = q_.Column(b.column);
    if (col.meta) {
      throw Error(ErrorCode::kUnsupported, "graph ID/LABEL column " + col.name + " cannot be used in a predicate");
    }
    type = col.type;
    return b;
  }

  BoundPredicate BindPredicate(const ast::Comparison& c) {
    BoundPredicate p;
    AttrType lt;
    AttrType rt;
    p.lhs = BindOperand(c.lhs, lt);
    p.op = c.op;
    p.rhs = BindOperand(c.rhs, rt);
    if (!Comparable(lt, rt)) {
      throw Error(ErrorCode::kTypeMismatch, std::string(AttrTypeName(lt)) + " compared with " + AttrTypeName(rt));
    }
    if (!p.lhs.is_column && !p.rhs.is_column) {
      throw Error(ErrorCode::kUnsupported, "predicate between two literals");
    }
    if (!p.lhs.is_column) {
      std::swap(p.lhs, p.rhs);
      p.op = FlipCmp(p.op);
    }
    return p;
  }

  ElementPredicate BindConstraint(const Relation& rel, const ast::PropertyConstraint& pc) {
    auto idx = rel.schema().IndexOf(pc.attr);
    if (!idx) throw Error(ErrorCode::kUnknownAttribute, rel.name() + "." + pc.attr);
    if (!Comparable(rel.schema().attribute(*idx).type, LiteralType(pc.value.value))) {
      throw Error(ErrorCode::kTypeMismatch, rel.name() + "." + pc.attr + " compared with literal " +
                                                ValueToLiteral(pc.value.value));
    }
    ElementPredicate p;
    p.attr = *idx;
    p.op = CmpOp::kEq;
    p.literal = pc.value.value;
    return p;
  }

  std::string FreshName(const std::string& prefix, int& counter, const std::set<std::string>& taken) {
    while (true) {
      std::string name = prefix + std::to_string(counter++);
      if (!taken.count(name)) return name;
    }
  }

  void BindGraph(const ast::GraphTable& gt) {
    GraphComponent& gc = q_.graph;
    gc.graph = catalog_.GetGraph(gt.graph);
    gc.mode = gt.mode;
    const GraphView& g = *gc.graph;
    PatternGraph& p = gc.pattern;
    std::set<std::string> user_names;
    for (const auto& path : gt.paths) {
      for (const auto& n : path.nodes) {
        if (!n.var.empty()) user_names.insert(n.var);
      }
      for (const auto& e : path.edges) {
        if (!e.var.empty()) user_names.insert(e.var);
      }
    }
    int anon_v = 0;
    int anon_e = 0;
    std::vector<std::string> vertex_label_names;
    auto vertex = [&](const ast::NodePattern& n) {
      std::string var = n.var.empty() ? FreshName("_v", anon_v, user_names) : n.var;
      int idx = p.VertexIndex(var);
      if (idx < 0) {
        if (p.EdgeIndex(var) >= 0) throw Error(ErrorCode::kDuplicateName, var + " names both a vertex and an edge");
        idx = static_cast<int>(p.vertices.size());
        PatternVertex v;
        v.var = var;
        v.label = kNoLabel;
        p.vertices.push_back(v);
      }
      PatternVertex& v = p.vertices[idx];
      if (!n.label.empty()) {
        LabelId l = g.LabelOrThrow(n.label);
        if (!g.label(l).is_vertex) throw Error(ErrorCode::kUnknownLabel, n.label + " is not a vertex label");
        if (v.label != kNoLabel && v.label != l) {
          throw Error(ErrorCode::kTypeMismatch, "vertex " + var + " has conflicting labels");
        }
        v.label = l;
      }
      pending_props_.push_back({idx, &n.props});
      return idx;
    };
    for (const auto& path : gt.paths) {
      int prev = vertex(path.nodes[0]);
      for (size_t i = 0; i < path.edges.size(); ++i) {
        int next = vertex(path.nodes[i + 1]);
        const auto& ae = path.edges[i];
        std::string var = ae.var.empty() ? FreshName("_e", anon_e, user_names) : ae.var;
        if (p.EdgeIndex(var) >= 0 || p.VertexIndex(var) >= 0) {
          throw Error(ErrorCode::kDuplicateName, "pattern variable " + var + " declared twice");
        }
        PatternEdge e;
        e.var = var;
        e.label = g.LabelOrThrow(ae.label);
        if (g.label(e.label).is_vertex) throw Error(ErrorCode::kUnknownLabel, ae.label + " is not an edge label");
        if (ae.dir == ast::ArrowDir::kBackward) {
          e.src = next;
          e.tgt = prev;
        } else {
          e.src = prev;
          e.tgt = next;
        }
        e.either = ae.dir == ast::ArrowDir::kEither;
        if (e.src == e.tgt) throw Error(ErrorCode::kUnsupported, "self-loop pattern edge " + var);
        e.constraints.reserve(ae.props.size());
        for (const auto& pc : ae.props) e.constraints.push_back(BindConstraint(*g.label(e.label).relation, pc));
        p.edges.push_back(std::move(e));
        prev = next;
      }
    }
    // Infer missing vertex labels from edges, then check endpoint consistency.
    for (auto& e : p.edges) {
      const LabelInfo& info = g.label(e.label);
      auto infer = [&](int v, LabelId l) {
        if (p.vertices[v].label == kNoLabel) p.vertices[v].label = l;
      };
      if (!e.either) {
        infer(e.src, info.src_label);
        infer(e.tgt, info.tgt_label);
      } else if (info.src_label == info.tgt_label) {
        infer(e.src, info.src_label);
        infer(e.tgt, info.src_label);
      }
    }
    for (const auto& v : p.vertices) {
      if (v.label == kNoLabel) throw Error(ErrorCode::kUnknownLabel, "vertex " + v.var + " has no label");
    }
    for (const auto& e : p.edges) {
      const LabelInfo& info = g.label(e.label);
      LabelId ls = p.vertices[e.src].label;
      LabelId lt = p.vertices[e.tgt].label;
      bool fwd = ls == info.src_label && lt == info.tgt_label;
      bool bwd = ls == info.tgt_label && lt == info.src_label;
      if (!(fwd || (e.either && bwd))) {
        throw Error(ErrorCode::kTypeMismatch, "edge " + e.var + ":" + info.name + " cannot connect " +
                                                  g.label_name(ls) + " and " + g.label_name(lt));
      }
    }
    for (const auto& [idx, props] : pending_props_) {
      for (const auto& pc : *props) {
        p.vertices[idx].constraints.push_back(BindConstraint(*g.label(p.vertices[idx].label).relation, pc));
      }
    }
    if (!p.Connected()) throw Error(ErrorCode::kDisconnectedPattern, "pattern graph is not connected");
    if (p.n() > 16 || p.m() > 64) throw Error(ErrorCode::kSizeLimit, "pattern too large");
    std::set<std::string> col_aliases;
    for (const auto& c : gt.columns) {
      GraphColumnBinding b;
      b.alias = c.alias;
      b.kind = c.kind;
      int vi = p.VertexIndex(c.var);
      int ei = p.EdgeIndex(c.var);
      if (vi < 0 && ei < 0) throw Error(ErrorCode::kUnknownAlias, "pattern variable " + c.var);
      b.is_edge = vi < 0;
      b.element = b.is_edge ? ei : vi;
      LabelId label = b.is_edge ? p.edges[ei].label : p.vertices[vi].label;
      if (c.kind == ast::ColumnKind::kAttr) {
        const Relation& rel = *g.label(label).relation;
        auto idx = rel.schema().IndexOf(c.attr);
        if (!idx) throw Error(ErrorCode::kUnknownAttribute, c.var + "." + c.attr);
        b.attr = *idx;
        b.type = rel.schema().attribute(*idx).type;
      } else {
        b.type = AttrType::kString;
      }
      if (!col_aliases.insert(b.alias).second) throw Error(ErrorCode::kDuplicateName, "column alias " + b.alias);
      gc.columns.push_back(b);
    }
  }

  const ast::SelectStmt& stmt_;
  const Catalog& catalog_;
  BoundQuery q_;
  std::vector<std::pair<int, const std::vector<ast::PropertyConstraint>*>> pending_props_;
};

}  // namespace

BoundQuery Validate(const ast::SelectStmt& stmt, const Catalog& catalog) { return Binder(stmt, catalog).Run(); }

BoundQuery ParseQuery(const std::string& text, const Catalog& catalog) {
  ast::Statement s = Parse(text);
  const auto* sel = std::get_if<ast::SelectStmt>(&s);
  if (!sel) throw Error(ErrorCode::kInvalidArgument, "expected a SELECT statement");
  return Validate(*sel, catalog);
}

}  // namespace spjm
