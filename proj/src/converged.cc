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

#include "spjm/converged.h"

#include <algorithm>
#include <functional>

#include "spjm/error.h"

namespace spjm {

namespace {

const GraphColumnBinding* GraphAttr(const BoundQuery& q, const BoundOperand& o) {
  if (!o.is_column || o.column.input != q.graph_input) return nullptr;
  const GraphColumnBinding& b = q.graph.columns[o.column.column];
  return b.kind == ast::ColumnKind::kAttr ? &b : nullptr;
}

bool SameElement(const GraphColumnBinding& a, const GraphColumnBinding& b) {
  return a.is_edge == b.is_edge && a.element == b.element;
}

}  // namespace

BoundQuery ApplyFilterIntoMatch(const BoundQuery& q) {
  BoundQuery out = q;
  out.predicates.clear();
  for (const auto& bp : q.predicates) {
    const GraphColumnBinding* l = GraphAttr(q, bp.lhs);
    const GraphColumnBinding* r = GraphAttr(q, bp.rhs);
    ElementPredicate ep;
    const GraphColumnBinding* target = nullptr;
    if (l && !bp.rhs.is_column) {
      target = l;
      ep = {l->attr, bp.op, false, 0, bp.rhs.literal};
    } else if (r && !bp.lhs.is_column) {
      target = r;
      ep = {r->attr, FlipCmp(bp.op), false, 0, bp.lhs.literal};
    } else if (l && r && SameElement(*l, *r)) {
      target = l;
      ep = {l->attr, bp.op, true, r->attr, {}};
    }
    if (!target) {
      out.predicates.push_back(bp);
      continue;
    }
    PatternGraph& p = out.graph.pattern;
    auto& cs = target->is_edge ? p.edges[target->element].constraints : p.vertices[target->element].constraints;
    cs.push_back(ep);
  }
  return out;
}

namespace {

Direction LegDirection(const GraphView& g, const PatternGraph& p, const PatternEdge& e, int leaf) {
  if (!e.either) return e.src == leaf ? Direction::kOut : Direction::kIn;
  const LabelInfo& info = g.label(e.label);
  int center = e.src == leaf ? e.tgt : e.src;
  LabelId ll = p.vertices[leaf].label;
  LabelId lc = p.vertices[center].label;
  bool out_ok = info.src_label == ll && info.tgt_label == lc;
  bool in_ok = info.tgt_label == ll && info.src_label == lc;
  if (out_ok && in_ok) return Direction::kBoth;
  return out_ok ? Direction::kOut : Direction::kIn;
}

class GraphLowering {
 public:
  GraphLowering(const DecompositionTree& t, const GraphView& g) : t_(t), p_(t.pattern), g_(g) {}

  PlanPtr Node(int i) {
    const DecompNode& n = t_.nodes[i];
    PlanPtr out;
    switch (n.kind) {
      case DecompKind::kVertex:
        out = ScanVertex(n.center);
        break;
      case DecompKind::kExtend:
        out = t_.index ? Expand(n) : StarJoin(n);
        break;
      case DecompKind::kHashJoin:
        out = HashJoin(n);
        break;
      case DecompKind::kStar:
        throw Error(ErrorCode::kInvalidArgument, "star leaf lowered on its own");
    }
    out->est_rows = n.rows;
    out->est_cost = n.cost;
    return out;
  }

 private:
  const Relation& Rel(LabelId l) const { return *g_.label(l).relation; }

  PlanPtr ScanVertex(int v) const {
    const PatternVertex& pv = p_.vertices[v];
    auto s = MakeNode(OpKind::kScanVertex);
    s->var = pv.var;
    s->label = g_.label_name(pv.label);
    s->constraints = ToAttrPredicates(Rel(pv.label), pv.constraints);
    return s;
  }

  std::vector<int> Legs(const DecompNode& star) const {
    std::vector<int> out;
    for (size_t e = 0; e < p_.m(); ++e) {
      if (star.edges >> e & 1) out.push_back(static_cast<int>(e));
    }
    return out;
  }

  int Leaf(int e, int center) const { return p_.edges[e].src == center ? p_.edges[e].tgt : p_.edges[e].src; }

  PlanPtr Expand(const DecompNode& n) {
    const DecompNode& star = t_.nodes[n.right];
    int u = star.center;
    const PatternVertex& pu = p_.vertices[u];
    PlanPtr left = Node(n.left);
    std::vector<int> legs = Legs(star);
    if (legs.size() == 1) {
      const PatternEdge& e = p_.edges[legs[0]];
      int leaf = Leaf(legs[0], u);
      Direction dir = LegDirection(g_, p_, e, leaf);
      auto ex = MakeNode(OpKind::kExpandEdge, {left});
      ex->var = e.var;
      ex->from = p_.vertices[leaf].var;
      ex->label = g_.label_name(e.label);
      ex->dir = dir;
      ex->edge_constraints = ToAttrPredicates(Rel(e.label), e.constraints);
      ex->est_rows = n.rows;
      auto gv = MakeNode(OpKind::kGetVertex, {ex});
      gv->var = pu.var;
      gv->edge = e.var;
      gv->from = ex->from;
      gv->label = g_.label_name(pu.label);
      gv->dir = dir;
      gv->constraints = ToAttrPredicates(Rel(pu.label), pu.constraints);
      return gv;
    }
    auto in = MakeNode(OpKind::kExpandIntersect, {left});
    for (int ei : legs) {
      const PatternEdge& e = p_.edges[ei];
      int leaf = Leaf(ei, u);
      in->legs.push_back({p_.vertices[leaf].var, e.var, g_.label_name(e.label), LegDirection(g_, p_, e, leaf),
                          ToAttrPredicates(Rel(e.label), e.constraints)});
    }
    in->var = pu.var;
    in->label = g_.label_name(pu.label);
    in->constraints = ToAttrPredicates(Rel(pu.label), pu.constraints);
    return in;
  }

  // Key attribute names of edge e at vertex v's end: (edge key attr, vertex ref attr).
  std::pair<std::string, std::string> EndKeys(int e, int v) const {
    const PatternEdge& pe = p_.edges[e];
    const LabelInfo& info = g_.label(pe.label);
    const Relation& er = *info.relation;
    const Relation& vr = Rel(p_.vertices[v].label);
    bool source = pe.src == v;
    return {er.schema().attribute(source ? info.src_key_attr : info.tgt_key_attr).name,
            vr.schema().attribute(source ? info.src_ref_attr : info.tgt_ref_attr).name};
  }

  // Star as scans joined on endpoint attributes, then joined to the left side.
  PlanPtr StarJoin(const DecompNode& n) {
    const DecompNode& star = t_.nodes[n.right];
    int u = star.center;
    const std::string& uvar = p_.vertices[u].var;
    PlanPtr s = ScanVertex(u);
    s->est_rows = -1;
    for (int ei : Legs(star)) {
      const PatternEdge& e = p_.edges[ei];
      if (e.either) throw Error(ErrorCode::kInvalidArgument, "undirected edge reached hash lowering");
      auto scan = MakeNode(OpKind::kScanEdge);
      scan->var = e.var;
      scan->label = g_.label_name(e.label);
      scan->constraints = ToAttrPredicates(Rel(e.label), e.constraints);
      auto [ekey, vref] = EndKeys(ei, u);
      auto j = MakeNode(OpKind::kGraphHashJoin, {s, scan});
      j->gleft_keys = {{uvar, vref}};
      j->gright_keys = {{e.var, ekey}};
      j->build_left = true;
      s = j;
    }
    s->est_rows = star.rows;
    PlanPtr left = Node(n.left);
    auto j = MakeNode(OpKind::kGraphHashJoin, {left, s});
    for (int ei : Legs(star)) {
      int leaf = Leaf(ei, u);
      auto [ekey, vref] = EndKeys(ei, leaf);
      j->gleft_keys.push_back({p_.vertices[leaf].var, vref});
      j->gright_keys.push_back({p_.edges[ei].var, ekey});
    }
    j->build_left = t_.nodes[n.left].rows <= star.rows;
    return j;
  }

  PlanPtr HashJoin(const DecompNode& n) {
    const DecompNode& l = t_.nodes[n.left];
    const DecompNode& r = t_.nodes[n.right];
    auto j = MakeNode(OpKind::kGraphHashJoin, {Node(n.left), Node(n.right)});
    for (size_t v = 0; v < p_.n(); ++v) {
      if ((l.vertices & r.vertices) >> v & 1) {
        j->gleft_keys.push_back({p_.vertices[v].var, ""});
        j->gright_keys.push_back({p_.vertices[v].var, ""});
      }
    }
    for (size_t e = 0; e < p_.m(); ++e) {
      if ((l.edges & r.edges) >> e & 1) {
        j->gleft_keys.push_back({p_.edges[e].var, ""});
        j->gright_keys.push_back({p_.edges[e].var, ""});
      }
    }
    j->build_left = l.rows <= r.rows;
    return j;
  }

  const DecompositionTree& t_;
  const PatternGraph& p_;
  const GraphView& g_;
};

std::vector<PatternGraph> DirectedVariants(const GraphView& g, const PatternGraph& p) {
  std::vector<size_t> either;
  for (size_t i = 0; i < p.m(); ++i) {
    if (p.edges[i].either) either.push_back(i);
  }
  if (either.size() > 16) throw Error(ErrorCode::kSizeLimit, "too many undirected edges");
  std::vector<PatternGraph> out;
  for (uint32_t bits = 0; bits < (1u << either.size()); ++bits) {
    PatternGraph d = p;
    bool fits = true;
    for (size_t k = 0; k < either.size(); ++k) {
      PatternEdge& e = d.edges[either[k]];
      e.either = false;
      if (bits >> k & 1) std::swap(e.src, e.tgt);
      const LabelInfo& info = g.label(e.label);
      fits = fits && info.src_label == d.vertices[e.src].label && info.tgt_label == d.vertices[e.tgt].label;
    }
    if (fits) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

PlanPtr LowerDecomposition(const DecompositionTree& t, const GraphView& g) {
  return GraphLowering(t, g).Node(t.root);
}

int ApplyTrimAndFuse(PlanNode& graph_table, const std::set<std::string>& used, MatchMode mode) {
  if (mode == MatchMode::kEdges || mode == MatchMode::kAll || graph_table.children.empty()) return 0;
  std::set<std::string> keep;
  for (const auto& c : graph_table.columns) {
    if (used.count(c.name)) keep.insert(c.var);
  }
  VisitPlan(*graph_table.children[0], [&](const PlanNode& n) {
    for (const auto& k : n.gleft_keys) keep.insert(k.var);
    for (const auto& k : n.gright_keys) keep.insert(k.var);
    for (const auto& grp : n.groups) keep.insert(grp.begin(), grp.end());
    if (n.kind == OpKind::kExpandEdge && !n.edge_constraints.empty()) keep.insert(n.var);
  });
  std::set<std::string> trimmed;
  int fused = 0;
  std::function<PlanPtr(const PlanPtr&)> rewrite = [&](const PlanPtr& n) -> PlanPtr {
    for (auto& c : n->children) c = rewrite(c);
    if (n->kind == OpKind::kGetVertex && n->children.size() == 1) {
      const PlanNode& ex = *n->children[0];
      if (ex.kind == OpKind::kExpandEdge && ex.var == n->edge && ex.from == n->from && !keep.count(n->edge)) {
        auto f = MakeNode(OpKind::kExpand, ex.children);
        f->var = n->var;
        f->from = ex.from;
        f->edge_label = ex.label;
        f->dir = ex.dir;
        f->label = n->label;
        f->constraints = n->constraints;
        f->est_rows = n->est_rows;
        f->est_cost = n->est_cost;
        trimmed.insert(n->edge);
        ++fused;
        return f;
      }
    }
    if (n->kind == OpKind::kExpandIntersect) {
      bool any = std::any_of(n->legs.begin(), n->legs.end(), [&](const ExpandLeg& l) { return keep.count(l.edge) > 0; });
      if (!any) {
        n->emit_edges = false;
        for (const auto& l : n->legs) trimmed.insert(l.edge);
      }
    }
    return n;
  };
  graph_table.children[0] = rewrite(graph_table.children[0]);
  std::erase_if(graph_table.columns, [&](const TableColumn& c) { return trimmed.count(c.var) > 0; });
  return fused;
}

ConvergedPlan OptimizeConverged(const BoundQuery& q, CardinalityEstimator& est, const ConvergedOptions& options) {
  ConvergedPlan out;
  BoundQuery bq = options.filter_into_match ? ApplyFilterIntoMatch(q) : q;
  const GraphView& g = *bq.graph.graph;
  const PatternGraph& p = bq.graph.pattern;

  PlanPtr sub;
  if (options.graph_index) {
    out.trees.push_back(SearchGraphPlan(p, g, est, true));
    sub = LowerDecomposition(out.trees.back(), g);
  } else {
    std::vector<PlanPtr> parts;
    for (const auto& d : DirectedVariants(g, p)) {
      out.trees.push_back(SearchGraphPlan(d, g, est, false));
      parts.push_back(LowerDecomposition(out.trees.back(), g));
    }
    if (parts.empty()) throw Error(ErrorCode::kUnsupported, "no orientation of the pattern fits the edge labels");
    if (parts.size() == 1) {
      sub = parts[0];
    } else {
      sub = MakeNode(OpKind::kUnionAll, parts);
      sub->est_rows = 0;
      sub->est_cost = 0;
      for (const auto& part : parts) {
        sub->est_rows += part->est_rows;
        sub->est_cost += part->est_cost;
      }
    }
  }

  MatchMode mode = bq.graph.mode;
  std::vector<std::vector<std::string>> groups;
  if ((mode == MatchMode::kVertices || mode == MatchMode::kAll) && p.n() > 1) {
    std::vector<std::string> grp;
    for (const auto& v : p.vertices) grp.push_back(v.var);
    groups.push_back(grp);
  }
  if ((mode == MatchMode::kEdges || mode == MatchMode::kAll) && p.m() > 1) {
    std::vector<std::string> grp;
    for (const auto& e : p.edges) grp.push_back(e.var);
    groups.push_back(grp);
  }
  if (!groups.empty()) {
    auto d = MakeNode(OpKind::kAllDistinct, {sub});
    d->groups = groups;
    d->est_rows = sub->est_rows;
    d->est_cost = sub->est_cost;
    sub = d;
  }

  const QueryInput& gin = bq.inputs[bq.graph_input];
  auto gt = MakeNode(OpKind::kScanGraphTable, {sub});
  gt->graph = g.name();
  gt->alias = gin.alias;
  for (size_t i = 0; i < bq.graph.columns.size(); ++i) {
    const GraphColumnBinding& b = bq.graph.columns[i];
    TableColumn c;
    c.name = gin.columns[i].name;
    c.var = b.is_edge ? p.edges[b.element].var : p.vertices[b.element].var;
    switch (b.kind) {
      case ast::ColumnKind::kAttr: {
        LabelId l = b.is_edge ? p.edges[b.element].label : p.vertices[b.element].label;
        c.kind = TableColumnKind::kAttr;
        c.attr = g.label(l).relation->schema().attribute(b.attr).name;
        break;
      }
      case ast::ColumnKind::kId:
        c.kind = TableColumnKind::kId;
        break;
      case ast::ColumnKind::kLabel:
        c.kind = TableColumnKind::kLabel;
        break;
    }
    gt->columns.push_back(c);
  }
  out.graph_rows = est.Estimate(p);
  gt->est_rows = out.graph_rows;
  gt->est_cost = sub->est_cost;

  if (options.trim_and_fuse) {
    std::set<std::string> used;
    auto note = [&](const BoundOperand& o) {
      if (o.is_column && o.column.input == bq.graph_input) used.insert(bq.Column(o.column).name);
    };
    for (const auto& bp : bq.predicates) {
      note(bp.lhs);
      note(bp.rhs);
    }
    for (const auto& o : bq.outputs) {
      if (o.column.input == bq.graph_input) used.insert(bq.Column(o.column).name);
    }
    out.fused = ApplyTrimAndFuse(*gt, used, mode);
  }

  // Relational side: the graph table is one more leaf of the join-order DP.
  SpjQuery rq;
  rq.graph = g.name();
  std::vector<int> table_of(bq.inputs.size(), -1);
  table_of[bq.graph_input] = 0;
  rq.tables.push_back({gin.alias, nullptr, "", false, gt});
  for (size_t i = 0; i < bq.inputs.size(); ++i) {
    if (static_cast<int>(i) == bq.graph_input) continue;
    table_of[i] = static_cast<int>(rq.tables.size());
    rq.tables.push_back({bq.inputs[i].alias, bq.inputs[i].relation, "", false, nullptr});
  }
  auto col = [&](ColumnId id) -> SpjColumn { return {table_of[id.input], bq.Column(id).name}; };
  for (const auto& bp : bq.predicates) {
    SpjPredicate sp;
    bool lhs_col = bp.lhs.is_column;
    const BoundOperand& a = lhs_col ? bp.lhs : bp.rhs;
    const BoundOperand& b = lhs_col ? bp.rhs : bp.lhs;
    if (!a.is_column) throw Error(ErrorCode::kInvalidArgument, "predicate without a column");
    sp.op = lhs_col ? bp.op : FlipCmp(bp.op);
    sp.lhs = col(a.column);
    sp.rhs_is_column = b.is_column;
    if (b.is_column) {
      sp.rhs = col(b.column);
    } else {
      sp.literal = b.literal;
    }
    (sp.IsJoin() ? rq.joins : rq.filters).push_back(sp);
  }
  for (const auto& o : bq.outputs) rq.outputs.push_back({o.name, col(o.column), false});

  TableStats local;
  TableStats& stats = options.stats ? *options.stats : local;
  JoinGraph jg;
  for (size_t t = 0; t < rq.tables.size(); ++t) {
    jg.aliases.push_back(rq.tables[t].alias);
    jg.rows.push_back(t == 0 ? out.graph_rows : stats.FilteredRows(rq, static_cast<int>(t)));
  }
  auto ndv = [&](const SpjColumn& c) {
    if (c.table != 0) return std::min(stats.Distinct(*rq.tables[c.table].relation, c.attr), jg.rows[c.table]);
    // Graph column: distinct values of the underlying attribute.
    for (size_t i = 0; i < gin.columns.size(); ++i) {
      if (gin.columns[i].name != c.attr) continue;
      const GraphColumnBinding& b = bq.graph.columns[i];
      LabelId l = b.is_edge ? p.edges[b.element].label : p.vertices[b.element].label;
      const Relation& rel = *g.label(l).relation;
      double d = b.kind == ast::ColumnKind::kAttr ? stats.Distinct(rel, rel.schema().attribute(b.attr).name)
                                                  : static_cast<double>(rel.size());
      return std::min(d, jg.rows[0]);
    }
    return jg.rows[0];
  };
  for (const auto& j : rq.joins) jg.conditions.push_back({j.lhs.table, j.rhs.table, ndv(j.lhs), ndv(j.rhs)});
  JoinTree tree = OptimizeJoinOrder(jg);
  out.plan = LowerSpj(rq, tree, jg, AgnosticOptions{});
  return out;
}

}  // namespace spjm
