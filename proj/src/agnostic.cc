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

#include "spjm/agnostic.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_set>

#include "spjm/error.h"

namespace spjm {

std::vector<int> SpjPredicate::Tables() const {
  std::vector<int> t{lhs.table};
  if (rhs_is_column && rhs.table != lhs.table) t.push_back(rhs.table);
  std::sort(t.begin(), t.end());
  return t;
}

namespace {

bool LabelsFit(const GraphView& g, const PatternGraph& p) {
  for (const auto& e : p.edges) {
    const LabelInfo& info = g.label(e.label);
    if (info.src_label != p.vertices[e.src].label || info.tgt_label != p.vertices[e.tgt].label) return false;
  }
  return true;
}

SpjPredicate FromElementPredicate(const Relation& rel, int table, const ElementPredicate& p) {
  SpjPredicate out;
  out.lhs = {table, rel.schema().attribute(p.attr).name};
  out.op = p.op;
  out.rhs_is_column = p.rhs_is_attr;
  if (p.rhs_is_attr) {
    out.rhs = {table, rel.schema().attribute(p.rhs_attr).name};
  } else {
    out.literal = p.literal;
  }
  return out;
}

// One directed variant. Every edge contributes a source and a target vertex
// copy; copies of the same pattern vertex collapse onto the first one, so
// each EVJoin equality ends on a single vertex alias per pattern vertex.
SpjQuery TransformDirected(const BoundQuery& q, const PatternGraph& p) {
  const GraphView& g = *q.graph.graph;
  const std::string& ga = q.inputs[q.graph_input].alias;
  SpjQuery out;
  out.graph = g.name();
  size_t n = p.n();
  size_t m = p.m();

  // Naive form: one copy per edge endpoint (or one copy for a lone vertex).
  std::vector<int> copy_vertex;
  for (const auto& e : p.edges) {
    copy_vertex.push_back(e.src);
    copy_vertex.push_back(e.tgt);
  }
  if (m == 0) copy_vertex.push_back(0);
  std::vector<int> parent(copy_vertex.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<int> first(n, -1);
  for (size_t c = 0; c < copy_vertex.size(); ++c) {
    int v = copy_vertex[c];
    if (first[v] < 0) {
      first[v] = static_cast<int>(c);
    } else {
      parent[find(static_cast<int>(c))] = find(first[v]);
    }
  }
  // Retained copy of each pattern vertex -> vertex table index.
  std::vector<int> vertex_table(n, -1);
  for (size_t v = 0; v < n; ++v) {
    if (first[v] < 0) throw Error(ErrorCode::kUnsupported, "pattern vertex " + p.vertices[v].var + " is isolated");
    vertex_table[v] = static_cast<int>(v);
  }
  auto table_of_copy = [&](int c) { return vertex_table[copy_vertex[find(c)]]; };

  for (const auto& v : p.vertices) {
    const LabelInfo& info = g.label(v.label);
    out.tables.push_back({ga + ":" + v.var, info.relation, info.name, false, nullptr});
  }
  for (const auto& e : p.edges) {
    const LabelInfo& info = g.label(e.label);
    out.tables.push_back({ga + ":" + e.var, info.relation, info.name, true, nullptr});
  }
  out.vertex_aliases = n;
  out.edge_aliases = m;

  for (size_t i = 0; i < m; ++i) {
    const LabelInfo& info = g.label(p.edges[i].label);
    int et = static_cast<int>(n + i);
    for (int end = 0; end < 2; ++end) {
      bool source = end == 0;
      int vt = table_of_copy(static_cast<int>(2 * i) + end);
      const Relation& vrel = *out.tables[vt].relation;
      SpjPredicate j;
      j.lhs = {et, info.relation->schema().attribute(source ? info.src_key_attr : info.tgt_key_attr).name};
      j.rhs_is_column = true;
      j.rhs = {vt, vrel.schema().attribute(source ? info.src_ref_attr : info.tgt_ref_attr).name};
      j.ev_edge = et;
      j.ev_vertex = vt;
      j.ev_source = source;
      out.joins.push_back(j);
    }
  }
  for (size_t v = 0; v < n; ++v) {
    for (const auto& c : p.vertices[v].constraints) {
      out.filters.push_back(FromElementPredicate(*out.tables[v].relation, static_cast<int>(v), c));
    }
  }
  for (size_t i = 0; i < m; ++i) {
    int et = static_cast<int>(n + i);
    for (const auto& c : p.edges[i].constraints) out.filters.push_back(FromElementPredicate(*out.tables[et].relation, et, c));
  }

  // Relational inputs follow the graph tables.
  std::vector<int> input_table(q.inputs.size(), -1);
  for (size_t i = 0; i < q.inputs.size(); ++i) {
    if (static_cast<int>(i) == q.graph_input) continue;
    input_table[i] = static_cast<int>(out.tables.size());
    out.tables.push_back({q.inputs[i].alias, q.inputs[i].relation, "", false, nullptr});
  }
  auto map_column = [&](ColumnId id, bool* label_fn) -> SpjColumn {
    if (label_fn) *label_fn = false;
    if (id.input != q.graph_input) return {input_table[id.input], q.Column(id).name};
    const GraphColumnBinding& b = q.graph.columns[id.column];
    int t = b.is_edge ? static_cast<int>(n) + b.element : b.element;
    switch (b.kind) {
      case ast::ColumnKind::kAttr:
        return {t, out.tables[t].relation->schema().attribute(b.attr).name};
      case ast::ColumnKind::kLabel:
        if (label_fn) *label_fn = true;
        return {t, kIdAttr};
      case ast::ColumnKind::kId:
        return {t, kIdAttr};
    }
    return {t, kIdAttr};
  };
  for (const auto& bp : q.predicates) {
    SpjPredicate sp;
    bool lhs_col = bp.lhs.is_column;
    // Literal on the left: flip so the column comes first.
    const BoundOperand& a = lhs_col ? bp.lhs : bp.rhs;
    const BoundOperand& b = lhs_col ? bp.rhs : bp.lhs;
    sp.op = lhs_col ? bp.op : FlipCmp(bp.op);
    if (!a.is_column) throw Error(ErrorCode::kInvalidArgument, "predicate without a column");
    sp.lhs = map_column(a.column, nullptr);
    sp.rhs_is_column = b.is_column;
    if (b.is_column) {
      sp.rhs = map_column(b.column, nullptr);
    } else {
      sp.literal = b.literal;
    }
    if (sp.IsJoin()) {
      out.joins.push_back(sp);
    } else {
      out.filters.push_back(sp);
    }
  }
  for (const auto& o : q.outputs) {
    SpjOutput so;
    so.name = o.name;
    so.column = map_column(o.column, &so.label_fn);
    out.outputs.push_back(so);
  }
  MatchMode mode = q.graph.mode;
  if ((mode == MatchMode::kVertices || mode == MatchMode::kAll) && n > 1) {
    std::vector<int> grp(n);
    std::iota(grp.begin(), grp.end(), 0);
    out.distinct_groups.push_back(grp);
  }
  if ((mode == MatchMode::kEdges || mode == MatchMode::kAll) && m > 1) {
    std::vector<int> grp(m);
    std::iota(grp.begin(), grp.end(), static_cast<int>(n));
    out.distinct_groups.push_back(grp);
  }
  return out;
}

bool EvalSingle(const Relation& rel, RowId rid, const SpjPredicate& p) {
  auto attr = [&](const std::string& name) {
    auto i = rel.schema().IndexOf(name);
    if (!i) throw Error(ErrorCode::kSchemaMismatch, "no attribute " + name + " in " + rel.name());
    return *i;
  };
  Value lhs = rel.value(rid, attr(p.lhs.attr));
  Value rhs = p.rhs_is_column ? rel.value(rid, attr(p.rhs.attr)) : p.literal;
  return CompareValues(p.op, lhs, rhs);
}

PlanPredicate ToPlanPredicate(const SpjQuery& q, const SpjPredicate& p) {
  PlanPredicate out;
  out.lhs = q.ColumnName(p.lhs);
  out.op = p.op;
  out.rhs_is_column = p.rhs_is_column;
  if (p.rhs_is_column) {
    out.rhs = q.ColumnName(p.rhs);
  } else {
    out.literal = p.literal;
  }
  return out;
}

bool InMask(uint64_t mask, int t) { return (mask >> t & 1) != 0; }

bool Covered(const std::vector<int>& tables, uint64_t mask) {
  return std::all_of(tables.begin(), tables.end(), [&](int t) { return InMask(mask, t); });
}

class Lowering {
 public:
  Lowering(const SpjQuery& q, const JoinTree& tree, const JoinGraph& jg, const AgnosticOptions& options)
      : q_(q), tree_(tree), jg_(jg), options_(options) {}

  PlanPtr Lower() {
    PlanPtr root = Node(tree_.root);
    if (!q_.distinct_groups.empty()) {
      auto d = MakeNode(OpKind::kAllDistinct, {root});
      for (const auto& grp : q_.distinct_groups) {
        std::vector<std::string> cols;
        for (int t : grp) cols.push_back(q_.ColumnName({t, kIdAttr}));
        d->groups.push_back(cols);
      }
      d->est_rows = root->est_rows;
      d->est_cost = root->est_cost;
      root = d;
    }
    auto proj = MakeNode(OpKind::kProject, {root});
    for (const auto& o : q_.outputs) {
      proj->items.push_back({o.name, q_.ColumnName(o.column), o.label_fn ? ProjectFn::kLabel : ProjectFn::kCopy});
    }
    proj->est_rows = root->est_rows;
    proj->est_cost = root->est_cost;
    return proj;
  }

 private:
  std::vector<PlanPredicate> LocalFilters(int t) const {
    std::vector<PlanPredicate> out;
    for (const auto& f : q_.filters) {
      auto ts = f.Tables();
      if (ts.size() == 1 && ts[0] == t) out.push_back(ToPlanPredicate(q_, f));
    }
    return out;
  }

  // Multi-table filters first covered by this join.
  std::vector<PlanPredicate> Residual(const JoinTreeNode& n) const {
    std::vector<PlanPredicate> out;
    uint64_t l = tree_.nodes[n.left].tables;
    uint64_t r = tree_.nodes[n.right].tables;
    for (const auto& f : q_.filters) {
      auto ts = f.Tables();
      if (ts.size() < 2 || !Covered(ts, n.tables) || Covered(ts, l) || Covered(ts, r)) continue;
      out.push_back(ToPlanPredicate(q_, f));
    }
    return out;
  }

  PlanPtr Leaf(int t) const {
    const SpjTable& tab = q_.tables[t];
    PlanPtr scan = tab.scan;
    if (scan) return WithFilters(scan, t);
    scan = MakeNode(OpKind::kScan);
    scan->relation = tab.relation->name();
    scan->alias = tab.alias;
    if (!tab.element_label.empty()) {
      scan->graph = q_.graph;
      scan->element_label = tab.element_label;
    }
    scan->est_rows = static_cast<double>(tab.relation->size());
    scan->est_cost = 0;
    return WithFilters(scan, t);
  }

  PlanPtr WithFilters(PlanPtr scan, int t) const {
    auto filters = LocalFilters(t);
    if (filters.empty()) return scan;
    auto f = MakeNode(OpKind::kFilter, {scan});
    f->predicates = std::move(filters);
    f->est_rows = jg_.rows[t];
    f->est_cost = 0;
    return f;
  }

  PlanPtr Node(int i) {
    const JoinTreeNode& n = tree_.nodes[i];
    if (n.table >= 0) return Leaf(n.table);
    if (options_.graph_index) {
      if (PlanPtr p = IndexJoin(n, n.right, n.left)) return p;
      if (PlanPtr p = IndexJoin(n, n.left, n.right)) return p;
    }
    PlanPtr l = Node(n.left);
    PlanPtr r = Node(n.right);
    auto j = MakeNode(OpKind::kHashJoin, {l, r});
    uint64_t lm = tree_.nodes[n.left].tables;
    for (int c : n.conditions) {
      const SpjPredicate& p = q_.joins[c];
      bool lhs_left = InMask(lm, p.lhs.table);
      j->left_keys.push_back(q_.ColumnName(lhs_left ? p.lhs : p.rhs));
      j->right_keys.push_back(q_.ColumnName(lhs_left ? p.rhs : p.lhs));
    }
    j->build_left = tree_.nodes[n.left].rows <= tree_.nodes[n.right].rows;
    j->predicates = Residual(n);
    j->est_rows = n.rows;
    j->est_cost = n.cost;
    return j;
  }

  // Replaces the join with an index lookup when `leaf` is a graph table
  // reached from `other` through one of its EVJoin equalities.
  PlanPtr IndexJoin(const JoinTreeNode& n, int leaf, int other) {
    const JoinTreeNode& ln = tree_.nodes[leaf];
    if (ln.table < 0) return nullptr;
    int t = ln.table;
    const SpjTable& tab = q_.tables[t];
    if (tab.element_label.empty()) return nullptr;
    uint64_t om = tree_.nodes[other].tables;
    int via = -1;
    for (int c : n.conditions) {
      const SpjPredicate& p = q_.joins[c];
      if (p.ev_edge < 0) continue;
      if ((p.ev_edge == t && InMask(om, p.ev_vertex)) || (p.ev_vertex == t && InMask(om, p.ev_edge))) {
        via = c;
        break;
      }
    }
    if (via < 0) return nullptr;
    const SpjPredicate& ev = q_.joins[via];
    auto j = MakeNode(OpKind::kEvIndexJoin, {Node(other)});
    j->relation = tab.relation->name();
    j->alias = tab.alias;
    j->graph = q_.graph;
    j->element_label = tab.element_label;
    j->edge_label = q_.tables[ev.ev_edge].element_label;
    if (ev.ev_edge == t) {
      j->probe = q_.ColumnName({ev.ev_vertex, kIdAttr});
      j->from_edge = false;
      j->dir = ev.ev_source ? Direction::kOut : Direction::kIn;
    } else {
      j->probe = q_.ColumnName({ev.ev_edge, kIdAttr});
      j->from_edge = true;
      j->end_is_source = ev.ev_source;
    }
    for (int c : n.conditions) {
      if (c != via) j->predicates.push_back(ToPlanPredicate(q_, q_.joins[c]));
    }
    auto local = LocalFilters(t);
    j->predicates.insert(j->predicates.end(), local.begin(), local.end());
    auto res = Residual(n);
    j->predicates.insert(j->predicates.end(), res.begin(), res.end());
    j->est_rows = n.rows;
    j->est_cost = n.cost;
    return j;
  }

  const SpjQuery& q_;
  const JoinTree& tree_;
  const JoinGraph& jg_;
  const AgnosticOptions& options_;
};

}  // namespace

AgnosticQuery TransformToSpj(const BoundQuery& q) {
  const GraphView& g = *q.graph.graph;
  const PatternGraph& p = q.graph.pattern;
  std::vector<size_t> either;
  for (size_t i = 0; i < p.m(); ++i) {
    if (p.edges[i].either) either.push_back(i);
  }
  if (either.size() > 16) throw Error(ErrorCode::kSizeLimit, "too many undirected edges");
  AgnosticQuery out;
  for (uint32_t bits = 0; bits < (1u << either.size()); ++bits) {
    PatternGraph d = p;
    for (size_t k = 0; k < either.size(); ++k) {
      PatternEdge& e = d.edges[either[k]];
      e.either = false;
      if (bits >> k & 1) std::swap(e.src, e.tgt);
    }
    if (!LabelsFit(g, d)) continue;
    out.variants.push_back(TransformDirected(q, d));
  }
  return out;
}

double TableStats::Distinct(const Relation& rel, const std::string& attr) {
  auto key = std::make_pair(&rel, attr);
  auto it = ndv_.find(key);
  if (it != ndv_.end()) return it->second;
  double d = 0;
  if (attr == kIdAttr) {
    d = static_cast<double>(rel.size());
  } else {
    auto i = rel.schema().IndexOf(attr);
    if (!i) throw Error(ErrorCode::kSchemaMismatch, "no attribute " + attr + " in " + rel.name());
    if (rel.column(*i).index() == 0) {
      const auto& col = rel.ints(*i);
      d = static_cast<double>(std::unordered_set<int64_t>(col.begin(), col.end()).size());
    } else {
      const auto& col = rel.strings(*i);
      d = static_cast<double>(std::unordered_set<std::string>(col.begin(), col.end()).size());
    }
  }
  ndv_[key] = d;
  return d;
}

double TableStats::FilteredRows(const SpjQuery& q, int table) {
  if (!q.tables[table].relation) return q.tables[table].scan ? q.tables[table].scan->est_rows : 0;
  const Relation& rel = *q.tables[table].relation;
  std::vector<const SpjPredicate*> local;
  for (const auto& f : q.filters) {
    auto ts = f.Tables();
    if (ts.size() == 1 && ts[0] == table) local.push_back(&f);
  }
  if (local.empty()) return static_cast<double>(rel.size());
  size_t kept = 0;
  for (RowId r = 0; r < rel.size(); ++r) {
    if (std::all_of(local.begin(), local.end(), [&](const SpjPredicate* p) { return EvalSingle(rel, r, *p); })) ++kept;
  }
  return static_cast<double>(kept);
}

JoinGraph BuildJoinGraph(const SpjQuery& q, TableStats& stats) {
  JoinGraph jg;
  for (size_t t = 0; t < q.tables.size(); ++t) {
    jg.aliases.push_back(q.tables[t].alias);
    jg.rows.push_back(stats.FilteredRows(q, static_cast<int>(t)));
  }
  for (const auto& j : q.joins) {
    JoinCondition c;
    c.a = j.lhs.table;
    c.b = j.rhs.table;
    c.ndv_a = std::min(stats.Distinct(*q.tables[c.a].relation, j.lhs.attr), jg.rows[c.a]);
    c.ndv_b = std::min(stats.Distinct(*q.tables[c.b].relation, j.rhs.attr), jg.rows[c.b]);
    jg.conditions.push_back(c);
  }
  return jg;
}

PlanPtr LowerSpj(const SpjQuery& q, const JoinTree& tree, const JoinGraph& jg, const AgnosticOptions& options) {
  return Lowering(q, tree, jg, options).Lower();
}

PlanPtr PlanAgnostic(const BoundQuery& q, const AgnosticOptions& options) {
  AgnosticQuery aq = TransformToSpj(q);
  TableStats local;
  TableStats& stats = options.stats ? *options.stats : local;
  std::vector<PlanPtr> plans;
  for (const auto& v : aq.variants) {
    JoinGraph jg = BuildJoinGraph(v, stats);
    JoinTree tree = OptimizeJoinOrder(jg);
    plans.push_back(LowerSpj(v, tree, jg, options));
  }
  if (plans.empty()) throw Error(ErrorCode::kUnsupported, "no orientation of the pattern fits the edge labels");
  if (plans.size() == 1) return plans[0];
  auto u = MakeNode(OpKind::kUnionAll, plans);
  u->est_rows = 0;
  u->est_cost = 0;
  for (const auto& p : plans) {
    u->est_rows += p->est_rows;
    u->est_cost += p->est_cost;
  }
  return u;
}

}  // namespace spjm
