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

#include "spjm/oracle.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "spjm/error.h"

namespace spjm {

namespace {

// Backtracking matcher: binds vertices in declaration order, then takes the
// product of the candidate edge lists of every pattern edge.
class Matcher {
 public:
  Matcher(const GraphView& g, const PatternGraph& p, const InstanceFilter* filter)
      : g_(g), p_(p), filter_(filter), bound_(p.n()), edge_lists_(p.m()) {
    closing_.resize(p.n());
    anchor_.assign(p.n(), -1);
    for (size_t e = 0; e < p.m(); ++e) {
      int late = std::max(p.edges[e].src, p.edges[e].tgt);
      closing_[late].push_back(static_cast<int>(e));
      if (anchor_[late] < 0) anchor_[late] = static_cast<int>(e);
    }
  }

  void Run(const std::function<void(const std::vector<RowId>&, const std::vector<const std::vector<RowId>*>&)>& emit) {
    emit_ = &emit;
    Bind(0);
  }

 private:
  bool VertexOk(int v, RowId rid) const {
    const PatternVertex& pv = p_.vertices[v];
    if (filter_ && filter_->vertex && !filter_->vertex({pv.label, rid})) return false;
    return EvalElementPredicates(*g_.label(pv.label).relation, rid, pv.constraints);
  }

  // Data edges of pattern edge e between the currently bound endpoints.
  void EdgesBetween(int e, std::vector<RowId>& out) const {
    out.clear();
    const PatternEdge& pe = p_.edges[e];
    const LabelInfo& info = g_.label(pe.label);
    auto scan = [&](int from, int to) {
      LabelId lf = p_.vertices[from].label;
      LabelId lt = p_.vertices[to].label;
      if (lf != info.src_label || lt != info.tgt_label) return;
      auto adj = g_.Adjacency(pe.label, Direction::kOut).Of(bound_[from]);
      RowId target = bound_[to];
      auto it = std::lower_bound(adj.begin(), adj.end(), target,
                                 [](const AdjEntry& a, RowId t) { return a.neighbor < t; });
      for (; it != adj.end() && it->neighbor == target; ++it) {
        if (filter_ && filter_->edge && !filter_->edge({pe.label, it->edge})) continue;
        if (!EvalElementPredicates(*info.relation, it->edge, pe.constraints)) continue;
        out.push_back(it->edge);
      }
    };
    scan(pe.src, pe.tgt);
    if (pe.either) scan(pe.tgt, pe.src);
  }

  void Bind(size_t v) {
    if (v == p_.n()) {
      std::vector<const std::vector<RowId>*> lists;
      lists.reserve(p_.m());
      for (const auto& l : edge_lists_) lists.push_back(&l);
      (*emit_)(bound_, lists);
      return;
    }
    const PatternVertex& pv = p_.vertices[v];
    std::vector<RowId> candidates;
    int anchor = anchor_[v];
    if (anchor >= 0) {
      const PatternEdge& pe = p_.edges[anchor];
      int other = pe.src == static_cast<int>(v) ? pe.tgt : pe.src;
      const LabelInfo& info = g_.label(pe.label);
      auto collect = [&](Direction d) {
        LabelId own = d == Direction::kOut ? info.src_label : info.tgt_label;
        LabelId far = d == Direction::kOut ? info.tgt_label : info.src_label;
        if (own != p_.vertices[other].label || far != pv.label) return;
        for (const AdjEntry& a : g_.Adjacency(pe.label, d).Of(bound_[other])) candidates.push_back(a.neighbor);
      };
      // other -> v is an out-step from `other` when other is the source.
      if (pe.src == other || pe.either) collect(Direction::kOut);
      if (pe.tgt == other || pe.either) collect(Direction::kIn);
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    } else {
      candidates.resize(g_.LabelSize(pv.label));
      for (RowId r = 0; r < candidates.size(); ++r) candidates[r] = r;
    }
    for (RowId c : candidates) {
      if (!VertexOk(static_cast<int>(v), c)) continue;
      bound_[v] = c;
      bool ok = true;
      for (int e : closing_[v]) {
        EdgesBetween(e, edge_lists_[e]);
        if (edge_lists_[e].empty()) {
          ok = false;
          break;
        }
      }
      if (ok) Bind(v + 1);
    }
  }

  const GraphView& g_;
  const PatternGraph& p_;
  const InstanceFilter* filter_;
  std::vector<RowId> bound_;
  std::vector<std::vector<RowId>> edge_lists_;
  std::vector<std::vector<int>> closing_;
  std::vector<int> anchor_;
  const std::function<void(const std::vector<RowId>&, const std::vector<const std::vector<RowId>*>&)>* emit_ =
      nullptr;
};

bool RowDistinct(const std::vector<ElementId>& row, size_t n, MatchMode mode) {
  auto distinct = [&](size_t begin, size_t end) {
    std::vector<ElementId> ids(row.begin() + begin, row.begin() + end);
    std::sort(ids.begin(), ids.end());
    return std::adjacent_find(ids.begin(), ids.end()) == ids.end();
  };
  bool check_v = mode == MatchMode::kVertices || mode == MatchMode::kAll;
  bool check_e = mode == MatchMode::kEdges || mode == MatchMode::kAll;
  if (check_v && !distinct(0, n)) return false;
  if (check_e && !distinct(n, row.size())) return false;
  return true;
}

// Expands the edge-list product for one vertex binding.
template <typename F>
void ForEachRow(const PatternGraph& p, const std::vector<RowId>& verts,
                const std::vector<const std::vector<RowId>*>& lists, F&& f) {
  std::vector<ElementId> row(p.n() + p.m());
  for (size_t v = 0; v < p.n(); ++v) row[v] = {p.vertices[v].label, verts[v]};
  std::vector<size_t> idx(p.m(), 0);
  while (true) {
    for (size_t e = 0; e < p.m(); ++e) row[p.n() + e] = {p.edges[e].label, (*lists[e])[idx[e]]};
    f(row);
    size_t k = p.m();
    while (k > 0) {
      --k;
      if (++idx[k] < lists[k]->size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (p.m() == 0) return;
  }
}

// Pattern with vertices renumbered in BFS order so every vertex after the first
// has an anchor edge. order[i] is the original index of new vertex i.
PatternGraph ConnectedOrder(const PatternGraph& p, std::vector<int>& order) {
  order.clear();
  std::vector<int> pos(p.n(), -1);
  for (size_t start = 0; start < p.n(); ++start) {
    if (pos[start] >= 0) continue;
    pos[start] = static_cast<int>(order.size());
    order.push_back(static_cast<int>(start));
    for (size_t head = order.size() - 1; head < order.size(); ++head) {
      VertexMask nb = p.Neighbors(order[head]);
      for (size_t u = 0; u < p.n(); ++u) {
        if ((nb >> u & 1) && pos[u] < 0) {
          pos[u] = static_cast<int>(order.size());
          order.push_back(static_cast<int>(u));
        }
      }
    }
  }
  PatternGraph q;
  for (int v : order) q.vertices.push_back(p.vertices[v]);
  q.edges = p.edges;
  for (auto& e : q.edges) {
    e.src = pos[e.src];
    e.tgt = pos[e.tgt];
  }
  return q;
}

}  // namespace

GraphRelation MatchBruteforce(const GraphView& g, const PatternGraph& p, MatchMode mode,
                              const InstanceFilter* filter) {
  GraphRelation gr;
  for (const auto& v : p.vertices) gr.vars.push_back(v.var);
  for (const auto& e : p.edges) gr.vars.push_back(e.var);
  std::vector<int> order;
  PatternGraph q = ConnectedOrder(p, order);
  Matcher matcher(g, q, filter);
  matcher.Run([&](const std::vector<RowId>& verts, const std::vector<const std::vector<RowId>*>& lists) {
    ForEachRow(q, verts, lists, [&](const std::vector<ElementId>& row) {
      if (!RowDistinct(row, q.n(), mode)) return;
      std::vector<ElementId> out(row);
      for (size_t i = 0; i < order.size(); ++i) out[order[i]] = row[i];
      gr.rows.push_back(std::move(out));
    });
  });
  std::sort(gr.rows.begin(), gr.rows.end());
  return gr;
}

uint64_t CountMatches(const GraphView& g, const PatternGraph& p, MatchMode mode) {
  uint64_t count = 0;
  std::vector<int> order;
  PatternGraph q = ConnectedOrder(p, order);
  Matcher matcher(g, q, nullptr);
  matcher.Run([&](const std::vector<RowId>& verts, const std::vector<const std::vector<RowId>*>& lists) {
    if (mode == MatchMode::kNone) {
      uint64_t prod = 1;
      for (const auto* l : lists) prod *= l->size();
      count += prod;
      return;
    }
    ForEachRow(q, verts, lists, [&](const std::vector<ElementId>& row) {
      if (RowDistinct(row, q.n(), mode)) ++count;
    });
  });
  return count;
}

RelationPtr ProjectColumns(const GraphView& g, const GraphRelation& gr,
                           const std::vector<GraphColumnBinding>& columns, const PatternGraph& p) {
  std::vector<Attribute> attrs;
  std::vector<Relation::Column> cols;
  for (const auto& c : columns) {
    if (c.kind == ast::ColumnKind::kAttr) {
      LabelId l = c.is_edge ? p.edges[c.element].label : p.vertices[c.element].label;
      const Attribute& a = g.label(l).relation->schema().attribute(c.attr);
      attrs.push_back({c.alias, a.type});
      if (a.type == AttrType::kInt64) {
        cols.emplace_back(std::vector<int64_t>());
      } else {
        cols.emplace_back(std::vector<std::string>());
      }
    } else {
      attrs.push_back({c.alias, AttrType::kString});
      cols.emplace_back(std::vector<std::string>());
    }
  }
  for (const auto& row : gr.rows) {
    for (size_t i = 0; i < columns.size(); ++i) {
      const auto& c = columns[i];
      size_t pos = c.is_edge ? p.n() + c.element : c.element;
      if (pos >= row.size()) throw Error(ErrorCode::kUnknownAttribute, "column " + c.alias + " outside binding");
      ElementId id = row[pos];
      switch (c.kind) {
        case ast::ColumnKind::kId:
          std::get<1>(cols[i]).push_back(g.ElementString(id));
          break;
        case ast::ColumnKind::kLabel:
          std::get<1>(cols[i]).push_back(g.label_name(id.label));
          break;
        case ast::ColumnKind::kAttr: {
          Value v = g.label(id.label).relation->value(id.rid, c.attr);
          if (IsInt(v)) {
            std::get<0>(cols[i]).push_back(std::get<int64_t>(v));
          } else {
            std::get<1>(cols[i]).push_back(std::get<std::string>(v));
          }
          break;
        }
      }
    }
  }
  // Arity-0 projections still keep one empty tuple per binding.
  return std::make_shared<Relation>(Schema("graph_table", attrs), std::move(cols), gr.rows.size());
}

std::vector<std::vector<std::string>> StringTable::SortedRows() const {
  auto out = rows;
  std::sort(out.begin(), out.end());
  return out;
}

bool StringTable::SameMultiset(const StringTable& other) const { return SortedRows() == other.SortedRows(); }

std::string StringTable::ToCsv(bool header) const {
  std::ostringstream out;
  if (header) {
    for (size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << CsvEscape(columns[i]);
    out << "\n";
  }
  for (const auto& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << CsvEscape(r[i]);
    out << "\n";
  }
  return out.str();
}

StringTable EvaluateReference(const BoundQuery& q) {
  const GraphView& g = *q.graph.graph;
  GraphRelation gr = MatchBruteforce(g, q.graph.pattern, q.graph.mode);
  RelationPtr gt = ProjectColumns(g, gr, q.graph.columns, q.graph.pattern);
  std::vector<const Relation*> rels;
  for (const auto& in : q.inputs) rels.push_back(in.kind == InputKind::kGraph ? gt.get() : in.relation.get());
  size_t k = rels.size();
  // Each predicate is checked at the first depth where all its inputs are bound.
  std::vector<std::vector<const BoundPredicate*>> at_depth(k);
  for (const auto& p : q.predicates) {
    int depth = 0;
    for (int in : p.Inputs()) depth = std::max(depth, in);
    at_depth[depth].push_back(&p);
  }
  StringTable out;
  for (const auto& o : q.outputs) out.columns.push_back(o.name);
  std::vector<RowId> cur(k);
  auto value = [&](const BoundOperand& o) {
    if (!o.is_column) return o.literal;
    return rels[o.column.input]->value(cur[o.column.input], o.column.column);
  };
  std::function<void(size_t)> rec = [&](size_t depth) {
    if (depth == k) {
      std::vector<std::string> row;
      for (const auto& o : q.outputs) row.push_back(ValueToString(value({true, o.column, {}})));
      out.rows.push_back(std::move(row));
      return;
    }
    for (RowId r = 0; r < rels[depth]->size(); ++r) {
      cur[depth] = r;
      bool ok = true;
      for (const auto* p : at_depth[depth]) {
        if (!CompareValues(p->op, value(p->lhs), value(p->rhs))) {
          ok = false;
          break;
        }
      }
      if (ok) rec(depth + 1);
    }
  };
  rec(0);
  return out;
}

std::string GraphRelationCsv(const GraphView& g, const GraphRelation& gr) {
  std::vector<std::string> lines;
  for (const auto& row : gr.rows) {
    std::string line;
    for (size_t i = 0; i < row.size(); ++i) line += (i ? "," : "") + g.ElementString(row[i]);
    lines.push_back(line);
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace spjm
