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

#include <algorithm>
#include <cstring>
#include <span>

#include "exec_internal.h"

namespace spjm::exec {

namespace {

LabelId VertexLabel(const GraphView& g, const std::string& name) {
  LabelId l = g.LabelOrThrow(name);
  if (!g.label(l).is_vertex) throw Error(ErrorCode::kSchemaMismatch, name + " is not a vertex label");
  return l;
}

LabelId EdgeLabel(const GraphView& g, const std::string& name) {
  LabelId l = g.LabelOrThrow(name);
  if (g.label(l).is_vertex) throw Error(ErrorCode::kSchemaMismatch, name + " is not an edge label");
  return l;
}

int ElementColumn(const std::vector<SlotColumn>& schema, const std::string& var) {
  int i = ColumnIndex(schema, var);
  if (schema[i].type != SlotType::kElement) throw Error(ErrorCode::kSchemaMismatch, var + " is not an element column");
  return i;
}

void CheckNewVar(const std::vector<SlotColumn>& schema, const std::string& var) {
  for (const auto& c : schema) {
    if (c.name == var) throw Error(ErrorCode::kSchemaMismatch, "variable " + var + " bound twice");
  }
}

// Label the expansion reaches, or kNoLabel when `dir` does not fit `from`.
LabelId FarLabel(const LabelInfo& edge, LabelId from, Direction dir) {
  switch (dir) {
    case Direction::kOut:
      return edge.src_label == from ? edge.tgt_label : kNoLabel;
    case Direction::kIn:
      return edge.tgt_label == from ? edge.src_label : kNoLabel;
    case Direction::kBoth:
      return edge.src_label == from && edge.tgt_label == from ? from : kNoLabel;
  }
  return kNoLabel;
}

// Adjacency of one vertex; kBoth merges the out and in lists into `buf`.
std::span<const AdjEntry> AdjacencyOf(const GraphView& g, LabelId edge_label, Direction dir, RowId rid,
                                      std::vector<AdjEntry>& buf) {
  if (dir != Direction::kBoth) return g.Adjacency(edge_label, dir).Of(rid);
  auto out = g.Adjacency(edge_label, Direction::kOut).Of(rid);
  auto in = g.Adjacency(edge_label, Direction::kIn).Of(rid);
  buf.resize(out.size() + in.size());
  std::merge(out.begin(), out.end(), in.begin(), in.end(), buf.begin(), [](const AdjEntry& a, const AdjEntry& b) {
    return a.neighbor != b.neighbor ? a.neighbor < b.neighbor : a.edge < b.edge;
  });
  return {buf.data(), buf.size()};
}

class ScanElementOp : public Operator {
 public:
  ScanElementOp(const PlanNode& n, ExecContext& ctx, bool vertex) : ctx_(ctx) {
    const GraphView& g = ctx.Graph();
    label_ = vertex ? VertexLabel(g, n.label) : EdgeLabel(g, n.label);
    rel_ = g.label(label_).relation.get();
    preds_ = ResolveAttrPredicates(*rel_, n.constraints);
    schema_ = {{n.var, SlotType::kElement, label_}};
  }

  bool Next(Batch& out) override {
    ctx_.Check();
    out.Reset(1);
    while (next_ < rel_->size() && !out.Full()) {
      RowId r = next_++;
      if (EvalElementPredicates(*rel_, r, preds_)) *out.Append() = ElementId{label_, r}.Pack();
    }
    return out.size > 0;
  }

 private:
  ExecContext& ctx_;
  LabelId label_ = 0;
  const Relation* rel_ = nullptr;
  std::vector<ElementPredicate> preds_;
  RowId next_ = 0;
};

// Shared driver for operators that emit a variable number of rows per input row.
class FlatMapOp : public Operator {
 public:
  bool Next(Batch& out) override {
    out.Reset(width());
    while (!out.Full()) {
      if (!HasMore()) {
        if (++pos_ >= in_.size) {
          ctx_->Check();
          if (done_ || !child_->Next(in_)) {
            done_ = true;
            break;
          }
          pos_ = 0;
        }
        Start(in_.Row(pos_));
        continue;
      }
      Emit(in_.Row(pos_), out);
    }
    return out.size > 0;
  }

 protected:
  virtual void Start(const uint64_t* row) = 0;
  virtual bool HasMore() const = 0;
  // Appends at most one row.
  virtual void Emit(const uint64_t* row, Batch& out) = 0;

  void Init(const PlanNode& n, ExecContext& ctx) {
    ctx_ = &ctx;
    if (n.children.size() != 1) throw Error(ErrorCode::kSchemaMismatch, std::string(OpKindName(n.kind)) + " takes one child");
    child_ = Build(*n.children[0], ctx);
    schema_ = child_->schema();
    in_width_ = child_->width();
  }

  uint64_t* AppendCopy(const uint64_t* row, Batch& out) const {
    uint64_t* o = out.Append();
    std::memcpy(o, row, in_width_ * sizeof(uint64_t));
    return o;
  }

  ExecContext* ctx_ = nullptr;
  OpPtr child_;
  size_t in_width_ = 0;

 private:
  Batch in_;
  size_t pos_ = 0;
  bool done_ = false;
};

// EXPAND_EDGE emits (input, edge); EXPAND emits (input, neighbor).
class ExpandOp : public FlatMapOp {
 public:
  ExpandOp(const PlanNode& n, ExecContext& ctx, bool fused) : fused_(fused) {
    Init(n, ctx);
    const GraphView& g = ctx.Graph();
    g_ = &g;
    from_ = ElementColumn(schema_, n.from);
    dir_ = n.dir;
    edge_label_ = EdgeLabel(g, fused ? n.edge_label : n.label);
    LabelId far = FarLabel(g.label(edge_label_), schema_[from_].label, dir_);
    if (far == kNoLabel) throw Error(ErrorCode::kSchemaMismatch, "expansion direction does not fit labels");
    CheckNewVar(schema_, n.var);
    if (fused) {
      if (VertexLabel(g, n.label) != far) throw Error(ErrorCode::kSchemaMismatch, "EXPAND target label mismatch");
      far_label_ = far;
      preds_ = ResolveAttrPredicates(*g.label(far).relation, n.constraints);
      schema_.push_back({n.var, SlotType::kElement, far});
    } else {
      preds_ = ResolveAttrPredicates(*g.label(edge_label_).relation, n.edge_constraints);
      schema_.push_back({n.var, SlotType::kElement, edge_label_});
    }
  }

 protected:
  void Start(const uint64_t* row) override {
    adj_ = AdjacencyOf(*g_, edge_label_, dir_, ElementId::Unpack(row[from_]).rid, buf_);
    i_ = 0;
  }
  bool HasMore() const override { return i_ < adj_.size(); }
  void Emit(const uint64_t* row, Batch& out) override {
    const AdjEntry& a = adj_[i_++];
    if (fused_) {
      if (!preds_.empty() && !EvalElementPredicates(*g_->label(far_label_).relation, a.neighbor, preds_)) return;
      AppendCopy(row, out)[in_width_] = ElementId{far_label_, a.neighbor}.Pack();
    } else {
      if (!preds_.empty() && !EvalElementPredicates(*g_->label(edge_label_).relation, a.edge, preds_)) return;
      AppendCopy(row, out)[in_width_] = ElementId{edge_label_, a.edge}.Pack();
    }
  }

 private:
  bool fused_;
  const GraphView* g_ = nullptr;
  int from_ = 0;
  Direction dir_ = Direction::kOut;
  LabelId edge_label_ = 0;
  LabelId far_label_ = kNoLabel;
  std::vector<ElementPredicate> preds_;
  std::span<const AdjEntry> adj_;
  std::vector<AdjEntry> buf_;
  size_t i_ = 0;
};

class GetVertexOp : public FlatMapOp {
 public:
  GetVertexOp(const PlanNode& n, ExecContext& ctx) {
    Init(n, ctx);
    const GraphView& g = ctx.Graph();
    g_ = &g;
    edge_ = ElementColumn(schema_, n.edge);
    from_ = ElementColumn(schema_, n.from);
    dir_ = n.dir;
    edge_label_ = schema_[edge_].label;
    if (edge_label_ == kNoLabel || g.label(edge_label_).is_vertex) throw Error(ErrorCode::kSchemaMismatch, n.edge + " is not an edge");
    label_ = VertexLabel(g, n.label);
    if (FarLabel(g.label(edge_label_), schema_[from_].label, dir_) != label_) {
      throw Error(ErrorCode::kSchemaMismatch, "GET_VERTEX label mismatch");
    }
    CheckNewVar(schema_, n.var);
    preds_ = ResolveAttrPredicates(*g.label(label_).relation, n.constraints);
    schema_.push_back({n.var, SlotType::kElement, label_});
  }

 protected:
  void Start(const uint64_t*) override { pending_ = true; }
  bool HasMore() const override { return pending_; }
  void Emit(const uint64_t* row, Batch& out) override {
    pending_ = false;
    RowId e = ElementId::Unpack(row[edge_]).rid;
    RowId src = g_->SourceRid(edge_label_, e);
    RowId tgt = g_->TargetRid(edge_label_, e);
    RowId v = 0;
    if (dir_ == Direction::kOut) {
      v = tgt;
    } else if (dir_ == Direction::kIn) {
      v = src;
    } else {
      v = src == ElementId::Unpack(row[from_]).rid ? tgt : src;
    }
    if (!preds_.empty() && !EvalElementPredicates(*g_->label(label_).relation, v, preds_)) return;
    AppendCopy(row, out)[in_width_] = ElementId{label_, v}.Pack();
  }

 private:
  const GraphView* g_ = nullptr;
  int edge_ = 0;
  int from_ = 0;
  Direction dir_ = Direction::kOut;
  LabelId edge_label_ = 0;
  LabelId label_ = 0;
  std::vector<ElementPredicate> preds_;
  bool pending_ = false;
};

// Leapfrog intersection of the legs' sorted adjacency lists, then the
// product of each leg's edges to every surviving common neighbor.
class ExpandIntersectOp : public FlatMapOp {
 public:
  ExpandIntersectOp(const PlanNode& n, ExecContext& ctx) : emit_edges_(n.emit_edges) {
    Init(n, ctx);
    const GraphView& g = ctx.Graph();
    g_ = &g;
    if (n.legs.size() < 2) throw Error(ErrorCode::kSchemaMismatch, "EXPAND_INTERSECT needs at least two legs");
    label_ = VertexLabel(g, n.label);
    preds_ = ResolveAttrPredicates(*g.label(label_).relation, n.constraints);
    for (const auto& l : n.legs) {
      Leg leg;
      leg.from = ElementColumn(schema_, l.from);
      leg.label = EdgeLabel(g, l.edge_label);
      leg.dir = l.dir;
      if (FarLabel(g.label(leg.label), schema_[leg.from].label, leg.dir) != label_) {
        throw Error(ErrorCode::kSchemaMismatch, "EXPAND_INTERSECT leg " + l.edge + " does not reach " + n.label);
      }
      leg.preds = ResolveAttrPredicates(*g.label(leg.label).relation, l.edge_constraints);
      legs_.push_back(std::move(leg));
    }
    if (emit_edges_) {
      for (size_t i = 0; i < n.legs.size(); ++i) {
        CheckNewVar(schema_, n.legs[i].edge);
        schema_.push_back({n.legs[i].edge, SlotType::kElement, legs_[i].label});
      }
    }
    CheckNewVar(schema_, n.var);
    schema_.push_back({n.var, SlotType::kElement, label_});
    bufs_.resize(legs_.size());
    lists_.resize(legs_.size());
    idx_.resize(legs_.size());
    odo_.resize(legs_.size());
  }

 protected:
  void Start(const uint64_t* row) override {
    size_t k = legs_.size();
    centers_.clear();
    edges_.clear();
    offsets_.clear();
    cur_ = 0;
    std::fill(odo_.begin(), odo_.end(), 0);
    for (size_t i = 0; i < k; ++i) {
      lists_[i] = AdjacencyOf(*g_, legs_[i].label, legs_[i].dir, ElementId::Unpack(row[legs_[i].from]).rid, bufs_[i]);
      if (lists_[i].empty()) return;
      idx_[i] = 0;
    }
    const Relation& center_rel = *g_->label(label_).relation;
    while (true) {
      RowId target = 0;
      for (size_t i = 0; i < k; ++i) target = std::max(target, lists_[i][idx_[i]].neighbor);
      bool aligned = true;
      for (size_t i = 0; i < k; ++i) {
        idx_[i] = Gallop(lists_[i], idx_[i], target);
        if (idx_[i] >= lists_[i].size()) return;
        if (lists_[i][idx_[i]].neighbor != target) aligned = false;
      }
      if (!aligned) continue;
      bool ok = preds_.empty() || EvalElementPredicates(center_rel, target, preds_);
      size_t mark = edges_.size();
      size_t off_mark = offsets_.size();
      for (size_t i = 0; i < k; ++i) {
        offsets_.push_back(static_cast<uint32_t>(edges_.size()));
        size_t j = idx_[i];
        for (; j < lists_[i].size() && lists_[i][j].neighbor == target; ++j) {
          if (!ok) continue;
          RowId e = lists_[i][j].edge;
          if (legs_[i].preds.empty() || EvalElementPredicates(*g_->label(legs_[i].label).relation, e, legs_[i].preds)) {
            edges_.push_back(e);
          }
        }
        if (edges_.size() == offsets_.back()) ok = false;
        idx_[i] = j;
      }
      if (ok) {
        offsets_.push_back(static_cast<uint32_t>(edges_.size()));
        centers_.push_back(target);
      } else {
        edges_.resize(mark);
        offsets_.resize(off_mark);
      }
      for (size_t i = 0; i < k; ++i) {
        if (idx_[i] >= lists_[i].size()) return;
      }
    }
  }

  bool HasMore() const override { return cur_ < centers_.size(); }

  void Emit(const uint64_t* row, Batch& out) override {
    size_t k = legs_.size();
    const uint32_t* off = offsets_.data() + cur_ * (k + 1);
    uint64_t* o = AppendCopy(row, out);
    size_t w = in_width_;
    if (emit_edges_) {
      for (size_t i = 0; i < k; ++i) o[w++] = ElementId{legs_[i].label, edges_[off[i] + odo_[i]]}.Pack();
    }
    o[w] = ElementId{label_, centers_[cur_]}.Pack();
    // Advance the odometer over the per-leg edge runs.
    size_t i = k;
    while (i > 0) {
      --i;
      if (++odo_[i] < off[i + 1] - off[i]) return;
      odo_[i] = 0;
    }
    ++cur_;
  }

 private:
  struct Leg {
    int from = 0;
    LabelId label = 0;
    Direction dir = Direction::kOut;
    std::vector<ElementPredicate> preds;
  };

  static size_t Gallop(std::span<const AdjEntry> list, size_t from, RowId target) {
    if (from >= list.size() || list[from].neighbor >= target) return from;
    size_t step = 1;
    size_t lo = from;
    size_t hi = from + 1;
    while (hi < list.size() && list[hi].neighbor < target) {
      lo = hi;
      step *= 2;
      hi = from + step;
    }
    hi = std::min(hi, list.size());
    auto it = std::lower_bound(list.begin() + lo, list.begin() + hi, target,
                               [](const AdjEntry& a, RowId t) { return a.neighbor < t; });
    return static_cast<size_t>(it - list.begin());
  }

  bool emit_edges_;
  const GraphView* g_ = nullptr;
  LabelId label_ = 0;
  std::vector<ElementPredicate> preds_;
  std::vector<Leg> legs_;
  std::vector<std::vector<AdjEntry>> bufs_;
  std::vector<std::span<const AdjEntry>> lists_;
  std::vector<size_t> idx_;
  // Matches of the current input row: centers, concatenated per-leg edge runs, run offsets (k+1 per match).
  std::vector<RowId> centers_;
  std::vector<RowId> edges_;
  std::vector<uint32_t> offsets_;
  std::vector<size_t> odo_;
  size_t cur_ = 0;
};

// Prepends key slots to each row of its child so RowHashTable can key on them.
class KeyedOp : public Operator {
 public:
  KeyedOp(OpPtr child, const std::vector<GraphKey>& keys, const GraphView& g) : child_(std::move(child)), g_(g) {
    for (const auto& k : keys) {
      Part p;
      p.col = ElementColumn(child_->schema(), k.var);
      LabelId l = child_->schema()[p.col].label;
      if (!k.attr.empty()) {
        const Relation& rel = *g.label(l).relation;
        auto a = rel.schema().IndexOf(k.attr);
        if (!a) throw Error(ErrorCode::kSchemaMismatch, k.var + " has no attribute " + k.attr);
        p.attr = static_cast<int>(*a);
        p.rel = &rel;
        p.type = rel.schema().attribute(*a).type == AttrType::kInt64 ? SlotType::kInt : SlotType::kString;
      }
      schema_.push_back({k.var + (k.attr.empty() ? "" : "." + k.attr), p.type, kNoLabel});
      parts_.push_back(p);
    }
    schema_.insert(schema_.end(), child_->schema().begin(), child_->schema().end());
  }

  bool Next(Batch& out) override {
    out.Reset(width());
    if (!child_->Next(in_)) return false;
    size_t kw = parts_.size();
    for (size_t r = 0; r < in_.size; ++r) {
      const uint64_t* row = in_.Row(r);
      uint64_t* o = out.Append();
      for (size_t i = 0; i < kw; ++i) {
        const Part& p = parts_[i];
        uint64_t v = row[p.col];
        if (p.attr >= 0) {
          RowId rid = ElementId::Unpack(v).rid;
          const auto& col = p.rel->column(p.attr);
          v = col.index() == 0 ? IntSlot(std::get<0>(col)[rid]) : StrSlot(&std::get<1>(col)[rid]);
        }
        o[i] = v;
      }
      std::memcpy(o + kw, row, in_.width * sizeof(uint64_t));
    }
    return true;
  }

  size_t key_width() const { return parts_.size(); }
  const Operator& child() const { return *child_; }

 private:
  struct Part {
    int col = 0;
    int attr = -1;
    const Relation* rel = nullptr;
    SlotType type = SlotType::kElement;
  };

  OpPtr child_;
  const GraphView& g_;
  std::vector<Part> parts_;
  Batch in_;
};

class GraphHashJoinOp : public Operator {
 public:
  GraphHashJoinOp(const PlanNode& n, ExecContext& ctx) : ctx_(ctx), build_left_(n.build_left) {
    if (n.children.size() != 2) throw Error(ErrorCode::kSchemaMismatch, "GRAPH_HASH_JOIN takes two children");
    if (n.gleft_keys.empty() || n.gleft_keys.size() != n.gright_keys.size()) {
      throw Error(ErrorCode::kSchemaMismatch, "GRAPH_HASH_JOIN needs matching non-empty key lists");
    }
    const GraphView& g = ctx.Graph();
    left_ = std::make_unique<KeyedOp>(Build(*n.children[0], ctx), n.gleft_keys, g);
    right_ = std::make_unique<KeyedOp>(Build(*n.children[1], ctx), n.gright_keys, g);
    size_t kw = n.gleft_keys.size();
    for (size_t i = 0; i < kw; ++i) {
      SlotType a = left_->schema()[i].type;
      if (a != right_->schema()[i].type) throw Error(ErrorCode::kSchemaMismatch, "graph join key type mismatch");
      key_.cols.push_back(static_cast<int>(i));
      key_.is_string.push_back(a == SlotType::kString);
    }
    const auto& ls = left_->child().schema();
    const auto& rs = right_->child().schema();
    schema_ = ls;
    for (size_t i = 0; i < rs.size(); ++i) {
      bool shared = false;
      for (const auto& c : ls) shared = shared || c.name == rs[i].name;
      if (!shared) {
        schema_.push_back(rs[i]);
        right_keep_.push_back(static_cast<int>(kw + i));
      }
    }
    lw_ = ls.size();
    kw_ = kw;
  }

  bool Next(Batch& out) override {
    if (!built_) {
      table_.Build(build_left_ ? static_cast<Operator&>(*left_) : *right_, key_, ctx_);
      built_ = true;
    }
    Operator& probe = build_left_ ? static_cast<Operator&>(*right_) : *left_;
    out.Reset(width());
    while (!out.Full()) {
      if (chain_ == RowHashTable::kEnd) {
        if (++pos_ >= in_.size) {
          ctx_.Check();
          if (done_ || !probe.Next(in_)) {
            done_ = true;
            break;
          }
          pos_ = 0;
        }
        hash_ = key_.Hash(in_.Row(pos_));
        chain_ = table_.Head(hash_);
        continue;
      }
      uint32_t b = chain_;
      chain_ = table_.Chain(b);
      if (table_.RowHash(b) != hash_) continue;
      const uint64_t* prow = in_.Row(pos_);
      const uint64_t* brow = table_.Row(b);
      if (!key_.Equal(prow, key_, brow)) continue;
      const uint64_t* lrow = build_left_ ? brow : prow;
      const uint64_t* rrow = build_left_ ? prow : brow;
      uint64_t* o = out.Append();
      std::memcpy(o, lrow + kw_, lw_ * sizeof(uint64_t));
      for (size_t i = 0; i < right_keep_.size(); ++i) o[lw_ + i] = rrow[right_keep_[i]];
    }
    return out.size > 0;
  }

 private:
  ExecContext& ctx_;
  bool build_left_;
  std::unique_ptr<KeyedOp> left_;
  std::unique_ptr<KeyedOp> right_;
  KeySpec key_;
  std::vector<int> right_keep_;
  size_t lw_ = 0;
  size_t kw_ = 0;
  RowHashTable table_;
  bool built_ = false;
  Batch in_;
  size_t pos_ = 0;
  uint32_t chain_ = RowHashTable::kEnd;
  uint64_t hash_ = 0;
  bool done_ = false;
};

class ScanGraphTableOp : public Operator {
 public:
  ScanGraphTableOp(const PlanNode& n, ExecContext& ctx) : ctx_(ctx) {
    if (n.children.size() != 1) throw Error(ErrorCode::kSchemaMismatch, "SCAN_GRAPH_TABLE takes one child");
    GraphPtr g = ctx.catalog.GetGraph(n.graph);
    if (ctx.graph && ctx.graph != g) throw Error(ErrorCode::kSchemaMismatch, "plan mixes graphs");
    ctx.graph = g;
    child_ = Build(*n.children[0], ctx);
    for (const auto& c : n.columns) {
      Col col;
      col.src = ElementColumn(child_->schema(), c.var);
      col.kind = c.kind;
      LabelId l = child_->schema()[col.src].label;
      std::string name = n.alias + "." + c.name;
      switch (c.kind) {
        case TableColumnKind::kAttr: {
          const Relation& rel = *g->label(l).relation;
          auto a = rel.schema().IndexOf(c.attr);
          if (!a) throw Error(ErrorCode::kSchemaMismatch, c.var + " has no attribute " + c.attr);
          col.rel = &rel;
          col.attr = *a;
          schema_.push_back({name, rel.schema().attribute(*a).type == AttrType::kInt64 ? SlotType::kInt : SlotType::kString,
                             kNoLabel});
          break;
        }
        case TableColumnKind::kId:
          schema_.push_back({name, SlotType::kElement, l});
          break;
        case TableColumnKind::kLabel:
          schema_.push_back({name, SlotType::kString, kNoLabel});
          break;
      }
      cols_.push_back(col);
    }
  }

  bool Next(Batch& out) override {
    ctx_.Check();
    out.Reset(width());
    if (!child_->Next(in_)) return false;
    for (size_t r = 0; r < in_.size; ++r) {
      const uint64_t* row = in_.Row(r);
      uint64_t* o = out.Append();
      for (size_t i = 0; i < cols_.size(); ++i) {
        const Col& c = cols_[i];
        uint64_t v = row[c.src];
        switch (c.kind) {
          case TableColumnKind::kAttr: {
            RowId rid = ElementId::Unpack(v).rid;
            const auto& col = c.rel->column(c.attr);
            o[i] = col.index() == 0 ? IntSlot(std::get<0>(col)[rid]) : StrSlot(&std::get<1>(col)[rid]);
            break;
          }
          case TableColumnKind::kId:
            o[i] = v;
            break;
          case TableColumnKind::kLabel:
            o[i] = StrSlot(&ctx_.graph->label_name(ElementId::Unpack(v).label));
            break;
        }
      }
    }
    return true;
  }

 private:
  struct Col {
    int src = 0;
    TableColumnKind kind = TableColumnKind::kAttr;
    const Relation* rel = nullptr;
    size_t attr = 0;
  };

  ExecContext& ctx_;
  OpPtr child_;
  std::vector<Col> cols_;
  Batch in_;
};

}  // namespace

OpPtr BuildGraph(const PlanNode& n, ExecContext& ctx) {
  switch (n.kind) {
    case OpKind::kScanVertex:
      return std::make_unique<ScanElementOp>(n, ctx, true);
    case OpKind::kScanEdge:
      return std::make_unique<ScanElementOp>(n, ctx, false);
    case OpKind::kExpandEdge:
      return std::make_unique<ExpandOp>(n, ctx, false);
    case OpKind::kExpand:
      return std::make_unique<ExpandOp>(n, ctx, true);
    case OpKind::kGetVertex:
      return std::make_unique<GetVertexOp>(n, ctx);
    case OpKind::kExpandIntersect:
      return std::make_unique<ExpandIntersectOp>(n, ctx);
    case OpKind::kGraphHashJoin:
      return std::make_unique<GraphHashJoinOp>(n, ctx);
    case OpKind::kScanGraphTable:
      return std::make_unique<ScanGraphTableOp>(n, ctx);
    default:
      throw Error(ErrorCode::kSchemaMismatch, std::string("not a graph operator: ") + OpKindName(n.kind));
  }
}

}  // namespace spjm::exec
