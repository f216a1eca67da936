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

#include "exec_internal.h"

namespace spjm::exec {

namespace {

SlotType TypeOf(AttrType t) { return t == AttrType::kInt64 ? SlotType::kInt : SlotType::kString; }

std::vector<SlotColumn> ScanSchema(const Relation& rel, const std::string& alias, LabelId id_label) {
  std::vector<SlotColumn> out;
  for (const auto& a : rel.schema().attributes()) out.push_back({alias + "." + a.name, TypeOf(a.type), kNoLabel});
  if (id_label != kNoLabel) out.push_back({alias + ".#id", SlotType::kElement, id_label});
  return out;
}

void FillRow(const Relation& rel, RowId r, LabelId id_label, uint64_t* out) {
  size_t k = rel.schema().size();
  for (size_t i = 0; i < k; ++i) {
    const auto& col = rel.column(i);
    out[i] = col.index() == 0 ? IntSlot(std::get<0>(col)[r]) : StrSlot(&std::get<1>(col)[r]);
  }
  if (id_label != kNoLabel) out[k] = ElementId{id_label, r}.Pack();
}

struct CompiledPredicate {
  int lhs = 0;
  CmpOp op = CmpOp::kEq;
  bool rhs_is_column = false;
  int rhs = 0;
  bool is_string = false;
  int64_t lit_int = 0;
  std::string lit_str;

  bool Eval(const uint64_t* row) const {
    if (is_string) {
      const std::string& a = SlotStr(row[lhs]);
      const std::string& b = rhs_is_column ? SlotStr(row[rhs]) : lit_str;
      return ApplyCmp(op, a, b);
    }
    int64_t a = SlotInt(row[lhs]);
    int64_t b = rhs_is_column ? SlotInt(row[rhs]) : lit_int;
    return ApplyCmp(op, a, b);
  }
};

std::vector<CompiledPredicate> Compile(const std::vector<PlanPredicate>& ps, const std::vector<SlotColumn>& schema) {
  std::vector<CompiledPredicate> out;
  for (const auto& p : ps) {
    CompiledPredicate c;
    c.lhs = ColumnIndex(schema, p.lhs);
    c.op = p.op;
    SlotType lt = schema[c.lhs].type;
    if (lt == SlotType::kElement) throw Error(ErrorCode::kSchemaMismatch, "predicate on element column " + p.lhs);
    c.is_string = lt == SlotType::kString;
    if (p.rhs_is_column) {
      c.rhs_is_column = true;
      c.rhs = ColumnIndex(schema, p.rhs);
      if (schema[c.rhs].type != lt) throw Error(ErrorCode::kSchemaMismatch, "type mismatch: " + p.lhs + " vs " + p.rhs);
    } else {
      if (IsInt(p.literal) == c.is_string) throw Error(ErrorCode::kSchemaMismatch, "type mismatch on " + p.lhs);
      if (c.is_string) {
        c.lit_str = std::get<std::string>(p.literal);
      } else {
        c.lit_int = std::get<int64_t>(p.literal);
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

bool EvalAll(const std::vector<CompiledPredicate>& ps, const uint64_t* row) {
  for (const auto& p : ps) {
    if (!p.Eval(row)) return false;
  }
  return true;
}

class ScanOp : public Operator {
 public:
  ScanOp(const PlanNode& n, ExecContext& ctx) : ctx_(ctx) {
    rel_ = ctx.catalog.GetRelation(n.relation);
    ctx.keepalive.push_back(rel_);
    if (!n.element_label.empty()) id_label_ = ctx.Graph().LabelOrThrow(n.element_label);
    if (id_label_ != kNoLabel && ctx.Graph().label(id_label_).relation != rel_) {
      throw Error(ErrorCode::kSchemaMismatch, "label " + n.element_label + " is not backed by " + n.relation);
    }
    schema_ = ScanSchema(*rel_, n.alias, id_label_);
  }

  bool Next(Batch& out) override {
    ctx_.Check();
    out.Reset(width());
    while (next_ < rel_->size() && !out.Full()) FillRow(*rel_, next_++, id_label_, out.Append());
    return out.size > 0;
  }

 private:
  ExecContext& ctx_;
  RelationPtr rel_;
  LabelId id_label_ = kNoLabel;
  RowId next_ = 0;
};

class FilterOp : public Operator {
 public:
  FilterOp(const PlanNode& n, ExecContext& ctx) : ctx_(ctx) {
    if (n.children.size() != 1) throw Error(ErrorCode::kSchemaMismatch, "FILTER takes one child");
    child_ = Build(*n.children[0], ctx);
    schema_ = child_->schema();
    preds_ = Compile(n.predicates, schema_);
  }

  bool Next(Batch& out) override {
    out.Reset(width());
    while (!out.Full()) {
      ctx_.Check();
      if (pos_ >= in_.size) {
        if (done_ || !child_->Next(in_)) {
          done_ = true;
          break;
        }
        pos_ = 0;
      }
      for (; pos_ < in_.size && !out.Full(); ++pos_) {
        const uint64_t* row = in_.Row(pos_);
        if (EvalAll(preds_, row)) std::memcpy(out.Append(), row, width() * sizeof(uint64_t));
      }
    }
    return out.size > 0;
  }

 private:
  ExecContext& ctx_;
  OpPtr child_;
  std::vector<CompiledPredicate> preds_;
  Batch in_;
  size_t pos_ = 0;
  bool done_ = false;
};

class ProjectOp : public Operator {
 public:
  ProjectOp(const PlanNode& n, ExecContext& ctx) : ctx_(ctx) {
    if (n.children.size() != 1) throw Error(ErrorCode::kSchemaMismatch, "PROJECT takes one child");
    child_ = Build(*n.children[0], ctx);
    for (const auto& it : n.items) {
      int src = ColumnIndex(child_->schema(), it.source);
      const SlotColumn& c = child_->schema()[src];
      if (it.fn == ProjectFn::kLabel) {
        if (c.type != SlotType::kElement) throw Error(ErrorCode::kSchemaMismatch, "LABEL of non-element " + it.source);
        ctx.Graph();
        schema_.push_back({it.name, SlotType::kString, kNoLabel});
      } else {
        schema_.push_back({it.name, c.type, c.label});
      }
      src_.push_back(src);
      label_fn_.push_back(it.fn == ProjectFn::kLabel);
    }
  }

  bool Next(Batch& out) override {
    ctx_.Check();
    out.Reset(width());
    if (!child_->Next(in_)) return false;
    for (size_t r = 0; r < in_.size; ++r) {
      const uint64_t* row = in_.Row(r);
      uint64_t* o = out.Append();
      for (size_t i = 0; i < src_.size(); ++i) {
        uint64_t v = row[src_[i]];
        o[i] = label_fn_[i] ? StrSlot(&ctx_.graph->label_name(ElementId::Unpack(v).label)) : v;
      }
    }
    if (width() == 0) return true;
    return out.size > 0;
  }

 private:
  ExecContext& ctx_;
  OpPtr child_;
  std::vector<int> src_;
  std::vector<bool> label_fn_;
  Batch in_;
};

KeySpec MakeKey(const std::vector<SlotColumn>& schema, const std::vector<std::string>& names) {
  KeySpec k;
  for (const auto& n : names) {
    int i = ColumnIndex(schema, n);
    k.cols.push_back(i);
    k.is_string.push_back(schema[i].type == SlotType::kString);
  }
  return k;
}

void CheckKeyTypes(const std::vector<SlotColumn>& ls, const KeySpec& l, const std::vector<SlotColumn>& rs,
                   const KeySpec& r) {
  for (size_t i = 0; i < l.cols.size(); ++i) {
    if (ls[l.cols[i]].type != rs[r.cols[i]].type) {
      throw Error(ErrorCode::kSchemaMismatch, "join key type mismatch: " + ls[l.cols[i]].name + " vs " + rs[r.cols[i]].name);
    }
  }
}

class HashJoinOp : public Operator {
 public:
  HashJoinOp(const PlanNode& n, ExecContext& ctx) : ctx_(ctx), build_left_(n.build_left) {
    if (n.children.size() != 2) throw Error(ErrorCode::kSchemaMismatch, "HASH_JOIN takes two children");
    if (n.left_keys.size() != n.right_keys.size() || n.left_keys.empty()) {
      throw Error(ErrorCode::kSchemaMismatch, "HASH_JOIN needs matching non-empty key lists");
    }
    left_ = Build(*n.children[0], ctx);
    right_ = Build(*n.children[1], ctx);
    lkey_ = MakeKey(left_->schema(), n.left_keys);
    rkey_ = MakeKey(right_->schema(), n.right_keys);
    CheckKeyTypes(left_->schema(), lkey_, right_->schema(), rkey_);
    schema_ = left_->schema();
    schema_.insert(schema_.end(), right_->schema().begin(), right_->schema().end());
    residual_ = Compile(n.predicates, schema_);
    lw_ = left_->width();
  }

  bool Next(Batch& out) override {
    if (!built_) {
      table_.Build(build_left_ ? *left_ : *right_, build_left_ ? lkey_ : rkey_, ctx_);
      built_ = true;
    }
    Operator& probe = build_left_ ? *right_ : *left_;
    const KeySpec& pkey = build_left_ ? rkey_ : lkey_;
    const KeySpec& bkey = build_left_ ? lkey_ : rkey_;
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
        hash_ = pkey.Hash(in_.Row(pos_));
        chain_ = table_.Head(hash_);
        continue;
      }
      uint32_t b = chain_;
      chain_ = table_.Chain(b);
      if (table_.RowHash(b) != hash_) continue;
      const uint64_t* prow = in_.Row(pos_);
      const uint64_t* brow = table_.Row(b);
      if (!pkey.Equal(prow, bkey, brow)) continue;
      const uint64_t* lrow = build_left_ ? brow : prow;
      const uint64_t* rrow = build_left_ ? prow : brow;
      uint64_t* o = out.Append();
      std::memcpy(o, lrow, lw_ * sizeof(uint64_t));
      std::memcpy(o + lw_, rrow, (width() - lw_) * sizeof(uint64_t));
      if (!EvalAll(residual_, o)) {
        out.data.resize(out.data.size() - width());
        --out.size;
      }
    }
    return out.size > 0;
  }

 private:
  ExecContext& ctx_;
  bool build_left_;
  OpPtr left_;
  OpPtr right_;
  KeySpec lkey_;
  KeySpec rkey_;
  std::vector<CompiledPredicate> residual_;
  size_t lw_ = 0;
  RowHashTable table_;
  bool built_ = false;
  Batch in_;
  size_t pos_ = 0;
  uint32_t chain_ = RowHashTable::kEnd;
  uint64_t hash_ = 0;
  bool done_ = false;
};

class EvIndexJoinOp : public Operator {
 public:
  EvIndexJoinOp(const PlanNode& n, ExecContext& ctx) : ctx_(ctx), from_edge_(n.from_edge), end_is_source_(n.end_is_source), dir_(n.dir) {
    if (n.children.size() != 1) throw Error(ErrorCode::kSchemaMismatch, "EV_INDEX_JOIN takes one child");
    child_ = Build(*n.children[0], ctx);
    const GraphView& g = ctx.Graph();
    probe_ = ColumnIndex(child_->schema(), n.probe);
    const SlotColumn& pc = child_->schema()[probe_];
    if (pc.type != SlotType::kElement) throw Error(ErrorCode::kSchemaMismatch, "probe " + n.probe + " is not an element");
    edge_label_ = g.LabelOrThrow(n.edge_label);
    right_label_ = g.LabelOrThrow(n.element_label);
    rel_ = ctx.catalog.GetRelation(n.relation);
    ctx.keepalive.push_back(rel_);
    const LabelInfo& info = g.label(edge_label_);
    if (info.is_vertex) throw Error(ErrorCode::kSchemaMismatch, n.edge_label + " is not an edge label");
    if (from_edge_) {
      LabelId end = end_is_source_ ? info.src_label : info.tgt_label;
      if (pc.label != edge_label_ || end != right_label_) throw Error(ErrorCode::kSchemaMismatch, "EV lookup labels do not fit");
    } else {
      LabelId own = dir_ == Direction::kOut ? info.src_label : info.tgt_label;
      if (dir_ == Direction::kBoth || own != pc.label || right_label_ != edge_label_) {
        throw Error(ErrorCode::kSchemaMismatch, "VE lookup labels do not fit");
      }
    }
    schema_ = child_->schema();
    auto right = ScanSchema(*rel_, n.alias, right_label_);
    schema_.insert(schema_.end(), right.begin(), right.end());
    residual_ = Compile(n.predicates, schema_);
    lw_ = child_->width();
  }

  bool Next(Batch& out) override {
    const GraphView& g = *ctx_.graph;
    out.Reset(width());
    while (!out.Full()) {
      if (cand_pos_ >= cand_.size()) {
        if (++pos_ >= in_.size) {
          ctx_.Check();
          if (done_ || !child_->Next(in_)) {
            done_ = true;
            break;
          }
          pos_ = 0;
        }
        cand_.clear();
        cand_pos_ = 0;
        RowId rid = ElementId::Unpack(in_.Row(pos_)[probe_]).rid;
        if (from_edge_) {
          cand_.push_back(end_is_source_ ? g.SourceRid(edge_label_, rid) : g.TargetRid(edge_label_, rid));
        } else {
          for (const AdjEntry& a : g.Adjacency(edge_label_, dir_).Of(rid)) cand_.push_back(a.edge);
        }
        continue;
      }
      uint64_t* o = out.Append();
      std::memcpy(o, in_.Row(pos_), lw_ * sizeof(uint64_t));
      FillRow(*rel_, cand_[cand_pos_++], right_label_, o + lw_);
      if (!EvalAll(residual_, o)) {
        out.data.resize(out.data.size() - width());
        --out.size;
      }
    }
    return out.size > 0;
  }

 private:
  ExecContext& ctx_;
  bool from_edge_;
  bool end_is_source_;
  Direction dir_;
  OpPtr child_;
  int probe_ = 0;
  LabelId edge_label_ = 0;
  LabelId right_label_ = 0;
  RelationPtr rel_;
  std::vector<CompiledPredicate> residual_;
  size_t lw_ = 0;
  Batch in_;
  size_t pos_ = 0;
  std::vector<RowId> cand_;
  size_t cand_pos_ = 0;
  bool done_ = false;
};

class UnionAllOp : public Operator {
 public:
  UnionAllOp(const PlanNode& n, ExecContext& ctx) : ctx_(ctx) {
    if (n.children.empty()) throw Error(ErrorCode::kSchemaMismatch, "UNION_ALL needs children");
    for (const auto& c : n.children) children_.push_back(Build(*c, ctx));
    schema_ = children_[0]->schema();
    for (const auto& c : children_) {
      if (c->width() != width()) throw Error(ErrorCode::kSchemaMismatch, "UNION_ALL children differ in width");
      std::vector<int> map;
      for (const auto& col : schema_) {
        int i = ColumnIndex(c->schema(), col.name);
        if (c->schema()[i].type != col.type) throw Error(ErrorCode::kSchemaMismatch, "UNION_ALL type mismatch on " + col.name);
        map.push_back(i);
      }
      maps_.push_back(std::move(map));
    }
  }

  bool Next(Batch& out) override {
    out.Reset(width());
    while (cur_ < children_.size()) {
      ctx_.Check();
      if (!children_[cur_]->Next(in_)) {
        ++cur_;
        continue;
      }
      const auto& map = maps_[cur_];
      for (size_t r = 0; r < in_.size; ++r) {
        const uint64_t* row = in_.Row(r);
        uint64_t* o = out.Append();
        for (size_t i = 0; i < map.size(); ++i) o[i] = row[map[i]];
      }
      if (width() == 0) return true;
      return out.size > 0;
    }
    return false;
  }

 private:
  ExecContext& ctx_;
  std::vector<OpPtr> children_;
  std::vector<std::vector<int>> maps_;
  size_t cur_ = 0;
  Batch in_;
};

class AllDistinctOp : public Operator {
 public:
  AllDistinctOp(const PlanNode& n, ExecContext& ctx) : ctx_(ctx) {
    if (n.children.size() != 1) throw Error(ErrorCode::kSchemaMismatch, "ALL_DISTINCT takes one child");
    child_ = Build(*n.children[0], ctx);
    schema_ = child_->schema();
    for (const auto& g : n.groups) {
      std::vector<int> cols;
      for (const auto& name : g) {
        int i = ColumnIndex(schema_, name);
        if (schema_[i].type != SlotType::kElement) throw Error(ErrorCode::kSchemaMismatch, name + " is not an element");
        cols.push_back(i);
      }
      groups_.push_back(std::move(cols));
    }
  }

  bool Next(Batch& out) override {
    out.Reset(width());
    while (out.size == 0) {
      ctx_.Check();
      if (!child_->Next(in_)) return false;
      for (size_t r = 0; r < in_.size; ++r) {
        const uint64_t* row = in_.Row(r);
        if (Distinct(row)) std::memcpy(out.Append(), row, width() * sizeof(uint64_t));
      }
    }
    return true;
  }

 private:
  bool Distinct(const uint64_t* row) const {
    for (const auto& g : groups_) {
      for (size_t i = 0; i < g.size(); ++i) {
        for (size_t j = i + 1; j < g.size(); ++j) {
          if (row[g[i]] == row[g[j]]) return false;
        }
      }
    }
    return true;
  }

  ExecContext& ctx_;
  OpPtr child_;
  std::vector<std::vector<int>> groups_;
  Batch in_;
};

}  // namespace

OpPtr BuildRelational(const PlanNode& n, ExecContext& ctx) {
  switch (n.kind) {
    case OpKind::kScan:
      return std::make_unique<ScanOp>(n, ctx);
    case OpKind::kFilter:
      return std::make_unique<FilterOp>(n, ctx);
    case OpKind::kProject:
      return std::make_unique<ProjectOp>(n, ctx);
    case OpKind::kHashJoin:
      return std::make_unique<HashJoinOp>(n, ctx);
    case OpKind::kEvIndexJoin:
      return std::make_unique<EvIndexJoinOp>(n, ctx);
    case OpKind::kUnionAll:
      return std::make_unique<UnionAllOp>(n, ctx);
    case OpKind::kAllDistinct:
      return std::make_unique<AllDistinctOp>(n, ctx);
    default:
      throw Error(ErrorCode::kSchemaMismatch, std::string("not a relational operator: ") + OpKindName(n.kind));
  }
}

}  // namespace spjm::exec
