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

#include "spjm/executor.h"

#include <bit>
#include <string_view>

#include "exec_internal.h"

namespace spjm {

namespace exec {

namespace {

uint64_t Mix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

int ColumnIndex(const std::vector<SlotColumn>& schema, const std::string& name) {
  for (size_t i = 0; i < schema.size(); ++i) {
    if (schema[i].name == name) return static_cast<int>(i);
  }
  throw Error(ErrorCode::kSchemaMismatch, "no column named " + name);
}

uint64_t KeySpec::Hash(const uint64_t* row) const {
  uint64_t h = 0;
  for (size_t i = 0; i < cols.size(); ++i) {
    uint64_t v = row[cols[i]];
    if (is_string[i]) v = std::hash<std::string_view>()(SlotStr(v));
    h = Mix(h ^ v);
  }
  return h;
}

bool KeySpec::Equal(const uint64_t* a, const KeySpec& b_spec, const uint64_t* b) const {
  for (size_t i = 0; i < cols.size(); ++i) {
    uint64_t x = a[cols[i]];
    uint64_t y = b[b_spec.cols[i]];
    if (is_string[i]) {
      if (x != y && SlotStr(x) != SlotStr(y)) return false;
    } else if (x != y) {
      return false;
    }
  }
  return true;
}

void RowHashTable::Build(Operator& input, const KeySpec& key, ExecContext& ctx) {
  width_ = input.width();
  Batch b;
  while (input.Next(b)) {
    ctx.Check();
    rows_.insert(rows_.end(), b.data.begin(), b.data.end());
    for (size_t r = 0; r < b.size; ++r) hashes_.push_back(key.Hash(b.Row(r)));
  }
  size_t n = hashes_.size();
  size_t cap = std::bit_ceil(std::max<size_t>(16, 2 * n));
  mask_ = cap - 1;
  buckets_.assign(cap, kEnd);
  next_.assign(n, kEnd);
  // Insert in reverse so chains list rows in input order.
  for (size_t i = n; i-- > 0;) {
    uint64_t slot = hashes_[i] & mask_;
    next_[i] = buckets_[slot];
    buckets_[slot] = static_cast<uint32_t>(i);
  }
}

uint32_t RowHashTable::Head(uint64_t hash) const { return buckets_[hash & mask_]; }

OpPtr Build(const PlanNode& node, ExecContext& ctx) {
  if (IsGraphOp(node.kind) || node.kind == OpKind::kScanGraphTable) return BuildGraph(node, ctx);
  return BuildRelational(node, ctx);
}

}  // namespace exec

ResultTable::ResultTable(std::vector<SlotColumn> columns, std::vector<uint64_t> data, GraphPtr graph,
                         std::vector<RelationPtr> keepalive)
    : columns_(std::move(columns)), data_(std::move(data)), graph_(std::move(graph)), keepalive_(std::move(keepalive)) {}

std::string ResultTable::Render(size_t row, size_t col) const {
  uint64_t v = at(row, col);
  switch (columns_[col].type) {
    case SlotType::kInt:
      return std::to_string(exec::SlotInt(v));
    case SlotType::kString:
      return exec::SlotStr(v);
    case SlotType::kElement:
      return graph_->ElementString(ElementId::Unpack(v));
  }
  return "";
}

StringTable ResultTable::ToStrings() const {
  StringTable t;
  for (const auto& c : columns_) t.columns.push_back(c.name);
  size_t n = rows();
  t.rows.reserve(n);
  for (size_t r = 0; r < n; ++r) {
    std::vector<std::string> row;
    row.reserve(columns_.size());
    for (size_t c = 0; c < columns_.size(); ++c) row.push_back(Render(r, c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

namespace {

// Graph used by relational nodes that reference elements (agnostic plans).
void FindGraph(const PlanNode& n, std::string& name) {
  if (name.empty() && !n.graph.empty()) name = n.graph;
  for (const auto& c : n.children) FindGraph(*c, name);
}

}  // namespace

ResultTable Execute(const PlanNode& plan, const Catalog& catalog, const ExecOptions& options) {
  exec::ExecContext ctx{catalog, nullptr, {}, false, {}};
  std::string graph = options.graph;
  FindGraph(plan, graph);
  if (!graph.empty()) ctx.graph = catalog.GetGraph(graph);
  if (options.timeout_ms > 0) {
    ctx.has_deadline = true;
    ctx.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(options.timeout_ms);
  }
  exec::OpPtr root = exec::Build(plan, ctx);
  std::vector<uint64_t> data;
  exec::Batch b;
  size_t rows = 0;
  while (root->Next(b)) {
    data.insert(data.end(), b.data.begin(), b.data.end());
    rows += b.size;
  }
  ResultTable out(root->schema(), std::move(data), ctx.graph, std::move(ctx.keepalive));
  out.rows_ = rows;
  return out;
}

}  // namespace spjm
