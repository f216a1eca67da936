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

#ifndef SPJM_SRC_EXEC_INTERNAL_H_
#define SPJM_SRC_EXEC_INTERNAL_H_

#include <bit>
#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include "spjm/error.h"
#include "spjm/executor.h"

namespace spjm::exec {

struct Batch {
  size_t width = 0;
  size_t size = 0;
  std::vector<uint64_t> data;

  void Reset(size_t w) {
    width = w;
    size = 0;
    data.clear();
    data.reserve(w * kBatchCapacity);
  }
  bool Full() const { return size >= kBatchCapacity; }
  uint64_t* Append() {
    data.resize(data.size() + width);
    ++size;
    return data.data() + (size - 1) * width;
  }
  const uint64_t* Row(size_t i) const { return data.data() + i * width; }
};

inline uint64_t IntSlot(int64_t v) { return std::bit_cast<uint64_t>(v); }
inline int64_t SlotInt(uint64_t s) { return std::bit_cast<int64_t>(s); }
inline uint64_t StrSlot(const std::string* p) { return reinterpret_cast<uint64_t>(p); }
inline const std::string& SlotStr(uint64_t s) { return *reinterpret_cast<const std::string*>(s); }

struct ExecContext {
  const Catalog& catalog;
  GraphPtr graph;
  std::chrono::steady_clock::time_point deadline;
  bool has_deadline = false;
  std::vector<RelationPtr> keepalive;

  void Check() const {
    if (has_deadline && std::chrono::steady_clock::now() > deadline) {
      throw Error(ErrorCode::kTimeout, "execution exceeded the time budget");
    }
  }
  const GraphView& Graph() const {
    if (!graph) throw Error(ErrorCode::kSchemaMismatch, "graph operator without a graph");
    return *graph;
  }
};

class Operator {
 public:
  virtual ~Operator() = default;
  // Fills `out` with up to kBatchCapacity rows; false once exhausted.
  virtual bool Next(Batch& out) = 0;
  const std::vector<SlotColumn>& schema() const { return schema_; }
  size_t width() const { return schema_.size(); }

 protected:
  std::vector<SlotColumn> schema_;
};

using OpPtr = std::unique_ptr<Operator>;

// Resolves names and builds the operator tree; throws SchemaMismatch.
OpPtr Build(const PlanNode& node, ExecContext& ctx);
OpPtr BuildRelational(const PlanNode& node, ExecContext& ctx);
OpPtr BuildGraph(const PlanNode& node, ExecContext& ctx);

int ColumnIndex(const std::vector<SlotColumn>& schema, const std::string& name);

// Hash / equality over a subset of slots; string slots compare by content.
struct KeySpec {
  std::vector<int> cols;
  std::vector<bool> is_string;

  uint64_t Hash(const uint64_t* row) const;
  bool Equal(const uint64_t* a, const KeySpec& b_spec, const uint64_t* b) const;
};

// Chained hash table over materialized rows.
class RowHashTable {
 public:
  void Build(Operator& input, const KeySpec& key, ExecContext& ctx);
  size_t width() const { return width_; }
  const uint64_t* Row(uint32_t i) const { return rows_.data() + static_cast<size_t>(i) * width_; }
  // First candidate row for `hash`, then Chain(i) until kEnd; callers re-check key equality.
  uint32_t Head(uint64_t hash) const;
  uint32_t Chain(uint32_t i) const { return next_[i]; }
  uint64_t RowHash(uint32_t i) const { return hashes_[i]; }
  static constexpr uint32_t kEnd = 0xffffffffu;

 private:
  size_t width_ = 0;
  std::vector<uint64_t> rows_;
  std::vector<uint64_t> hashes_;
  std::vector<uint32_t> next_;
  std::vector<uint32_t> buckets_;
  uint64_t mask_ = 0;
};

}  // namespace spjm::exec

#endif  // SPJM_SRC_EXEC_INTERNAL_H_
