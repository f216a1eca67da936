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

#ifndef SPJM_EXECUTOR_H_
#define SPJM_EXECUTOR_H_

#include <cstdint>
#include <string>
#include <vector>

#include "spjm/graph_view.h"
#include "spjm/oracle.h"
#include "spjm/plan.h"
#include "spjm/storage.h"

namespace spjm {

// Rows per batch, engine-wide.
constexpr size_t kBatchCapacity = 1024;

// Int64 slots hold the bit pattern, String slots a pointer into an immutable
// relation (or label table), Element slots a packed ElementId.
enum class SlotType { kInt, kString, kElement };

struct SlotColumn {
  std::string name;
  SlotType type = SlotType::kInt;
  LabelId label = kNoLabel;  // static label of Element columns
};

class ResultTable {
 public:
  ResultTable(std::vector<SlotColumn> columns, std::vector<uint64_t> data, GraphPtr graph,
              std::vector<RelationPtr> keepalive);

  const std::vector<SlotColumn>& columns() const { return columns_; }
  size_t rows() const { return columns_.empty() ? rows_ : data_.size() / columns_.size(); }
  uint64_t at(size_t row, size_t col) const { return data_[row * columns_.size() + col]; }

  std::string Render(size_t row, size_t col) const;
  StringTable ToStrings() const;

 private:
  std::vector<SlotColumn> columns_;
  std::vector<uint64_t> data_;
  size_t rows_ = 0;
  GraphPtr graph_;
  std::vector<RelationPtr> keepalive_;

  friend ResultTable Execute(const PlanNode&, const Catalog&, const struct ExecOptions&);
};

struct ExecOptions {
  // Wall-clock budget; 0 disables. Exceeding it throws Timeout.
  int64_t timeout_ms = 0;
  // Graph for plans whose root is a graph operator.
  std::string graph;
};

// Plans are checked against the catalog before any row is produced.
ResultTable Execute(const PlanNode& plan, const Catalog& catalog, const ExecOptions& options = {});

}  // namespace spjm

#endif  // SPJM_EXECUTOR_H_
