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

#ifndef SPJM_VERIFY_H_
#define SPJM_VERIFY_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "spjm/session.h"

namespace spjm {

// Outcome of running queries through every pipeline: the brute-force
// reference, agnostic with and without the graph index, converged with and
// without the index, and converged with both rewrite rules disabled.
struct VerifyReport {
  size_t cases = 0;
  size_t executions = 0;
  size_t trees = 0;          // decomposition trees checked by the validator
  size_t illegal_trees = 0;
  size_t failures = 0;
  std::vector<std::string> messages;  // one per failure

  void Merge(const VerifyReport& other);
  bool ok() const { return failures == 0 && illegal_trees == 0; }
  std::string Summary() const;
};

// Checks one bound query against all pipelines; appends to `report`.
void VerifyQuery(const BoundQuery& q, const Catalog& catalog, CardinalityEstimator& est, TableStats& stats,
                 const std::string& label, VerifyReport& report);

// Every query under its own mode and under the other of {none, vertices}.
VerifyReport VerifyCorpus(Session& session, const std::vector<std::string>& queries);

struct VerifyConfig {
  int graphs = 50;
  int patterns_per_graph = 4;
  uint64_t seed = 1;
  int max_vertices = 200;
  int max_edges = 1000;
};

// Labels A and B; edges X: A->A, Y: A->B, W: B->B. Vertex attrs (id, val),
// edge attrs (eid, src, dst, w). Registers the graph as "rg".
std::unique_ptr<Catalog> RandomGraphCatalog(uint64_t seed, int max_vertices, int max_edges);

// Connected, label-consistent pattern with n <= 4 and m <= 5 as query text.
std::string RandomPatternQuery(uint64_t seed, bool distinct_vertices);

VerifyReport VerifyRandom(const VerifyConfig& config);

}  // namespace spjm

#endif  // SPJM_VERIFY_H_
