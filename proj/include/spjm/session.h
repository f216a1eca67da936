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

#ifndef SPJM_SESSION_H_
#define SPJM_SESSION_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spjm/agnostic.h"
#include "spjm/converged.h"
#include "spjm/glogue.h"
#include "spjm/oracle.h"
#include "spjm/plan.h"
#include "spjm/query.h"
#include "spjm/storage.h"

namespace spjm {

struct SessionConfig {
  std::string manifest;
  bool graph_index = true;
  std::string optimizer = "converged";  // or "agnostic"
  std::optional<MatchMode> mode;        // overrides the query's DISTINCT clause
  int k = 3;
  std::string output;
  uint64_t seed = 42;
  int64_t timeout_ms = 0;
};

// Throws InvalidArgument on an unknown optimizer or k outside {2, 3}.
void CheckConfig(const SessionConfig& config);

std::optional<MatchMode> ParseMatchMode(const std::string& name);

struct QueryRun {
  PlanPtr plan;
  StringTable table;
  double optimize_us = 0;
  double execute_us = 0;
};

// optimize_us=... execute_us=... rows=...
std::string TimingLine(const QueryRun& run);

class Session {
 public:
  explicit Session(SessionConfig config = {});

  // Manifest lines, paths relative to the manifest:
  //   relation NAME PATH attr:type,... [pk=attr]
  //   graph PATH-TO-DDL
  // Blank lines and lines starting with '#' are skipped.
  void LoadManifest(const std::string& path);
  // Runs every CREATE PROPERTY GRAPH statement in `ddl`. Returns the graphs created.
  std::vector<GraphPtr> CreateGraphs(const std::string& ddl);

  Catalog& catalog() { return catalog_; }
  const Catalog& catalog() const { return catalog_; }
  SessionConfig& config() { return config_; }
  const SessionConfig& config() const { return config_; }
  TableStats& stats() { return stats_; }

  // Built on first use per (graph, k).
  const GLogue& Glogue(const std::string& graph);
  CardinalityEstimator& Estimator(const std::string& graph);

  // Parse and validate, then apply the configured mode override.
  BoundQuery Bind(const std::string& text) const;

  PlanPtr Optimize(const BoundQuery& q, const std::string& optimizer, ConvergedPlan* details = nullptr);
  QueryRun Run(const BoundQuery& q, const std::string& optimizer);
  QueryRun Run(const std::string& text) { return Run(Bind(text), config_.optimizer); }

  // Plan text followed by plan JSON; byte-stable for fixed inputs.
  std::string Explain(const std::string& text);

 private:
  SessionConfig config_;
  Catalog catalog_;
  TableStats stats_;
  std::map<std::pair<std::string, int>, std::unique_ptr<GLogue>> glogues_;
  std::map<std::pair<std::string, int>, std::unique_ptr<CardinalityEstimator>> estimators_;
};

}  // namespace spjm

#endif  // SPJM_SESSION_H_
