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

#ifndef SPJM_GLOGUE_H_
#define SPJM_GLOGUE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spjm/graph_view.h"
#include "spjm/query.h"

namespace spjm {

// Canonical encoding of a labeled pattern; variable names and constraints are ignored.
// Isomorphic patterns get equal keys.
using PatternKey = std::string;

PatternKey CanonicalKey(const PatternGraph& p);

// Catalog of exact match counts for all connected patterns with at most k
// vertices over the graph's labels, plus extension ratios between them.
class GLogue {
 public:
  static GLogue Build(const GraphView& g, int k);

  int k() const { return k_; }
  size_t size() const { return counts_.size(); }
  const std::map<PatternKey, uint64_t>& counts() const { return counts_; }
  const std::map<std::pair<PatternKey, PatternKey>, double>& extensions() const { return extensions_; }

  std::optional<uint64_t> Count(const PatternKey& key) const;

  // |M(parent)| / |M(left)| where parent extends left by one vertex.
  std::optional<double> ExtensionFactor(const PatternKey& parent, const PatternKey& left) const;

  // True when `p` belongs to the enumerated space: at most k vertices, only
  // directed edges, no two edges with the same (src, tgt, label).
  bool InScope(const PatternGraph& p) const;

  std::string ToJson() const;
  static GLogue FromJson(const std::string& text);

  double build_seconds() const { return build_seconds_; }

 private:
  int k_ = 0;
  std::map<PatternKey, uint64_t> counts_;
  std::map<std::pair<PatternKey, PatternKey>, double> extensions_;
  double build_seconds_ = 0;
};

// Estimated |M(p)| honoring p's constraints through exact per-element selectivities.
class CardinalityEstimator {
 public:
  CardinalityEstimator(const GraphView& g, const GLogue& glogue) : g_(g), glogue_(glogue) {}

  // Unconstrained estimate; constraints on p are ignored.
  double EstimateBase(const PatternGraph& p);
  // EstimateBase times the product of element selectivities.
  double Estimate(const PatternGraph& p);
  // Fraction of the element's relation satisfying its constraints.
  double Selectivity(LabelId label, const std::vector<ElementPredicate>& constraints);

 private:
  double EstimateDirected(const PatternGraph& p);
  double ExtensionFactor(const PatternGraph& p, int u);

  const GraphView& g_;
  const GLogue& glogue_;
  std::map<PatternKey, double> memo_;
  std::map<std::pair<LabelId, std::string>, double> selectivity_memo_;
};

}  // namespace spjm

#endif  // SPJM_GLOGUE_H_
