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

#ifndef SPJM_PLAN_SPACE_H_
#define SPJM_PLAN_SPACE_H_

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "spjm/query.h"

namespace spjm {

using BigInt = boost::multiprecision::cpp_int;

// Cross-product-free binary join trees (children ordered) over the n + m
// vertex and edge relations of the pattern's relational rewrite.
// Throws SizeLimit when n + m > 18.
BigInt CountAgnostic(const PatternGraph& p);

// Graph-aware plans: extension orders in which every prefix is a connected
// sub-pattern, starting from a single vertex. Throws SizeLimit when n > 10.
BigInt CountAware(const PatternGraph& p);

// Reference counts by explicit generation, no memoization. Small patterns only.
BigInt CountAgnosticNaive(const PatternGraph& p);
BigInt CountAwareNaive(const PatternGraph& p);

// Unlabeled pattern families.
PatternGraph PathPattern(int edges);
PatternGraph CyclePattern(int vertices);
PatternGraph StarPattern(int leaves);
PatternGraph CliquePattern(int vertices);
// Throws InvalidArgument for unknown families.
PatternGraph FamilyPattern(const std::string& family, int size);

struct SpaceRow {
  std::string family;
  int size = 0;
  std::string agnostic;  // decimal count or "SizeLimit"
  std::string aware;
  std::string ratio;  // agnostic / aware, empty when either is missing
  double micros_agnostic = 0;
  double micros_aware = 0;
};

std::vector<SpaceRow> SpaceReport(const std::string& family, int from, int to);
std::string SpaceReportCsv(const std::vector<SpaceRow>& rows);
std::string SpaceReportText(const std::vector<SpaceRow>& rows);

}  // namespace spjm

#endif  // SPJM_PLAN_SPACE_H_
