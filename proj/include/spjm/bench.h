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

#ifndef SPJM_BENCH_H_
#define SPJM_BENCH_H_

#include <string>
#include <vector>

#include "spjm/session.h"

namespace spjm {

struct BenchQuery {
  std::string name;
  std::string text;
};

// Statements separated by ';'. A leading "-- name" comment names the query;
// otherwise it is named q1, q2, ... in file order.
std::vector<BenchQuery> ParseBenchFile(const std::string& text);

struct BenchTiming {
  bool timeout = false;
  double optimize_ms = 0;
  double execute_ms = 0;
  double total_ms() const { return optimize_ms + execute_ms; }
};

struct BenchRow {
  std::string name;
  size_t rows = 0;
  BenchTiming agnostic;
  BenchTiming converged;
  bool equal = true;  // checked when neither side timed out
  // agnostic total / converged total; 0 when either side timed out.
  double speedup() const;
};

// Runs both optimizers on every query, `repetitions` times each, in order.
// The session's timeout applies per execution; 0 means the 60 s default.
std::vector<BenchRow> RunBench(Session& session, const std::vector<BenchQuery>& queries, int repetitions);

std::string BenchReportText(const std::vector<BenchRow>& rows);
std::string BenchReportCsv(const std::vector<BenchRow>& rows);

// Geometric mean of speedups over rows with a valid speedup; 0 when none.
double GeometricMeanSpeedup(const std::vector<BenchRow>& rows);

}  // namespace spjm

#endif  // SPJM_BENCH_H_
