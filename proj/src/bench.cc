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

#include "spjm/bench.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "spjm/error.h"

namespace spjm {

namespace {

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

constexpr int64_t kDefaultTimeoutMs = 60000;

}  // namespace

std::vector<BenchQuery> ParseBenchFile(const std::string& text) {
  std::vector<BenchQuery> out;
  std::string name;
  std::string body;
  auto flush = [&] {
    std::string t = Trim(body);
    if (!t.empty()) out.push_back({name.empty() ? fmt::format("q{}", out.size() + 1) : name, t});
    name.clear();
    body.clear();
  };
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::string t = Trim(line);
    if (t.rfind("--", 0) == 0) {
      if (name.empty() && Trim(body).empty()) name = Trim(t.substr(2));
      continue;
    }
    for (char c : line) {
      if (c == ';') {
        flush();
      } else {
        body += c;
      }
    }
    body += '\n';
  }
  flush();
  return out;
}

double BenchRow::speedup() const {
  if (agnostic.timeout || converged.timeout || converged.total_ms() <= 0) return 0;
  return agnostic.total_ms() / converged.total_ms();
}

std::vector<BenchRow> RunBench(Session& session, const std::vector<BenchQuery>& queries, int repetitions) {
  if (repetitions < 1) throw Error(ErrorCode::kInvalidArgument, "repetitions must be at least 1");
  int64_t saved = session.config().timeout_ms;
  if (saved == 0) session.config().timeout_ms = kDefaultTimeoutMs;
  std::vector<BenchRow> out;
  try {
    for (const auto& bq : queries) {
      BoundQuery q = session.Bind(bq.text);
      BenchRow row;
      row.name = bq.name;
      StringTable results[2];
      bool have[2] = {false, false};
      const char* names[2] = {"agnostic", "converged"};
      BenchTiming* timings[2] = {&row.agnostic, &row.converged};
      for (int side = 0; side < 2; ++side) {
        BenchTiming& t = *timings[side];
        for (int r = 0; r < repetitions && !t.timeout; ++r) {
          try {
            QueryRun run = session.Run(q, names[side]);
            t.optimize_ms += run.optimize_us / 1000.0;
            t.execute_ms += run.execute_us / 1000.0;
            if (!have[side]) {
              results[side] = std::move(run.table);
              have[side] = true;
            }
          } catch (const Error& e) {
            if (e.code() != ErrorCode::kTimeout) throw;
            t.timeout = true;
          }
        }
        if (!t.timeout) {
          t.optimize_ms /= repetitions;
          t.execute_ms /= repetitions;
        }
      }
      if (have[0] && have[1]) {
        row.equal = results[0].SameMultiset(results[1]);
        row.rows = results[1].rows.size();
      } else if (have[0] || have[1]) {
        row.rows = results[have[0] ? 0 : 1].rows.size();
      }
      out.push_back(std::move(row));
    }
  } catch (...) {
    session.config().timeout_ms = saved;
    throw;
  }
  session.config().timeout_ms = saved;
  return out;
}

namespace {

std::string Ms(const BenchTiming& t, double v) { return t.timeout ? "OT" : fmt::format("{:.3f}", v); }

}  // namespace

std::string BenchReportText(const std::vector<BenchRow>& rows) {
  std::vector<std::vector<std::string>> cells = {{"query", "rows", "agn_opt_ms", "agn_exec_ms", "agn_total_ms",
                                                  "conv_opt_ms", "conv_exec_ms", "conv_total_ms", "speedup", "equal"}};
  for (const auto& r : rows) {
    double s = r.speedup();
    cells.push_back({r.name, std::to_string(r.rows), Ms(r.agnostic, r.agnostic.optimize_ms),
                     Ms(r.agnostic, r.agnostic.execute_ms), Ms(r.agnostic, r.agnostic.total_ms()),
                     Ms(r.converged, r.converged.optimize_ms), Ms(r.converged, r.converged.execute_ms),
                     Ms(r.converged, r.converged.total_ms()), s > 0 ? fmt::format("{:.2f}x", s) : "-",
                     r.equal ? "yes" : "NO"});
  }
  std::vector<size_t> width(cells[0].size(), 0);
  for (const auto& row : cells) {
    for (size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (const auto& row : cells) {
    std::string line;
    for (size_t i = 0; i < row.size(); ++i) line += fmt::format("{:<{}}  ", row[i], width[i]);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string BenchReportCsv(const std::vector<BenchRow>& rows) {
  std::string out =
      "query,rows,agnostic_optimize_ms,agnostic_execute_ms,agnostic_total_ms,converged_optimize_ms,"
      "converged_execute_ms,converged_total_ms,speedup,equal\n";
  for (const auto& r : rows) {
    double s = r.speedup();
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.name, r.rows, Ms(r.agnostic, r.agnostic.optimize_ms),
                       Ms(r.agnostic, r.agnostic.execute_ms), Ms(r.agnostic, r.agnostic.total_ms()),
                       Ms(r.converged, r.converged.optimize_ms), Ms(r.converged, r.converged.execute_ms),
                       Ms(r.converged, r.converged.total_ms()), s > 0 ? fmt::format("{:.4f}", s) : "",
                       r.equal ? "yes" : "no");
  }
  return out;
}

double GeometricMeanSpeedup(const std::vector<BenchRow>& rows) {
  double log_sum = 0;
  int count = 0;
  for (const auto& r : rows) {
    double s = r.speedup();
    if (s <= 0) continue;
    log_sum += std::log(s);
    ++count;
  }
  return count == 0 ? 0 : std::exp(log_sum / count);
}

}  // namespace spjm
