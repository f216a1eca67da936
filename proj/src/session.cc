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

#include "spjm/session.h"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "spjm/error.h"
#include "spjm/executor.h"
#include "spjm/graph_view.h"
#include "spjm/parser.h"

namespace spjm {

void CheckConfig(const SessionConfig& c) {
  if (c.optimizer != "agnostic" && c.optimizer != "converged") {
    throw Error(ErrorCode::kInvalidArgument, "optimizer must be 'agnostic' or 'converged', got '" + c.optimizer + "'");
  }
  if (c.k != 2 && c.k != 3) throw Error(ErrorCode::kInvalidArgument, "k must be 2 or 3");
  if (c.timeout_ms < 0) throw Error(ErrorCode::kInvalidArgument, "timeout must be non-negative");
}

std::optional<MatchMode> ParseMatchMode(const std::string& name) {
  if (name == "none" || name == "homomorphism") return MatchMode::kNone;
  if (name == "vertices" || name == "distinct-vertices") return MatchMode::kVertices;
  if (name == "edges" || name == "distinct-edges") return MatchMode::kEdges;
  if (name == "all" || name == "distinct-all") return MatchMode::kAll;
  return std::nullopt;
}

std::string TimingLine(const QueryRun& run) {
  return fmt::format("optimize_us={:.0f} execute_us={:.0f} rows={}", run.optimize_us, run.execute_us,
                     run.table.rows.size());
}

Session::Session(SessionConfig config) : config_(std::move(config)) {
  CheckConfig(config_);
  if (!config_.manifest.empty()) LoadManifest(config_.manifest);
}

namespace {

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Schema ParseSchemaSpec(const std::string& name, const std::string& attrs, const std::string& pk, int line) {
  std::vector<Attribute> out;
  for (const auto& item : Split(attrs, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("manifest line {}: expected attr:type, got '{}'", line, item));
    }
    auto type = ParseAttrType(item.substr(colon + 1));
    if (!type) {
      throw Error(ErrorCode::kTypeError, fmt::format("manifest line {}: unknown type '{}'", line, item.substr(colon + 1)));
    }
    out.push_back({item.substr(0, colon), *type});
  }
  std::optional<std::string> key;
  if (!pk.empty()) key = pk;
  return Schema(name, std::move(out), key);
}

}  // namespace

void Session::LoadManifest(const std::string& path) {
  std::filesystem::path base = std::filesystem::path(path).parent_path();
  std::istringstream in(ReadFile(path));
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    std::istringstream words(text);
    std::vector<std::string> w;
    for (std::string s; words >> s;) w.push_back(s);
    if (w.empty() || w[0][0] == '#') continue;
    if (w[0] == "relation") {
      if (w.size() < 4 || w.size() > 5) {
        throw Error(ErrorCode::kInvalidArgument,
                    fmt::format("manifest line {}: expected 'relation NAME PATH attrs [pk=attr]'", line));
      }
      std::string pk;
      if (w.size() == 5) {
        if (w[4].rfind("pk=", 0) != 0) {
          throw Error(ErrorCode::kInvalidArgument, fmt::format("manifest line {}: expected pk=attr", line));
        }
        pk = w[4].substr(3);
      }
      Schema schema = ParseSchemaSpec(w[1], w[3], pk, line);
      catalog_.LoadCsv(w[1], (base / w[2]).string(), schema);
    } else if (w[0] == "graph") {
      if (w.size() != 2) throw Error(ErrorCode::kInvalidArgument, fmt::format("manifest line {}: expected 'graph PATH'", line));
      CreateGraphs(ReadFile(base / w[1]));
    } else {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("manifest line {}: unknown directive '{}'", line, w[0]));
    }
  }
}

std::vector<GraphPtr> Session::CreateGraphs(const std::string& ddl) {
  std::vector<GraphPtr> out;
  for (const auto& stmt : ParseScript(ddl)) {
    const auto* create = std::get_if<ast::CreateGraphStmt>(&stmt);
    if (create == nullptr) throw Error(ErrorCode::kInvalidArgument, "expected CREATE PROPERTY GRAPH");
    if (catalog_.HasGraph(create->name)) throw Error(ErrorCode::kDuplicateName, "graph " + create->name + " already exists");
    GraphPtr g = CreateGraph(catalog_, ast::ToMapping(*create));
    catalog_.AddGraph(g);
    out.push_back(g);
  }
  return out;
}

const GLogue& Session::Glogue(const std::string& graph) {
  auto key = std::make_pair(graph, config_.k);
  auto it = glogues_.find(key);
  if (it == glogues_.end()) {
    GraphPtr g = catalog_.GetGraph(graph);
    it = glogues_.emplace(key, std::make_unique<GLogue>(GLogue::Build(*g, config_.k))).first;
  }
  return *it->second;
}

CardinalityEstimator& Session::Estimator(const std::string& graph) {
  auto key = std::make_pair(graph, config_.k);
  auto it = estimators_.find(key);
  if (it == estimators_.end()) {
    const GLogue& gl = Glogue(graph);
    it = estimators_.emplace(key, std::make_unique<CardinalityEstimator>(*catalog_.GetGraph(graph), gl)).first;
  }
  return *it->second;
}

BoundQuery Session::Bind(const std::string& text) const {
  BoundQuery q = ParseQuery(text, catalog_);
  if (config_.mode) q.graph.mode = *config_.mode;
  return q;
}

PlanPtr Session::Optimize(const BoundQuery& q, const std::string& optimizer, ConvergedPlan* details) {
  if (optimizer == "agnostic") {
    AgnosticOptions opts;
    opts.graph_index = config_.graph_index;
    opts.stats = &stats_;
    return PlanAgnostic(q, opts);
  }
  if (optimizer != "converged") throw Error(ErrorCode::kInvalidArgument, "unknown optimizer " + optimizer);
  ConvergedOptions opts;
  opts.graph_index = config_.graph_index;
  opts.stats = &stats_;
  ConvergedPlan cp = OptimizeConverged(q, Estimator(q.graph.graph->name()), opts);
  PlanPtr plan = cp.plan;
  if (details != nullptr) *details = std::move(cp);
  return plan;
}

QueryRun Session::Run(const BoundQuery& q, const std::string& optimizer) {
  using Clock = std::chrono::steady_clock;
  // Statistics are built outside the timed region.
  if (optimizer == "converged") Estimator(q.graph.graph->name());
  QueryRun run;
  auto t0 = Clock::now();
  run.plan = Optimize(q, optimizer);
  auto t1 = Clock::now();
  ExecOptions eo;
  eo.timeout_ms = config_.timeout_ms;
  eo.graph = q.graph.graph->name();
  ResultTable result = Execute(*run.plan, catalog_, eo);
  auto t2 = Clock::now();
  run.table = result.ToStrings();
  run.optimize_us = std::chrono::duration<double, std::micro>(t1 - t0).count();
  run.execute_us = std::chrono::duration<double, std::micro>(t2 - t1).count();
  return run;
}

std::string Session::Explain(const std::string& text) {
  BoundQuery q = Bind(text);
  ConvergedPlan details;
  PlanPtr plan = Optimize(q, config_.optimizer, &details);
  std::string out = fmt::format("optimizer: {}  graph_index: {}  mode: {}\n", config_.optimizer,
                                config_.graph_index ? "on" : "off", MatchModeName(q.graph.mode));
  if (config_.optimizer == "converged") {
    for (size_t i = 0; i < details.trees.size(); ++i) {
      out += details.trees.size() > 1 ? fmt::format("decomposition (variant {}):\n", i) : "decomposition:\n";
      out += DecompositionText(details.trees[i]);
    }
    if (details.fused > 0) out += fmt::format("fused: {}\n", details.fused);
  }
  out += "plan:\n";
  out += ExplainText(*plan);
  out += "json:\n";
  out += PlanToJson(*plan);
  if (out.back() != '\n') out += '\n';
  return out;
}

}  // namespace spjm
