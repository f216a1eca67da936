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

// spjm: load relational data, define property graphs, run and explain
// SQL/PGQ queries under either optimizer, generate data, benchmark, verify.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "spjm/bench.h"
#include "spjm/datagen.h"
#include "spjm/error.h"
#include "spjm/graph_view.h"
#include "spjm/plan_space.h"
#include "spjm/session.h"
#include "spjm/verify.h"

namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw spjm::Error(spjm::ErrorCode::kMissingFile, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "@path" reads the query from a file.
std::string QueryText(const std::string& arg) { return !arg.empty() && arg[0] == '@' ? ReadFile(arg.substr(1)) : arg; }

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw spjm::Error(spjm::ErrorCode::kMissingFile, "cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SQL/PGQ engine with relational and graph-aware optimizers"};
  app.require_subcommand(1);
  app.fallthrough();

  spjm::SessionConfig config;
  std::string mode_name;
  app.add_option("--manifest", config.manifest, "Catalog manifest");
  app.add_flag("--graph-index,!--no-graph-index", config.graph_index, "Use the EV/VE graph index (default on)");
  app.add_option("--optimizer", config.optimizer, "agnostic or converged")->check(CLI::IsMember({"agnostic", "converged"}));
  app.add_option("--mode", mode_name, "Override matching mode: none, vertices, edges, all")
      ->check(CLI::IsMember({"none", "vertices", "edges", "all"}));
  app.add_option("--k", config.k, "GLogue pattern size")->check(CLI::IsMember({2, 3}));
  app.add_option("--seed", config.seed, "Random seed");
  app.add_option("--timeout-ms", config.timeout_ms, "Execution time budget, 0 for none");
  app.add_option("--output", config.output, "Output file or directory");

  auto* load = app.add_subcommand("load", "Load a manifest and list relations and graphs");

  auto* create = app.add_subcommand("create-graph", "Create property graphs from a DDL file");
  std::string ddl_path;
  create->add_option("ddl", ddl_path, "DDL file")->required();

  auto* query = app.add_subcommand("query", "Run a query, print CSV rows and a timing line");
  std::string query_arg;
  query->add_option("query", query_arg, "Query text or @file")->required();

  auto* explain = app.add_subcommand("explain", "Print the plan without executing");
  explain->add_option("query", query_arg, "Query text or @file")->required();

  auto* gen = app.add_subcommand("gen", "Generate a social dataset into --output");
  spjm::GenConfig gc;
  gen->add_option("--persons", gc.persons);
  gen->add_option("--messages", gc.messages);
  gen->add_option("--places", gc.places);
  gen->add_option("--knows-per-person", gc.knows_per_person);
  gen->add_option("--likes-per-person", gc.likes_per_person);
  gen->add_option("--skew", gc.skew);
  gen->add_option("--triangle-closing", gc.triangle_closing);

  auto* bench = app.add_subcommand("bench", "Time both optimizers on a query file");
  std::string bench_file;
  int repetitions = 1;
  bench->add_option("queries", bench_file, "Query file, ';' separated")->required();
  bench->add_option("--repetitions", repetitions)->check(CLI::PositiveNumber);

  auto* space = app.add_subcommand("space", "Count plan spaces for a pattern family");
  std::string family = "path";
  int from = 1;
  int to = 8;
  space->add_option("--family", family)->check(CLI::IsMember({"path", "cycle", "star", "clique"}));
  space->add_option("--from", from);
  space->add_option("--to", to);

  auto* verify = app.add_subcommand("verify", "Cross-check all pipelines against the reference evaluator");
  spjm::VerifyConfig vc;
  std::string verify_queries;
  verify->add_option("--graphs", vc.graphs, "Random graphs");
  verify->add_option("--patterns", vc.patterns_per_graph, "Random patterns per graph");
  verify->add_option("--queries", verify_queries, "Query file checked against --manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (!mode_name.empty()) config.mode = spjm::ParseMatchMode(mode_name);

  try {
    if (*gen) {
      if (config.output.empty()) throw spjm::Error(spjm::ErrorCode::kInvalidArgument, "gen needs --output DIR");
      gc.seed = config.seed;
      spjm::GenStats s = spjm::GenerateSocial(gc, config.output);
      fmt::print("persons={} messages={} places={} knows={} likes={}\n", s.persons, s.messages, s.places, s.knows,
                 s.likes);
      return 0;
    }
    if (*space) {
      auto rows = spjm::SpaceReport(family, from, to);
      if (!config.output.empty()) WriteOutput(config.output, spjm::SpaceReportCsv(rows));
      std::cout << spjm::SpaceReportText(rows);
      return 0;
    }
    if (*verify && config.manifest.empty()) {
      vc.seed = config.seed;
      spjm::VerifyReport r = spjm::VerifyRandom(vc);
      for (const auto& m : r.messages) std::cerr << m << "\n";
      std::cout << r.Summary() << "\n";
      return r.ok() ? 0 : 1;
    }

    spjm::Session session(config);
    if (*load) {
      for (const auto& name : session.catalog().RelationNames()) {
        fmt::print("relation {} rows={}\n", name, session.catalog().GetRelation(name)->size());
      }
      for (const auto& name : session.catalog().GraphNames()) {
        auto g = session.catalog().GetGraph(name);
        fmt::print("graph {} vertices={} edges={}\n", name, g->TotalVertices(), g->TotalEdges());
      }
      return 0;
    }
    if (*create) {
      for (const auto& g : session.CreateGraphs(ReadFile(ddl_path))) {
        fmt::print("graph {} vertices={} edges={}\n", g->name(), g->TotalVertices(), g->TotalEdges());
        for (auto l : g->vertex_labels()) fmt::print("  vertex {} {}\n", g->label_name(l), g->LabelSize(l));
        for (auto l : g->edge_labels()) {
          const auto& info = g->label(l);
          fmt::print("  edge {} {} -> {} {}\n", g->label_name(l), g->label_name(info.src_label),
                     g->label_name(info.tgt_label), g->LabelSize(l));
        }
      }
      return 0;
    }
    if (*query) {
      spjm::QueryRun run = session.Run(QueryText(query_arg));
      if (config.output.empty()) {
        std::cout << run.table.ToCsv();
      } else {
        WriteOutput(config.output, run.table.ToCsv());
      }
      std::cout << spjm::TimingLine(run) << "\n";
      return 0;
    }
    if (*explain) {
      WriteOutput(config.output, session.Explain(QueryText(query_arg)));
      return 0;
    }
    if (*bench) {
      auto rows = spjm::RunBench(session, spjm::ParseBenchFile(ReadFile(bench_file)), repetitions);
      if (!config.output.empty()) WriteOutput(config.output, spjm::BenchReportCsv(rows));
      std::cout << spjm::BenchReportText(rows);
      bool equal = true;
      for (const auto& r : rows) equal = equal && r.equal;
      if (!rows.empty()) fmt::print("geomean_speedup={:.3f}\n", spjm::GeometricMeanSpeedup(rows));
      if (!equal) {
        std::cerr << "error: optimizers returned different results\n";
        return 1;
      }
      return 0;
    }
    if (*verify) {
      spjm::VerifyReport r;
      if (!verify_queries.empty()) {
        std::vector<std::string> texts;
        for (const auto& q : spjm::ParseBenchFile(ReadFile(verify_queries))) texts.push_back(q.text);
        r = spjm::VerifyCorpus(session, texts);
      }
      vc.seed = config.seed;
      if (vc.graphs > 0) r.Merge(spjm::VerifyRandom(vc));
      for (const auto& m : r.messages) std::cerr << m << "\n";
      std::cout << r.Summary() << "\n";
      return r.ok() ? 0 : 1;
    }
  } catch (const spjm::ParseError& e) {
    std::cerr << e.what() << "\n";
    if (!e.expected().empty()) {
      std::string list;
      for (const auto& x : e.expected()) list += (list.empty() ? "" : ", ") + x;
      std::cerr << "  expected one of: " << list << "\n";
    }
    return 2;
  } catch (const spjm::Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == spjm::ErrorCode::kInvalidArgument ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
