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

#include "spjm/verify.h"

#include <algorithm>
#include <random>
#include <utility>

#include <fmt/format.h>

#include "spjm/datagen.h"
#include "spjm/error.h"
#include "spjm/executor.h"
#include "spjm/graph_view.h"
#include "spjm/parser.h"

namespace spjm {

void VerifyReport::Merge(const VerifyReport& o) {
  cases += o.cases;
  executions += o.executions;
  trees += o.trees;
  illegal_trees += o.illegal_trees;
  failures += o.failures;
  messages.insert(messages.end(), o.messages.begin(), o.messages.end());
}

std::string VerifyReport::Summary() const {
  return fmt::format("cases={} executions={} trees={} illegal_trees={} failures={}", cases, executions, trees,
                     illegal_trees, failures);
}

namespace {

struct Pipeline {
  const char* name;
  bool converged;
  bool index;
  bool rules;
};

constexpr Pipeline kPipelines[] = {
    {"agnostic", false, false, true},          {"agnostic+index", false, true, true},
    {"converged", true, true, true},           {"converged-noindex", true, false, true},
    {"converged-norules", true, true, false},
};

}  // namespace

void VerifyQuery(const BoundQuery& q, const Catalog& catalog, CardinalityEstimator& est, TableStats& stats,
                 const std::string& label, VerifyReport& report) {
  ++report.cases;
  StringTable expected = EvaluateReference(q);
  ExecOptions eo;
  eo.graph = q.graph.graph->name();
  for (const auto& p : kPipelines) {
    try {
      PlanPtr plan;
      if (p.converged) {
        ConvergedOptions opts;
        opts.graph_index = p.index;
        opts.filter_into_match = p.rules;
        opts.trim_and_fuse = p.rules;
        opts.stats = &stats;
        ConvergedPlan cp = OptimizeConverged(q, est, opts);
        for (const auto& t : cp.trees) {
          ++report.trees;
          std::string why = ValidateDecomposition(t);
          if (!why.empty()) {
            ++report.illegal_trees;
            report.messages.push_back(fmt::format("{} [{}]: illegal decomposition: {}", label, p.name, why));
          }
        }
        plan = cp.plan;
      } else {
        AgnosticOptions opts;
        opts.graph_index = p.index;
        opts.stats = &stats;
        plan = PlanAgnostic(q, opts);
      }
      StringTable got = Execute(*plan, catalog, eo).ToStrings();
      ++report.executions;
      if (!got.SameMultiset(expected)) {
        ++report.failures;
        report.messages.push_back(fmt::format("{} [{}]: {} rows, reference {} rows", label, p.name, got.rows.size(),
                                              expected.rows.size()));
      }
    } catch (const Error& e) {
      ++report.failures;
      report.messages.push_back(fmt::format("{} [{}]: {}", label, p.name, e.what()));
    }
  }
}

VerifyReport VerifyCorpus(Session& session, const std::vector<std::string>& queries) {
  VerifyReport report;
  for (size_t i = 0; i < queries.size(); ++i) {
    BoundQuery q = ParseQuery(queries[i], session.catalog());
    MatchMode own = q.graph.mode;
    CardinalityEstimator& est = session.Estimator(q.graph.graph->name());
    VerifyQuery(q, session.catalog(), est, session.stats(), fmt::format("query {}", i + 1), report);
    q.graph.mode = own == MatchMode::kNone ? MatchMode::kVertices : MatchMode::kNone;
    VerifyQuery(q, session.catalog(), est, session.stats(), fmt::format("query {} ({})", i + 1, MatchModeName(q.graph.mode)),
                report);
  }
  return report;
}

namespace {

const char* kRandomDdl =
    "CREATE PROPERTY GRAPH rg VERTEX TABLES (A, B) EDGE TABLES ("
    " X SOURCE KEY (src) REFERENCES A (id) DESTINATION KEY (dst) REFERENCES A (id),"
    " Y SOURCE KEY (src) REFERENCES A (id) DESTINATION KEY (dst) REFERENCES B (id),"
    " W SOURCE KEY (src) REFERENCES B (id) DESTINATION KEY (dst) REFERENCES B (id))";

RelationPtr VertexRelation(const std::string& name, size_t n, int64_t id_base, std::mt19937_64& rng) {
  std::vector<int64_t> id(n);
  std::vector<int64_t> val(n);
  for (size_t i = 0; i < n; ++i) {
    id[i] = id_base + static_cast<int64_t>(i);
    val[i] = static_cast<int64_t>(UniformBelow(rng, 5));
  }
  Schema s(name, {{"id", AttrType::kInt64}, {"val", AttrType::kInt64}}, std::string("id"));
  return std::make_shared<Relation>(s, std::vector<Relation::Column>{std::move(id), std::move(val)}, n);
}

RelationPtr EdgeRelation(const std::string& name, size_t m, int64_t src_base, size_t src_n, int64_t dst_base,
                         size_t dst_n, std::mt19937_64& rng) {
  std::vector<int64_t> eid(m);
  std::vector<int64_t> src(m);
  std::vector<int64_t> dst(m);
  std::vector<int64_t> w(m);
  for (size_t i = 0; i < m; ++i) {
    eid[i] = static_cast<int64_t>(i + 1);
    src[i] = src_base + static_cast<int64_t>(UniformBelow(rng, src_n));
    dst[i] = dst_base + static_cast<int64_t>(UniformBelow(rng, dst_n));
    w[i] = static_cast<int64_t>(UniformBelow(rng, 4));
  }
  Schema s(name,
           {{"eid", AttrType::kInt64}, {"src", AttrType::kInt64}, {"dst", AttrType::kInt64}, {"w", AttrType::kInt64}},
           std::string("eid"));
  return std::make_shared<Relation>(
      s, std::vector<Relation::Column>{std::move(eid), std::move(src), std::move(dst), std::move(w)}, m);
}

}  // namespace

std::unique_ptr<Catalog> RandomGraphCatalog(uint64_t seed, int max_vertices, int max_edges) {
  std::mt19937_64 rng(seed);
  size_t total = 2 + UniformBelow(rng, static_cast<uint64_t>(std::max(max_vertices - 1, 1)));
  size_t na = 1 + UniformBelow(rng, total - 1);
  size_t nb = total - na;
  size_t edges = UniformBelow(rng, static_cast<uint64_t>(max_edges) + 1);
  // Split the edge budget across the three labels.
  size_t mx = UniformBelow(rng, edges + 1);
  size_t my = UniformBelow(rng, edges - mx + 1);
  size_t mw = edges - mx - my;
  // Average degree stays small so four-vertex patterns have bounded output.
  mx = std::min(mx, 4 * na);
  my = std::min(my, 4 * std::max(na, nb));
  mw = std::min(mw, 4 * nb);
  auto cat = std::make_unique<Catalog>();
  cat->AddRelation(VertexRelation("A", na, 1, rng));
  cat->AddRelation(VertexRelation("B", nb, 1001, rng));
  cat->AddRelation(EdgeRelation("X", mx, 1, na, 1, na, rng));
  cat->AddRelation(EdgeRelation("Y", my, 1, na, 1001, nb, rng));
  cat->AddRelation(EdgeRelation("W", mw, 1001, nb, 1001, nb, rng));
  for (const auto& stmt : ParseScript(kRandomDdl)) {
    cat->AddGraph(CreateGraph(*cat, ast::ToMapping(std::get<ast::CreateGraphStmt>(stmt))));
  }
  return cat;
}

std::string RandomPatternQuery(uint64_t seed, bool distinct_vertices) {
  std::mt19937_64 rng(seed);
  auto pick = [&](uint64_t n) { return static_cast<int>(UniformBelow(rng, n)); };
  auto chance = [&](double p) { return UniformUnit(rng) < p; };
  const char* names[] = {"a", "b", "c", "d"};
  int n = 1 + pick(4);
  std::vector<char> label(n);
  for (auto& l : label) l = chance(0.6) ? 'A' : 'B';
  std::vector<std::pair<int, int>> pairs;
  for (int v = 1; v < n; ++v) pairs.emplace_back(pick(v), v);
  int extra = n >= 2 ? pick(static_cast<uint64_t>(6 - n + 1)) : 0;
  for (int i = 0; i < extra && static_cast<int>(pairs.size()) < 5; ++i) {
    int u = pick(n);
    int v = pick(n);
    if (u != v) pairs.emplace_back(u, v);
  }
  std::vector<bool> declared(n, false);
  auto node = [&](int v) {
    std::string s = "(" + std::string(names[v]);
    if (!declared[v]) {
      s += ":" + std::string(1, label[v]);
      if (chance(0.1)) s += fmt::format(" {{val: {}}}", pick(5));
      declared[v] = true;
    }
    return s + ")";
  };
  std::vector<std::string> paths;
  for (size_t i = 0; i < pairs.size(); ++i) {
    auto [u, v] = pairs[i];
    char lu = label[u];
    char lv = label[v];
    std::string edge_label = lu == lv ? (lu == 'A' ? "X" : "W") : "Y";
    std::string body = fmt::format("e{}:{}", i, edge_label);
    if (chance(0.1)) body += fmt::format(" {{w: {}}}", pick(4));
    std::string left = node(u);
    std::string right = node(v);
    std::string arrow;
    if (chance(0.25)) {
      arrow = "-[" + body + "]-";
    } else if (lu == 'B' && lv == 'A') {
      arrow = "<-[" + body + "]-";
    } else if (lu == lv && chance(0.5)) {
      arrow = "<-[" + body + "]-";
    } else {
      arrow = "-[" + body + "]->";
    }
    paths.push_back(left + arrow + right);
  }
  if (n == 1) paths.push_back(node(0));
  std::vector<std::string> cols;
  int shape = pick(3);
  for (int v = 0; v < n; ++v) {
    if (shape != 2 || v == 0) cols.push_back(fmt::format("ID({0}) AS {0}_id", names[v]));
  }
  if (shape == 0) {
    for (size_t i = 0; i < pairs.size(); ++i) cols.push_back(fmt::format("ID(e{0}) AS e{0}_id", i));
  }
  int filtered = chance(0.4) ? pick(n) : -1;
  if (filtered >= 0) cols.push_back(fmt::format("{0}.val AS {0}_val", names[filtered]));
  bool join = chance(0.2);
  if (join) cols.push_back(fmt::format("{0}.id AS {0}_key", names[0]));
  std::string q = "SELECT * FROM GRAPH_TABLE (rg MATCH ";
  if (distinct_vertices) q += "DISTINCT VERTICES ";
  for (size_t i = 0; i < paths.size(); ++i) q += (i ? ", " : "") + paths[i];
  q += " COLUMNS (";
  for (size_t i = 0; i < cols.size(); ++i) q += (i ? ", " : "") + cols[i];
  q += ")) g";
  std::vector<std::string> where;
  if (join) {
    q += fmt::format(", {} t", label[0]);
    where.push_back(fmt::format("g.{}_key = t.id", names[0]));
    where.push_back("t.val >= 1");
  }
  if (filtered >= 0) where.push_back(fmt::format("g.{}_val < {}", names[filtered], 1 + pick(4)));
  for (size_t i = 0; i < where.size(); ++i) q += (i ? " AND " : " WHERE ") + where[i];
  return q;
}

namespace {

constexpr uint64_t kMaxMatches = 50000;

}  // namespace

VerifyReport VerifyRandom(const VerifyConfig& c) {
  VerifyReport report;
  std::mt19937_64 seeds(c.seed);
  for (int gi = 0; gi < c.graphs; ++gi) {
    auto cat = RandomGraphCatalog(seeds(), c.max_vertices, c.max_edges);
    GraphPtr g = cat->GetGraph("rg");
    GLogue gl = GLogue::Build(*g, 3);
    CardinalityEstimator est(*g, gl);
    TableStats stats;
    for (int pi = 0; pi < c.patterns_per_graph; ++pi) {
      // Redraw patterns whose homomorphism count exceeds the budget.
      uint64_t ps = seeds();
      for (int tries = 0; tries < 20; ++tries) {
        BoundQuery q = ParseQuery(RandomPatternQuery(ps, false), *cat);
        if (CountMatches(*g, q.graph.pattern) <= kMaxMatches) break;
        ps = seeds();
      }
      for (bool distinct : {false, true}) {
        std::string text = RandomPatternQuery(ps, distinct);
        std::string label = fmt::format("graph {} pattern {}{}", gi, pi, distinct ? " distinct" : "");
        try {
          BoundQuery q = ParseQuery(text, *cat);
          VerifyQuery(q, *cat, est, stats, label, report);
        } catch (const Error& e) {
          ++report.failures;
          report.messages.push_back(fmt::format("{}: {}: {}", label, e.what(), text));
        }
      }
    }
  }
  return report;
}

}  // namespace spjm
