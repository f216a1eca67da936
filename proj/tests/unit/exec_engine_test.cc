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

#include <gtest/gtest.h>

#include <set>

#include "spjm/converged.h"
#include "spjm/executor.h"
#include "spjm/parser.h"
#include "test_support.h"

namespace spjm {
namespace {

using testing::CodeOf;
using Rows = std::vector<std::vector<std::string>>;

PlanPtr ScanVertex(const std::string& var, const std::string& label, std::vector<AttrPredicate> constraints = {}) {
  PlanPtr n = MakeNode(OpKind::kScanVertex);
  n->var = var;
  n->label = label;
  n->constraints = std::move(constraints);
  return n;
}

PlanPtr Expand(PlanPtr child, const std::string& from, const std::string& edge_label, Direction dir,
               const std::string& var, const std::string& label) {
  PlanPtr n = MakeNode(OpKind::kExpand, {std::move(child)});
  n->from = from;
  n->edge_label = edge_label;
  n->dir = dir;
  n->var = var;
  n->label = label;
  return n;
}

AttrPredicate Eq(const std::string& attr, Value v) {
  AttrPredicate p;
  p.attr = attr;
  p.literal = std::move(v);
  return p;
}

class ExecEngine : public ::testing::Test {
 protected:
  void SetUp() override { session_ = testing::MiniSession(); }
  Rows Run(const PlanPtr& plan) { return testing::RunPlan(*session_, *plan).SortedRows(); }
  StringTable Table(const PlanPtr& plan) { return testing::RunPlan(*session_, *plan); }

  std::unique_ptr<Session> session_;
};

TEST_F(ExecEngine, ScanVertex) {
  EXPECT_EQ(Run(ScanVertex("p", "Person")), (Rows{{"Person#0"}, {"Person#1"}, {"Person#2"}}));
  EXPECT_EQ(Run(ScanVertex("p", "Person", {Eq("name", std::string("Tom"))})), (Rows{{"Person#0"}}));
  EXPECT_EQ(Table(ScanVertex("p", "Person")).columns, (std::vector<std::string>{"p"}));
}

TEST_F(ExecEngine, ScanEdge) {
  PlanPtr n = MakeNode(OpKind::kScanEdge);
  n->var = "l";
  n->label = "Likes";
  EXPECT_EQ(Run(n), (Rows{{"Likes#0"}, {"Likes#1"}, {"Likes#2"}}));
}

TEST_F(ExecEngine, ExpandEdgeThenGetVertex) {
  PlanPtr e = MakeNode(OpKind::kExpandEdge, {ScanVertex("p", "Person")});
  e->from = "p";
  e->var = "l";
  e->label = "Likes";
  e->dir = Direction::kOut;
  PlanPtr v = MakeNode(OpKind::kGetVertex, {e});
  v->from = "p";
  v->edge = "l";
  v->dir = Direction::kOut;
  v->var = "m";
  v->label = "Message";
  EXPECT_EQ(Run(v), (Rows{{"Person#0", "Likes#0", "Message#0"},
                          {"Person#1", "Likes#1", "Message#0"},
                          {"Person#1", "Likes#2", "Message#1"}}));
}

TEST_F(ExecEngine, ExpandEdgeConstraint) {
  PlanPtr e = MakeNode(OpKind::kExpandEdge, {ScanVertex("p", "Person")});
  e->from = "p";
  e->var = "l";
  e->label = "Likes";
  AttrPredicate late;
  late.attr = "date";
  late.op = CmpOp::kGe;
  late.literal = std::string("2024-04-01");
  e->edge_constraints = {late};
  EXPECT_EQ(Run(e), (Rows{{"Person#1", "Likes#1"}, {"Person#1", "Likes#2"}}));
}

TEST_F(ExecEngine, FusedExpandBothDirections) {
  EXPECT_EQ(Run(Expand(ScanVertex("p", "Person"), "p", "Likes", Direction::kOut, "m", "Message")),
            (Rows{{"Person#0", "Message#0"}, {"Person#1", "Message#0"}, {"Person#1", "Message#1"}}));
  EXPECT_EQ(Run(Expand(ScanVertex("m", "Message"), "m", "Likes", Direction::kIn, "p", "Person")),
            (Rows{{"Message#0", "Person#0"}, {"Message#0", "Person#1"}, {"Message#1", "Person#1"}}));
  EXPECT_EQ(Run(Expand(ScanVertex("a", "Person", {Eq("name", std::string("Jerry"))}), "a", "Knows", Direction::kBoth,
                       "b", "Person")),
            (Rows{{"Person#1", "Person#0"}, {"Person#1", "Person#0"}, {"Person#1", "Person#2"}, {"Person#1", "Person#2"}}));
}

TEST_F(ExecEngine, ExpandIntersectClosesCoLikedTriangle) {
  PlanPtr base = Expand(ScanVertex("p1", "Person"), "p1", "Likes", Direction::kOut, "m", "Message");
  PlanPtr x = MakeNode(OpKind::kExpandIntersect, {base});
  x->var = "p2";
  x->label = "Person";
  x->legs = {{"p1", "k", "Knows", Direction::kOut, {}}, {"m", "l2", "Likes", Direction::kIn, {}}};
  StringTable t = Table(x);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"p1", "m", "k", "l2", "p2"}));
  EXPECT_EQ(t.SortedRows(), (Rows{{"Person#0", "Message#0", "Knows#0", "Likes#1", "Person#1"},
                                  {"Person#1", "Message#0", "Knows#1", "Likes#0", "Person#0"}}));
  x->emit_edges = false;
  EXPECT_EQ(Run(x), (Rows{{"Person#0", "Message#0", "Person#1"}, {"Person#1", "Message#0", "Person#0"}}));
}

// Two parallel edges a->c and one a->b: each distinct center yields the
// product of the per-leg edge multiplicities. Trimming drops the edge columns
// but keeps the multiplicity.
class ParallelEdges : public ::testing::Test {
 protected:
  void SetUp() override {
    auto v = std::make_shared<Relation>(
        Schema("V", {{"id", AttrType::kInt64}}),
        std::vector<Tuple>{{Value(int64_t{1})}, {Value(int64_t{2})}, {Value(int64_t{3})}});
    auto e = std::make_shared<Relation>(
        Schema("E", {{"src", AttrType::kInt64}, {"dst", AttrType::kInt64}}),
        std::vector<Tuple>{{Value(int64_t{1}), Value(int64_t{3})},
                           {Value(int64_t{1}), Value(int64_t{3})},
                           {Value(int64_t{1}), Value(int64_t{2})}});
    cat_.AddRelation(v);
    cat_.AddRelation(e);
    cat_.AddGraph(CreateGraph(cat_, ast::ToMapping(std::get<ast::CreateGraphStmt>(
                                         Parse("CREATE PROPERTY GRAPH pg VERTEX TABLES (V) EDGE TABLES (E SOURCE KEY "
                                               "(src) REFERENCES V (id) DESTINATION KEY (dst) REFERENCES V (id))")))));
  }

  PlanPtr Intersect(bool emit_edges) {
    PlanPtr x = MakeNode(OpKind::kExpandIntersect, {ScanVertex("a", "V", {Eq("id", int64_t{1})})});
    x->var = "c";
    x->label = "V";
    x->legs = {{"a", "x", "E", Direction::kOut, {}}, {"a", "y", "E", Direction::kOut, {}}};
    x->emit_edges = emit_edges;
    return x;
  }

  size_t Rows(const PlanPtr& p) { return Execute(*p, cat_, {.graph = "pg"}).rows(); }

  Catalog cat_;
};

TEST_F(ParallelEdges, IntersectMultipliesParallelEdgesPerCenter) {
  EXPECT_EQ(Rows(Intersect(true)), 2u * 2u + 1u * 1u);
  BoundQuery q = ParseQuery(
      "SELECT * FROM GRAPH_TABLE (pg MATCH (a:V {id: 1})-[x:E]->(c:V), (a)-[y:E]->(c) COLUMNS (ID(x) AS x)) g", cat_);
  EXPECT_EQ(CountMatches(*cat_.GetGraph("pg"), q.graph.pattern), 5u);
}

TEST_F(ParallelEdges, TrimmedIntersectKeepsMultiplicity) {
  ResultTable t = Execute(*Intersect(false), cat_, {.graph = "pg"});
  EXPECT_EQ(t.rows(), 5u);
  std::set<uint64_t> centers;
  for (size_t r = 0; r < t.rows(); ++r) centers.insert(t.at(r, 1));
  // Distinct centers are bounded by the shortest adjacency list (3 edges out of a).
  EXPECT_EQ(centers.size(), 2u);
  EXPECT_LE(centers.size(), 3u);
}

TEST_F(ExecEngine, GraphHashJoinOnSharedVertex) {
  PlanPtr l = Expand(ScanVertex("p1", "Person"), "p1", "Likes", Direction::kOut, "m", "Message");
  PlanPtr r = Expand(ScanVertex("p2", "Person"), "p2", "Likes", Direction::kOut, "m", "Message");
  PlanPtr j = MakeNode(OpKind::kGraphHashJoin, {l, r});
  j->gleft_keys = {{"m", ""}};
  j->gright_keys = {{"m", ""}};
  StringTable t = Table(j);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"p1", "m", "p2"}));
  EXPECT_EQ(t.rows.size(), 5u);
  j->build_left = true;
  EXPECT_TRUE(Table(j).SameMultiset(t));
}

TEST_F(ExecEngine, GraphHashJoinOnAttribute) {
  PlanPtr j = MakeNode(OpKind::kGraphHashJoin, {ScanVertex("a", "Person"), ScanVertex("b", "Person")});
  j->gleft_keys = {{"a", "place_id"}};
  j->gright_keys = {{"b", "place_id"}};
  EXPECT_EQ(Run(j), (Rows{{"Person#0", "Person#0"},
                          {"Person#0", "Person#2"},
                          {"Person#1", "Person#1"},
                          {"Person#2", "Person#0"},
                          {"Person#2", "Person#2"}}));
}

PlanPtr Scan(const std::string& relation, const std::string& alias) {
  PlanPtr n = MakeNode(OpKind::kScan);
  n->relation = relation;
  n->alias = alias;
  return n;
}

TEST_F(ExecEngine, RelationalOperators) {
  PlanPtr f = MakeNode(OpKind::kFilter, {Scan("Person", "p")});
  PlanPredicate pred;
  pred.lhs = "p.place_id";
  pred.literal = int64_t{10};
  f->predicates = {pred};
  PlanPtr j = MakeNode(OpKind::kHashJoin, {f, Scan("Place", "pl")});
  j->left_keys = {"p.place_id"};
  j->right_keys = {"pl.place_id"};
  PlanPtr proj = MakeNode(OpKind::kProject, {j});
  proj->items = {{"name", "p.name", ProjectFn::kCopy}, {"city", "pl.pl_name", ProjectFn::kCopy}};
  StringTable t = Table(proj);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"name", "city"}));
  EXPECT_EQ(t.SortedRows(), (Rows{{"Spike", "Berlin"}, {"Tom", "Berlin"}}));

  PlanPtr u = MakeNode(OpKind::kUnionAll, {proj, proj});
  EXPECT_EQ(Table(u).rows.size(), 4u);
}

TEST_F(ExecEngine, ElementScanAndAllDistinct) {
  PlanPtr a = Scan("Person", "a");
  a->graph = "mini";
  a->element_label = "Person";
  PlanPtr b = Scan("Person", "b");
  b->graph = "mini";
  b->element_label = "Person";
  PlanPtr j = MakeNode(OpKind::kHashJoin, {a, b});
  j->left_keys = {"a.place_id"};
  j->right_keys = {"b.place_id"};
  PlanPtr d = MakeNode(OpKind::kAllDistinct, {j});
  d->groups = {{"a.#id", "b.#id"}};
  PlanPtr proj = MakeNode(OpKind::kProject, {d});
  proj->items = {{"a", "a.#id", ProjectFn::kCopy}, {"bl", "b.#id", ProjectFn::kLabel}};
  EXPECT_EQ(Run(proj), (Rows{{"Person#0", "Person"}, {"Person#2", "Person"}}));
}

TEST_F(ExecEngine, ScanGraphTableRendersColumns) {
  PlanPtr s = MakeNode(OpKind::kScanGraphTable, {ScanVertex("v", "Person", {Eq("name", std::string("Tom"))})});
  s->graph = "mini";
  s->alias = "g";
  s->columns = {{"id", TableColumnKind::kId, "v", ""},
                {"lab", TableColumnKind::kLabel, "v", ""},
                {"name", TableColumnKind::kAttr, "v", "name"}};
  StringTable t = Table(s);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"g.id", "g.lab", "g.name"}));
  EXPECT_EQ(t.rows, (Rows{{"Person#0", "Person", "Tom"}}));
}

TEST_F(ExecEngine, SchemaErrors) {
  EXPECT_EQ(CodeOf([&] { Run(Expand(ScanVertex("p", "Person"), "nope", "Likes", Direction::kOut, "m", "Message")); }),
            ErrorCode::kSchemaMismatch);
  EXPECT_EQ(CodeOf([&] { Run(Expand(ScanVertex("p", "Person"), "p", "Likes", Direction::kIn, "m", "Message")); }),
            ErrorCode::kSchemaMismatch);
  EXPECT_EQ(CodeOf([&] { Run(Expand(ScanVertex("p", "Person"), "p", "Likes", Direction::kOut, "p", "Message")); }),
            ErrorCode::kSchemaMismatch);
}

TEST_F(ExecEngine, PlanJsonRoundTripsForCorpus) {
  for (const auto& fq : testing::MiniQueries()) {
    BoundQuery q = session_->Bind(fq.text);
    for (const char* opt : {"agnostic", "converged"}) {
      PlanPtr plan = session_->Optimize(q, opt);
      std::string json = PlanToJson(*plan);
      PlanPtr back = PlanFromJson(json);
      EXPECT_EQ(PlanToJson(*back), json) << fq.name << " " << opt;
      EXPECT_EQ(ExplainText(*back), ExplainText(*plan)) << fq.name;
      EXPECT_TRUE(Execute(*back, session_->catalog()).ToStrings().SameMultiset(EvaluateReference(q)))
          << fq.name << " " << opt;
    }
  }
}

TEST(PlanJson, RejectsUnknownKind) {
  EXPECT_EQ(CodeOf([] { PlanFromJson(R"({"kind": "TELEPORT"})"); }), ErrorCode::kSchemaMismatch);
  EXPECT_EQ(CodeOf([] { PlanFromJson("not json"); }), ErrorCode::kSchemaMismatch);
}

TEST(ExecTimeout, LongRunningPlanTimesOut) {
  std::vector<Tuple> vs;
  std::vector<Tuple> es;
  const int n = 200;
  for (int i = 0; i < n; ++i) vs.push_back({Value(int64_t{i})});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) es.push_back({Value(int64_t{i}), Value(int64_t{j})});
    }
  }
  Catalog cat;
  cat.AddRelation(std::make_shared<Relation>(Schema("V", {{"id", AttrType::kInt64}}), vs));
  cat.AddRelation(std::make_shared<Relation>(Schema("E", {{"src", AttrType::kInt64}, {"dst", AttrType::kInt64}}), es));
  cat.AddGraph(CreateGraph(cat, ast::ToMapping(std::get<ast::CreateGraphStmt>(
                                    Parse("CREATE PROPERTY GRAPH k VERTEX TABLES (V) EDGE TABLES (E SOURCE KEY (src) "
                                          "REFERENCES V (id) DESTINATION KEY (dst) REFERENCES V (id))")))));
  PlanPtr p = ScanVertex("a", "V");
  p = Expand(p, "a", "E", Direction::kOut, "b", "V");
  p = Expand(p, "b", "E", Direction::kOut, "c", "V");
  p = Expand(p, "c", "E", Direction::kOut, "d", "V");
  p = Expand(p, "d", "E", Direction::kOut, "e", "V");
  PlanPtr s = MakeNode(OpKind::kScanGraphTable, {p});
  s->graph = "k";
  s->alias = "g";
  EXPECT_EQ(CodeOf([&] { Execute(*s, cat, {.timeout_ms = 50}); }), ErrorCode::kTimeout);
}

}  // namespace
}  // namespace spjm
