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

// Plan JSON: {"kind": ..., <non-default params>, "children": [...]}.
// Field names follow PlanNode; docs/plan_json.md lists them per kind.

#include <json.hpp>

#include "spjm/error.h"
#include "spjm/plan.h"

namespace spjm {

namespace {

using Json = nlohmann::ordered_json;

const char* kOps[] = {"=", "<>", "<", "<=", ">", ">="};

std::string OpText(CmpOp op) { return kOps[static_cast<int>(op)]; }

CmpOp ParseOp(const std::string& s) {
  for (int i = 0; i < 6; ++i) {
    if (s == kOps[i]) return static_cast<CmpOp>(i);
  }
  throw Error(ErrorCode::kSchemaMismatch, "unknown comparison '" + s + "'");
}

Json ValueJson(const Value& v) {
  if (IsInt(v)) return Json(std::get<int64_t>(v));
  return Json(std::get<std::string>(v));
}

Value JsonValue(const Json& j) {
  if (j.is_number_integer()) return j.get<int64_t>();
  return j.get<std::string>();
}

Direction ParseDir(const std::string& s) {
  if (s == "out") return Direction::kOut;
  if (s == "in") return Direction::kIn;
  if (s == "either") return Direction::kBoth;
  throw Error(ErrorCode::kSchemaMismatch, "unknown direction '" + s + "'");
}

Json PredJson(const PlanPredicate& p) {
  Json j;
  j["lhs"] = p.lhs;
  j["op"] = OpText(p.op);
  if (p.rhs_is_column) {
    j["rhs_column"] = p.rhs;
  } else {
    j["literal"] = ValueJson(p.literal);
  }
  return j;
}

PlanPredicate JsonPred(const Json& j) {
  PlanPredicate p;
  p.lhs = j.at("lhs").get<std::string>();
  p.op = ParseOp(j.at("op").get<std::string>());
  if (j.contains("rhs_column")) {
    p.rhs_is_column = true;
    p.rhs = j.at("rhs_column").get<std::string>();
  } else {
    p.literal = JsonValue(j.at("literal"));
  }
  return p;
}

Json AttrPredsJson(const std::vector<AttrPredicate>& ps) {
  Json arr = Json::array();
  for (const auto& p : ps) {
    Json j;
    j["attr"] = p.attr;
    j["op"] = OpText(p.op);
    if (p.rhs_is_attr) {
      j["rhs_attr"] = p.rhs_attr;
    } else {
      j["literal"] = ValueJson(p.literal);
    }
    arr.push_back(j);
  }
  return arr;
}

std::vector<AttrPredicate> JsonAttrPreds(const Json& arr) {
  std::vector<AttrPredicate> out;
  for (const auto& j : arr) {
    AttrPredicate p;
    p.attr = j.at("attr").get<std::string>();
    p.op = ParseOp(j.at("op").get<std::string>());
    if (j.contains("rhs_attr")) {
      p.rhs_is_attr = true;
      p.rhs_attr = j.at("rhs_attr").get<std::string>();
    } else {
      p.literal = JsonValue(j.at("literal"));
    }
    out.push_back(std::move(p));
  }
  return out;
}

Json GraphKeysJson(const std::vector<GraphKey>& ks) {
  Json arr = Json::array();
  for (const auto& k : ks) {
    Json j;
    j["var"] = k.var;
    if (!k.attr.empty()) j["attr"] = k.attr;
    arr.push_back(j);
  }
  return arr;
}

std::vector<GraphKey> JsonGraphKeys(const Json& arr) {
  std::vector<GraphKey> out;
  for (const auto& j : arr) out.push_back({j.at("var").get<std::string>(), j.value("attr", std::string())});
  return out;
}

const char* kColumnKinds[] = {"attr", "id", "label"};

Json NodeJson(const PlanNode& n) {
  Json j;
  j["kind"] = OpKindName(n.kind);
  auto str = [&](const char* key, const std::string& v) {
    if (!v.empty()) j[key] = v;
  };
  str("relation", n.relation);
  str("alias", n.alias);
  str("graph", n.graph);
  str("element_label", n.element_label);
  if (!n.predicates.empty()) {
    Json arr = Json::array();
    for (const auto& p : n.predicates) arr.push_back(PredJson(p));
    j["predicates"] = arr;
  }
  if (!n.items.empty()) {
    Json arr = Json::array();
    for (const auto& it : n.items) {
      Json e;
      e["name"] = it.name;
      e["source"] = it.source;
      if (it.fn == ProjectFn::kLabel) e["fn"] = "label";
      arr.push_back(e);
    }
    j["items"] = arr;
  }
  if (!n.left_keys.empty()) {
    j["left_keys"] = n.left_keys;
    j["right_keys"] = n.right_keys;
  }
  if (n.build_left) j["build_left"] = true;
  str("probe", n.probe);
  str("edge_label", n.edge_label);
  if (n.kind == OpKind::kEvIndexJoin) {
    j["from_edge"] = n.from_edge;
    j["end_is_source"] = n.end_is_source;
  }
  if (n.kind == OpKind::kEvIndexJoin || n.kind == OpKind::kExpandEdge || n.kind == OpKind::kGetVertex ||
      n.kind == OpKind::kExpand) {
    j["dir"] = DirectionName(n.dir);
  }
  str("var", n.var);
  str("from", n.from);
  str("edge", n.edge);
  str("label", n.label);
  if (!n.constraints.empty()) j["constraints"] = AttrPredsJson(n.constraints);
  if (!n.edge_constraints.empty()) j["edge_constraints"] = AttrPredsJson(n.edge_constraints);
  if (!n.legs.empty()) {
    Json arr = Json::array();
    for (const auto& l : n.legs) {
      Json e;
      e["from"] = l.from;
      e["edge"] = l.edge;
      e["edge_label"] = l.edge_label;
      e["dir"] = DirectionName(l.dir);
      if (!l.edge_constraints.empty()) e["edge_constraints"] = AttrPredsJson(l.edge_constraints);
      arr.push_back(e);
    }
    j["legs"] = arr;
  }
  if (n.kind == OpKind::kExpandIntersect) j["emit_edges"] = n.emit_edges;
  if (!n.gleft_keys.empty()) {
    j["gleft_keys"] = GraphKeysJson(n.gleft_keys);
    j["gright_keys"] = GraphKeysJson(n.gright_keys);
  }
  if (!n.groups.empty()) j["groups"] = n.groups;
  if (!n.columns.empty()) {
    Json arr = Json::array();
    for (const auto& c : n.columns) {
      Json e;
      e["name"] = c.name;
      e["kind"] = kColumnKinds[static_cast<int>(c.kind)];
      e["var"] = c.var;
      if (!c.attr.empty()) e["attr"] = c.attr;
      arr.push_back(e);
    }
    j["columns"] = arr;
  }
  if (n.est_rows >= 0) j["est_rows"] = n.est_rows;
  if (n.est_cost >= 0) j["est_cost"] = n.est_cost;
  if (!n.children.empty()) {
    Json arr = Json::array();
    for (const auto& c : n.children) arr.push_back(NodeJson(*c));
    j["children"] = arr;
  }
  return j;
}

PlanPtr JsonNode(const Json& j) {
  auto n = MakeNode(ParseOpKind(j.at("kind").get<std::string>()));
  auto str = [&](const char* key) { return j.value(key, std::string()); };
  n->relation = str("relation");
  n->alias = str("alias");
  n->graph = str("graph");
  n->element_label = str("element_label");
  if (j.contains("predicates")) {
    for (const auto& p : j["predicates"]) n->predicates.push_back(JsonPred(p));
  }
  if (j.contains("items")) {
    for (const auto& e : j["items"]) {
      n->items.push_back({e.at("name").get<std::string>(), e.at("source").get<std::string>(),
                          e.value("fn", std::string()) == "label" ? ProjectFn::kLabel : ProjectFn::kCopy});
    }
  }
  if (j.contains("left_keys")) {
    n->left_keys = j["left_keys"].get<std::vector<std::string>>();
    n->right_keys = j.at("right_keys").get<std::vector<std::string>>();
    if (n->left_keys.size() != n->right_keys.size()) throw Error(ErrorCode::kSchemaMismatch, "key lists differ in length");
  }
  n->build_left = j.value("build_left", false);
  n->probe = str("probe");
  n->edge_label = str("edge_label");
  n->from_edge = j.value("from_edge", false);
  n->end_is_source = j.value("end_is_source", true);
  if (j.contains("dir")) n->dir = ParseDir(j["dir"].get<std::string>());
  n->var = str("var");
  n->from = str("from");
  n->edge = str("edge");
  n->label = str("label");
  if (j.contains("constraints")) n->constraints = JsonAttrPreds(j["constraints"]);
  if (j.contains("edge_constraints")) n->edge_constraints = JsonAttrPreds(j["edge_constraints"]);
  if (j.contains("legs")) {
    for (const auto& e : j["legs"]) {
      ExpandLeg l;
      l.from = e.at("from").get<std::string>();
      l.edge = e.at("edge").get<std::string>();
      l.edge_label = e.at("edge_label").get<std::string>();
      l.dir = ParseDir(e.at("dir").get<std::string>());
      if (e.contains("edge_constraints")) l.edge_constraints = JsonAttrPreds(e["edge_constraints"]);
      n->legs.push_back(std::move(l));
    }
  }
  n->emit_edges = j.value("emit_edges", true);
  if (j.contains("gleft_keys")) {
    n->gleft_keys = JsonGraphKeys(j["gleft_keys"]);
    n->gright_keys = JsonGraphKeys(j.at("gright_keys"));
    if (n->gleft_keys.size() != n->gright_keys.size()) {
      throw Error(ErrorCode::kSchemaMismatch, "key lists differ in length");
    }
  }
  if (j.contains("groups")) n->groups = j["groups"].get<std::vector<std::vector<std::string>>>();
  if (j.contains("columns")) {
    for (const auto& e : j["columns"]) {
      TableColumn c;
      c.name = e.at("name").get<std::string>();
      std::string kind = e.at("kind").get<std::string>();
      c.kind = kind == "id" ? TableColumnKind::kId : kind == "label" ? TableColumnKind::kLabel : TableColumnKind::kAttr;
      c.var = e.at("var").get<std::string>();
      c.attr = e.value("attr", std::string());
      n->columns.push_back(std::move(c));
    }
  }
  n->est_rows = j.value("est_rows", -1.0);
  n->est_cost = j.value("est_cost", -1.0);
  if (j.contains("children")) {
    for (const auto& c : j["children"]) n->children.push_back(JsonNode(c));
  }
  return n;
}

}  // namespace

std::string PlanToJson(const PlanNode& root) { return NodeJson(root).dump(2); }

PlanPtr PlanFromJson(const std::string& text) {
  try {
    return JsonNode(Json::parse(text));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kSchemaMismatch, std::string("bad plan JSON: ") + ex.what());
  }
}

}  // namespace spjm
