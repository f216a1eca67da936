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

#include "spjm/graph_view.h"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include <json.hpp>

#include "spjm/error.h"

namespace spjm {

const char* DirectionName(Direction d) {
  switch (d) {
    case Direction::kOut:
      return "out";
    case Direction::kIn:
      return "in";
    case Direction::kBoth:
      return "either";
  }
  return "?";
}

Direction Reverse(Direction d) {
  if (d == Direction::kOut) return Direction::kIn;
  if (d == Direction::kIn) return Direction::kOut;
  return d;
}

namespace {

// value -> rid over a unique attribute of a vertex relation.
class KeyLookup {
 public:
  KeyLookup(const Relation& rel, size_t attr, const std::string& label) {
    const auto& col = rel.column(attr);
    auto ambiguous = [&](const std::string& v) {
      return Error(ErrorCode::kAmbiguousKey, "attribute " + rel.schema().attribute(attr).name + " of " +
                                                 rel.name() + " (label " + label + ") repeats value '" + v + "'");
    };
    if (col.index() == 0) {
      const auto& v = std::get<0>(col);
      ints_.reserve(v.size());
      for (RowId r = 0; r < v.size(); ++r) {
        if (!ints_.emplace(v[r], r).second) throw ambiguous(std::to_string(v[r]));
      }
    } else {
      const auto& v = std::get<1>(col);
      strings_.reserve(v.size());
      for (RowId r = 0; r < v.size(); ++r) {
        if (!strings_.emplace(v[r], r).second) throw ambiguous(v[r]);
      }
    }
  }

  std::optional<RowId> Find(int64_t v) const {
    auto it = ints_.find(v);
    if (it == ints_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<RowId> Find(const std::string& v) const {
    auto it = strings_.find(v);
    if (it == strings_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::unordered_map<int64_t, RowId> ints_;
  std::unordered_map<std::string, RowId> strings_;
};

std::vector<RowId> ResolveEndpoints(const Relation& edges, size_t key_attr, const KeyLookup& lookup,
                                    const std::string& edge_label) {
  std::vector<RowId> out(edges.size());
  const auto& col = edges.column(key_attr);
  for (RowId r = 0; r < edges.size(); ++r) {
    std::optional<RowId> hit =
        col.index() == 0 ? lookup.Find(std::get<0>(col)[r]) : lookup.Find(std::get<1>(col)[r]);
    if (!hit) {
      throw Error(ErrorCode::kDanglingEdge, "edge " + edge_label + "#" + std::to_string(r) + ": " +
                                                edges.schema().attribute(key_attr).name + " = '" +
                                                ValueToString(edges.value(r, key_attr)) + "' matches no vertex");
    }
    out[r] = *hit;
  }
  return out;
}

Csr BuildCsr(size_t vertex_count, const std::vector<RowId>& from, const std::vector<RowId>& to) {
  Csr csr;
  csr.offsets.assign(vertex_count + 1, 0);
  for (RowId f : from) ++csr.offsets[f + 1];
  for (size_t i = 0; i < vertex_count; ++i) csr.offsets[i + 1] += csr.offsets[i];
  csr.entries.resize(from.size());
  std::vector<uint32_t> fill(csr.offsets.begin(), csr.offsets.end() - 1);
  for (RowId e = 0; e < from.size(); ++e) csr.entries[fill[from[e]]++] = {to[e], e};
  for (size_t v = 0; v < vertex_count; ++v) {
    std::sort(csr.entries.begin() + csr.offsets[v], csr.entries.begin() + csr.offsets[v + 1],
              [](const AdjEntry& a, const AdjEntry& b) {
                return a.neighbor != b.neighbor ? a.neighbor < b.neighbor : a.edge < b.edge;
              });
  }
  return csr;
}

size_t AttrIndex(const Relation& rel, const std::string& attr) {
  auto idx = rel.schema().IndexOf(attr);
  if (!idx) throw Error(ErrorCode::kUnknownAttribute, rel.name() + "." + attr);
  return *idx;
}

}  // namespace

std::shared_ptr<GraphView> CreateGraph(const Catalog& catalog, const RGMapping& mapping) {
  auto g = std::make_shared<GraphView>();
  g->mapping_ = mapping;
  std::map<std::string, LabelId> vertex_by_relation;
  auto add_label = [&](LabelInfo info) {
    if (g->label_by_name_.count(info.name)) {
      throw Error(ErrorCode::kDuplicateName, "label " + info.name + " declared twice in graph " + mapping.graph_name);
    }
    LabelId id = static_cast<LabelId>(g->labels_.size());
    g->label_by_name_[info.name] = id;
    g->labels_.push_back(std::move(info));
    return id;
  };
  for (const auto& vt : mapping.vertex_tables) {
    LabelInfo info;
    info.name = vt.label.empty() ? vt.relation : vt.label;
    info.is_vertex = true;
    info.relation = catalog.GetRelation(vt.relation);
    LabelId id = add_label(std::move(info));
    if (vertex_by_relation.count(vt.relation)) {
      throw Error(ErrorCode::kDuplicateName, "vertex table " + vt.relation + " mapped twice");
    }
    vertex_by_relation[vt.relation] = id;
    g->vertex_labels_.push_back(id);
    g->total_vertices_ += g->labels_[id].relation->size();
  }
  std::map<std::pair<LabelId, size_t>, std::unique_ptr<KeyLookup>> lookups;
  auto lookup_for = [&](LabelId vl, size_t attr) -> const KeyLookup& {
    auto& slot = lookups[{vl, attr}];
    if (!slot) slot = std::make_unique<KeyLookup>(*g->labels_[vl].relation, attr, g->labels_[vl].name);
    return *slot;
  };
  for (const auto& et : mapping.edge_tables) {
    LabelInfo info;
    info.name = et.label.empty() ? et.relation : et.label;
    info.is_vertex = false;
    info.relation = catalog.GetRelation(et.relation);
    const Relation& edges = *info.relation;
    auto endpoint = [&](const EndpointKey& k, LabelId& label, size_t& key_attr, size_t& ref_attr) {
      auto it = vertex_by_relation.find(k.ref_relation);
      if (it == vertex_by_relation.end()) {
        throw Error(ErrorCode::kUnknownRelation, k.ref_relation + " is not a vertex table of " + mapping.graph_name);
      }
      label = it->second;
      key_attr = AttrIndex(edges, k.key_attr);
      ref_attr = AttrIndex(*g->labels_[label].relation, k.ref_attr);
      if (!Comparable(edges.schema().attribute(key_attr).type,
                      g->labels_[label].relation->schema().attribute(ref_attr).type)) {
        throw Error(ErrorCode::kTypeMismatch, et.relation + "." + k.key_attr + " vs " + k.ref_relation + "." + k.ref_attr);
      }
    };
    endpoint(et.source, info.src_label, info.src_key_attr, info.src_ref_attr);
    endpoint(et.target, info.tgt_label, info.tgt_key_attr, info.tgt_ref_attr);
    LabelId id = add_label(info);
    g->edge_labels_.push_back(id);
    g->total_edges_ += edges.size();
  }
  size_t n = g->labels_.size();
  g->ev_src_.resize(n);
  g->ev_tgt_.resize(n);
  g->ve_out_.resize(n);
  g->ve_in_.resize(n);
  for (LabelId el : g->edge_labels_) {
    const LabelInfo& info = g->labels_[el];
    const Relation& edges = *info.relation;
    g->ev_src_[el] =
        ResolveEndpoints(edges, info.src_key_attr, lookup_for(info.src_label, info.src_ref_attr), info.name);
    g->ev_tgt_[el] =
        ResolveEndpoints(edges, info.tgt_key_attr, lookup_for(info.tgt_label, info.tgt_ref_attr), info.name);
    g->ve_out_[el] = BuildCsr(g->labels_[info.src_label].relation->size(), g->ev_src_[el], g->ev_tgt_[el]);
    g->ve_in_[el] = BuildCsr(g->labels_[info.tgt_label].relation->size(), g->ev_tgt_[el], g->ev_src_[el]);
  }
  g->global_avg_degree_ =
      g->total_vertices_ == 0 ? 0.0 : static_cast<double>(g->total_edges_) / static_cast<double>(g->total_vertices_);
  return g;
}

std::optional<LabelId> GraphView::FindLabel(const std::string& name) const {
  auto it = label_by_name_.find(name);
  if (it == label_by_name_.end()) return std::nullopt;
  return it->second;
}

LabelId GraphView::LabelOrThrow(const std::string& name) const {
  auto id = FindLabel(name);
  if (!id) throw Error(ErrorCode::kUnknownLabel, name + " in graph " + this->name());
  return *id;
}

std::vector<std::pair<ElementId, ElementId>> GraphView::Neighbors(ElementId v, const std::string& edge_label,
                                                                  Direction dir) const {
  auto el = FindLabel(edge_label);
  if (!el || labels_[*el].is_vertex) throw Error(ErrorCode::kUnknownLabel, edge_label + " is not an edge label");
  if (v.label >= labels_.size() || !labels_[v.label].is_vertex || v.rid >= labels_[v.label].relation->size()) {
    throw Error(ErrorCode::kUnknownVertex, "invalid vertex id");
  }
  const LabelInfo& info = labels_[*el];
  std::vector<std::pair<ElementId, ElementId>> out;
  auto append = [&](Direction d) {
    LabelId own = d == Direction::kOut ? info.src_label : info.tgt_label;
    LabelId other = d == Direction::kOut ? info.tgt_label : info.src_label;
    if (own != v.label) return;
    for (const AdjEntry& a : Adjacency(*el, d).Of(v.rid)) out.push_back({{*el, a.edge}, {other, a.neighbor}});
  };
  if (dir != Direction::kIn) append(Direction::kOut);
  if (dir != Direction::kOut) append(Direction::kIn);
  return out;
}

std::pair<ElementId, ElementId> GraphView::Endpoints(ElementId e) const {
  if (e.label >= labels_.size() || labels_[e.label].is_vertex || e.rid >= labels_[e.label].relation->size()) {
    throw Error(ErrorCode::kUnknownEdge, "invalid edge id");
  }
  const LabelInfo& info = labels_[e.label];
  return {{info.src_label, ev_src_[e.label][e.rid]}, {info.tgt_label, ev_tgt_[e.label][e.rid]}};
}

std::string GraphView::ElementString(ElementId id) const {
  return labels_[id.label].name + "#" + std::to_string(id.rid);
}

ElementId GraphView::ParseElement(const std::string& text) const {
  auto hash = text.rfind('#');
  if (hash == std::string::npos) throw Error(ErrorCode::kInvalidArgument, "element id needs Label#rid: " + text);
  LabelId label = LabelOrThrow(text.substr(0, hash));
  uint32_t rid = 0;
  const char* b = text.data() + hash + 1;
  const char* e = text.data() + text.size();
  auto res = std::from_chars(b, e, rid);
  if (res.ec != std::errc() || res.ptr != e) throw Error(ErrorCode::kInvalidArgument, "bad rid in " + text);
  if (rid >= labels_[label].relation->size()) throw Error(ErrorCode::kRowOutOfRange, text);
  return {label, rid};
}

double GraphView::AverageDegree(LabelId vertex_label, LabelId edge_label, Direction dir) const {
  const LabelInfo& info = labels_[edge_label];
  double total = 0;
  auto add = [&](Direction d) {
    LabelId own = d == Direction::kOut ? info.src_label : info.tgt_label;
    if (own != vertex_label) return;
    size_t nv = labels_[own].relation->size();
    if (nv == 0) return;
    total += static_cast<double>(info.relation->size()) / static_cast<double>(nv);
  };
  if (dir != Direction::kIn) add(Direction::kOut);
  if (dir != Direction::kOut) add(Direction::kIn);
  return total;
}

std::string GraphView::IndexJson() const {
  nlohmann::ordered_json root;
  root["graph"] = name();
  nlohmann::ordered_json ev = nlohmann::ordered_json::object();
  nlohmann::ordered_json ve = nlohmann::ordered_json::object();
  for (LabelId el : edge_labels_) {
    const LabelInfo& info = labels_[el];
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (RowId e = 0; e < info.relation->size(); ++e) {
      arr.push_back({{"edge", ElementString({el, e})},
                     {"src", ElementString({info.src_label, ev_src_[el][e]})},
                     {"tgt", ElementString({info.tgt_label, ev_tgt_[el][e]})}});
    }
    ev[info.name] = arr;
    for (Direction d : {Direction::kOut, Direction::kIn}) {
      LabelId own = d == Direction::kOut ? info.src_label : info.tgt_label;
      LabelId other = d == Direction::kOut ? info.tgt_label : info.src_label;
      nlohmann::ordered_json lists = nlohmann::ordered_json::object();
      const Csr& csr = Adjacency(el, d);
      for (RowId v = 0; v + 1 < csr.offsets.size(); ++v) {
        auto span = csr.Of(v);
        if (span.empty()) continue;
        nlohmann::ordered_json entries = nlohmann::ordered_json::array();
        for (const AdjEntry& a : span) {
          entries.push_back({ElementString({el, a.edge}), ElementString({other, a.neighbor})});
        }
        lists[ElementString({own, v})] = entries;
      }
      ve[labels_[own].name + "/" + info.name + "/" + DirectionName(d)] = lists;
    }
  }
  root["ev"] = ev;
  root["ve"] = ve;
  return root.dump(2);
}

}  // namespace spjm
