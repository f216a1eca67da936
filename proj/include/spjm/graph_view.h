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

#ifndef SPJM_GRAPH_VIEW_H_
#define SPJM_GRAPH_VIEW_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spjm/storage.h"

namespace spjm {

using LabelId = uint32_t;
constexpr LabelId kNoLabel = static_cast<LabelId>(-1);

struct ElementId {
  LabelId label = 0;
  RowId rid = 0;

  uint64_t Pack() const { return (static_cast<uint64_t>(label) << 32) | rid; }
  static ElementId Unpack(uint64_t packed) {
    return {static_cast<LabelId>(packed >> 32), static_cast<RowId>(packed & 0xffffffffu)};
  }
  auto operator<=>(const ElementId&) const = default;
};

enum class Direction { kOut, kIn, kBoth };

const char* DirectionName(Direction d);
Direction Reverse(Direction d);

struct VertexMapping {
  std::string relation;
  std::string label;
};

struct EndpointKey {
  std::string key_attr;      // attribute of the edge relation
  std::string ref_relation;  // a declared vertex relation
  std::string ref_attr;      // unique attribute of that relation
};

struct EdgeMapping {
  std::string relation;
  std::string label;
  EndpointKey source;
  EndpointKey target;
};

struct RGMapping {
  std::string graph_name;
  std::vector<VertexMapping> vertex_tables;
  std::vector<EdgeMapping> edge_tables;
};

// One adjacency entry. Lists are sorted by (neighbor, edge).
struct AdjEntry {
  RowId neighbor;
  RowId edge;
};

// CSR adjacency indexed by vertex rid.
struct Csr {
  std::vector<uint32_t> offsets;
  std::vector<AdjEntry> entries;

  std::span<const AdjEntry> Of(RowId rid) const {
    return {entries.data() + offsets[rid], entries.data() + offsets[rid + 1]};
  }
};

struct LabelInfo {
  std::string name;
  bool is_vertex = true;
  RelationPtr relation;
  // Edge labels only.
  LabelId src_label = kNoLabel;
  LabelId tgt_label = kNoLabel;
  size_t src_key_attr = 0;
  size_t tgt_key_attr = 0;
  size_t src_ref_attr = 0;
  size_t tgt_ref_attr = 0;
};

class GraphView {
 public:
  const std::string& name() const { return mapping_.graph_name; }
  const RGMapping& mapping() const { return mapping_; }

  size_t label_count() const { return labels_.size(); }
  const LabelInfo& label(LabelId id) const { return labels_[id]; }
  const std::string& label_name(LabelId id) const { return labels_[id].name; }
  std::optional<LabelId> FindLabel(const std::string& name) const;
  LabelId LabelOrThrow(const std::string& name) const;
  const std::vector<LabelId>& vertex_labels() const { return vertex_labels_; }
  const std::vector<LabelId>& edge_labels() const { return edge_labels_; }
  size_t LabelSize(LabelId id) const { return labels_[id].relation->size(); }

  // EV-index.
  RowId SourceRid(LabelId edge_label, RowId edge) const { return ev_src_[edge_label][edge]; }
  RowId TargetRid(LabelId edge_label, RowId edge) const { return ev_tgt_[edge_label][edge]; }
  const std::vector<RowId>& SourceArray(LabelId edge_label) const { return ev_src_[edge_label]; }
  const std::vector<RowId>& TargetArray(LabelId edge_label) const { return ev_tgt_[edge_label]; }

  // VE-index. kOut is indexed by source vertex rid, kIn by target vertex rid.
  const Csr& Adjacency(LabelId edge_label, Direction dir) const {
    return dir == Direction::kIn ? ve_in_[edge_label] : ve_out_[edge_label];
  }

  // Checked element-level API.
  std::vector<std::pair<ElementId, ElementId>> Neighbors(ElementId v, const std::string& edge_label,
                                                         Direction dir) const;
  std::pair<ElementId, ElementId> Endpoints(ElementId e) const;

  std::string ElementString(ElementId id) const;
  // Inverse of ElementString; throws UnknownLabel / RowOutOfRange.
  ElementId ParseElement(const std::string& text) const;

  // Average out/in degree of vertices of `vertex_label` over `edge_label`; 0 when the label does not fit.
  double AverageDegree(LabelId vertex_label, LabelId edge_label, Direction dir) const;
  double GlobalAverageDegree() const { return global_avg_degree_; }
  size_t TotalVertices() const { return total_vertices_; }
  size_t TotalEdges() const { return total_edges_; }

  std::string IndexJson() const;

  friend std::shared_ptr<GraphView> CreateGraph(const Catalog& catalog, const RGMapping& mapping);

 private:
  RGMapping mapping_;
  std::vector<LabelInfo> labels_;
  std::map<std::string, LabelId> label_by_name_;
  std::vector<LabelId> vertex_labels_;
  std::vector<LabelId> edge_labels_;
  // Indexed by label id; empty for vertex labels.
  std::vector<std::vector<RowId>> ev_src_;
  std::vector<std::vector<RowId>> ev_tgt_;
  std::vector<Csr> ve_out_;
  std::vector<Csr> ve_in_;
  double global_avg_degree_ = 0;
  size_t total_vertices_ = 0;
  size_t total_edges_ = 0;
};

using GraphPtr = std::shared_ptr<const GraphView>;

// Validates totality of the endpoint functions and builds both indexes.
std::shared_ptr<GraphView> CreateGraph(const Catalog& catalog, const RGMapping& mapping);

}  // namespace spjm

#endif  // SPJM_GRAPH_VIEW_H_
