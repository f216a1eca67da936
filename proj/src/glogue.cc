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

#include "spjm/glogue.h"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <tuple>

#include <json.hpp>

#include "spjm/error.h"
#include "spjm/oracle.h"

namespace spjm {

namespace {

struct Slot {
  int src;
  int tgt;
  LabelId label;
};

void EnumerateLabelTuples(const std::vector<LabelId>& labels, int size, size_t from, std::vector<LabelId>& cur,
                          const std::function<void(const std::vector<LabelId>&)>& f) {
  if (static_cast<int>(cur.size()) == size) {
    f(cur);
    return;
  }
  for (size_t i = from; i < labels.size(); ++i) {
    cur.push_back(labels[i]);
    EnumerateLabelTuples(labels, size, i, cur, f);
    cur.pop_back();
  }
}

// Connected components of `mask` in p, as vertex masks.
std::vector<VertexMask> Components(const PatternGraph& p, VertexMask mask) {
  std::vector<VertexMask> out;
  VertexMask left = mask;
  while (left) {
    VertexMask comp = left & (~left + 1);
    while (true) {
      VertexMask grow = comp;
      for (const auto& e : p.edges) {
        if ((comp >> e.src & 1) && (mask >> e.tgt & 1)) grow |= 1u << e.tgt;
        if ((comp >> e.tgt & 1) && (mask >> e.src & 1)) grow |= 1u << e.src;
      }
      if (grow == comp) break;
      comp = grow;
    }
    out.push_back(comp);
    left &= ~comp;
  }
  return out;
}

}  // namespace

GLogue GLogue::Build(const GraphView& g, int k) {
  if (k < 1 || k > 4) throw Error(ErrorCode::kInvalidArgument, "GLogue k must be in [1, 4]");
  auto start = std::chrono::steady_clock::now();
  GLogue out;
  out.k_ = k;
  std::map<PatternKey, PatternGraph> patterns;
  std::vector<LabelId> cur;
  for (int size = 1; size <= k; ++size) {
    EnumerateLabelTuples(g.vertex_labels(), size, 0, cur, [&](const std::vector<LabelId>& labels) {
      PatternGraph base;
      for (size_t i = 0; i < labels.size(); ++i) {
        base.vertices.push_back({"v" + std::to_string(i), labels[i], {}});
      }
      std::vector<Slot> slots;
      for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
          if (i == j) continue;
          for (LabelId el : g.edge_labels()) {
            const LabelInfo& info = g.label(el);
            if (info.src_label == labels[i] && info.tgt_label == labels[j]) slots.push_back({i, j, el});
          }
        }
      }
      if (slots.size() > 24) throw Error(ErrorCode::kSizeLimit, "too many edge slots for GLogue enumeration");
      uint64_t subsets = uint64_t{1} << slots.size();
      for (uint64_t s = 0; s < subsets; ++s) {
        if (size > 1 && s == 0) continue;
        PatternGraph p = base;
        for (size_t b = 0; b < slots.size(); ++b) {
          if (s >> b & 1) {
            p.edges.push_back({"e" + std::to_string(p.edges.size()), slots[b].label, slots[b].src, slots[b].tgt,
                               false, {}});
          }
        }
        if (!p.Connected()) continue;
        PatternKey key = CanonicalKey(p);
        if (patterns.count(key) || out.counts_.count(key)) continue;
        uint64_t count = CountMatches(g, p);
        patterns.emplace(key, p);
        if (count > 0) out.counts_[key] = count;
      }
    });
  }
  for (const auto& [key, p] : patterns) {
    auto it = out.counts_.find(key);
    if (it == out.counts_.end() || p.n() < 2) continue;
    for (size_t u = 0; u < p.n(); ++u) {
      VertexMask rest = p.FullMask() & ~(1u << u);
      if (!p.Connected(rest)) continue;
      PatternKey left = CanonicalKey(p.Induced(rest));
      auto lc = out.counts_.find(left);
      if (lc == out.counts_.end() || lc->second == 0) continue;
      out.extensions_[{key, left}] = static_cast<double>(it->second) / static_cast<double>(lc->second);
    }
  }
  out.build_seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::optional<uint64_t> GLogue::Count(const PatternKey& key) const {
  auto it = counts_.find(key);
  if (it == counts_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> GLogue::ExtensionFactor(const PatternKey& parent, const PatternKey& left) const {
  auto it = extensions_.find({parent, left});
  if (it == extensions_.end()) return std::nullopt;
  return it->second;
}

bool GLogue::InScope(const PatternGraph& p) const {
  if (static_cast<int>(p.n()) > k_ || p.n() == 0) return false;
  std::set<std::tuple<int, int, LabelId>> seen;
  for (const auto& e : p.edges) {
    if (e.either) return false;
    if (!seen.insert({e.src, e.tgt, e.label}).second) return false;
  }
  return true;
}

std::string GLogue::ToJson() const {
  nlohmann::ordered_json root;
  root["k"] = k_;
  nlohmann::ordered_json pats = nlohmann::ordered_json::array();
  for (const auto& [key, count] : counts_) pats.push_back({{"key", key}, {"count", count}});
  root["patterns"] = pats;
  nlohmann::ordered_json exts = nlohmann::ordered_json::array();
  for (const auto& [edge, factor] : extensions_) {
    exts.push_back({{"parent", edge.first}, {"left", edge.second}, {"factor", factor}});
  }
  root["extensions"] = exts;
  return root.dump(2);
}

GLogue GLogue::FromJson(const std::string& text) {
  GLogue out;
  try {
    auto root = nlohmann::json::parse(text);
    out.k_ = root.at("k").get<int>();
    for (const auto& p : root.at("patterns")) out.counts_[p.at("key").get<std::string>()] = p.at("count").get<uint64_t>();
    for (const auto& e : root.at("extensions")) {
      out.extensions_[{e.at("parent").get<std::string>(), e.at("left").get<std::string>()}] =
          e.at("factor").get<double>();
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad GLogue JSON: ") + ex.what());
  }
  return out;
}

double CardinalityEstimator::Selectivity(LabelId label, const std::vector<ElementPredicate>& constraints) {
  if (constraints.empty()) return 1.0;
  const Relation& rel = *g_.label(label).relation;
  if (rel.size() == 0) return 0.0;
  std::string key;
  for (const auto& c : constraints) key += ElementPredicateText(rel, "x", c) + ";";
  auto it = selectivity_memo_.find({label, key});
  if (it != selectivity_memo_.end()) return it->second;
  size_t hits = 0;
  for (RowId r = 0; r < rel.size(); ++r) {
    if (EvalElementPredicates(rel, r, constraints)) ++hits;
  }
  double s = static_cast<double>(hits) / static_cast<double>(rel.size());
  selectivity_memo_[{label, key}] = s;
  return s;
}

double CardinalityEstimator::Estimate(const PatternGraph& p) {
  double est = EstimateBase(p);
  for (const auto& v : p.vertices) est *= Selectivity(v.label, v.constraints);
  for (const auto& e : p.edges) est *= Selectivity(e.label, e.constraints);
  return est;
}

double CardinalityEstimator::EstimateBase(const PatternGraph& p) {
  std::vector<size_t> either;
  for (size_t i = 0; i < p.m(); ++i) {
    if (p.edges[i].either) either.push_back(i);
  }
  if (either.empty()) return EstimateDirected(p.WithoutConstraints());
  PatternKey key = "either:" + CanonicalKey(p);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  double total = 0;
  for (uint64_t bits = 0; bits < (uint64_t{1} << either.size()); ++bits) {
    PatternGraph q = p.WithoutConstraints();
    bool consistent = true;
    for (size_t i = 0; i < either.size(); ++i) {
      PatternEdge& e = q.edges[either[i]];
      e.either = false;
      if (bits >> i & 1) std::swap(e.src, e.tgt);
      const LabelInfo& info = g_.label(e.label);
      if (q.vertices[e.src].label != info.src_label || q.vertices[e.tgt].label != info.tgt_label) consistent = false;
    }
    if (consistent) total += EstimateDirected(q);
  }
  memo_[key] = total;
  return total;
}

double CardinalityEstimator::EstimateDirected(const PatternGraph& p) {
  if (p.n() == 1 && p.m() == 0) return static_cast<double>(g_.LabelSize(p.vertices[0].label));
  PatternKey key = CanonicalKey(p);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  double result = 0;
  if (glogue_.InScope(p)) {
    result = static_cast<double>(glogue_.Count(key).value_or(0));
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (size_t u = 0; u < p.n(); ++u) {
      VertexMask rest = p.FullMask() & ~(1u << u);
      if (!p.Connected(rest)) continue;
      double f = ExtensionFactor(p, static_cast<int>(u));
      double c = EstimateDirected(p.Induced(rest)) * f;
      best = std::min(best, c);
    }
    result = std::isinf(best) ? 0.0 : best;
  }
  memo_[key] = result;
  return result;
}

double CardinalityEstimator::ExtensionFactor(const PatternGraph& p, int u) {
  VertexMask leaves = p.Neighbors(u) & ~(1u << u);
  VertexMask with_u = leaves | (1u << u);
  PatternGraph q = p.Induced(with_u);
  PatternGraph ql = p.Induced(leaves);
  if (glogue_.InScope(q)) {
    double cq = static_cast<double>(glogue_.Count(CanonicalKey(q)).value_or(0));
    double cl = 1;
    bool components_ok = true;
    for (VertexMask comp : Components(ql, ql.FullMask())) {
      PatternGraph c = ql.Induced(comp);
      if (!glogue_.InScope(c)) {
        components_ok = false;
        break;
      }
      cl *= c.n() == 1 ? static_cast<double>(g_.LabelSize(c.vertices[0].label))
                       : static_cast<double>(glogue_.Count(CanonicalKey(c)).value_or(0));
    }
    if (components_ok) return cl == 0 ? 0.0 : cq / cl;
  }
  double f = 1;
  for (const auto& e : p.edges) {
    if (e.src != u && e.tgt != u) continue;
    int leaf = e.src == u ? e.tgt : e.src;
    if (!(leaves >> leaf & 1)) continue;
    Direction d = e.either ? Direction::kBoth : (e.src == leaf ? Direction::kOut : Direction::kIn);
    f *= g_.AverageDegree(p.vertices[leaf].label, e.label, d);
  }
  return f;
}

}  // namespace spjm
