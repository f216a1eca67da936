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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>

#include "spjm/converged.h"
#include "spjm/error.h"

namespace spjm {

const char* DecompKindName(DecompKind kind) {
  switch (kind) {
    case DecompKind::kVertex:
      return "VERTEX";
    case DecompKind::kStar:
      return "STAR";
    case DecompKind::kExtend:
      return "EXTEND";
    case DecompKind::kHashJoin:
      return "HASH_JOIN";
  }
  return "?";
}

namespace {

constexpr int kMaxVertices = 12;

bool In(VertexMask m, int v) { return (m >> v & 1) != 0; }

// Edges of induced(mask) incident to u.
EdgeMask StarEdges(const PatternGraph& p, VertexMask mask, int u) {
  EdgeMask out = 0;
  EdgeMask induced = p.InducedEdges(mask);
  for (size_t i = 0; i < p.m(); ++i) {
    const PatternEdge& e = p.edges[i];
    if ((induced >> i & 1) && (e.src == u || e.tgt == u)) out |= EdgeMask{1} << i;
  }
  return out;
}

VertexMask StarVertices(const PatternGraph& p, EdgeMask edges, int u) {
  VertexMask out = 1u << u;
  for (size_t i = 0; i < p.m(); ++i) {
    if (edges >> i & 1) out |= (1u << p.edges[i].src) | (1u << p.edges[i].tgt);
  }
  return out;
}

// Both sides proper, connected, overlapping, covering, and every induced edge inside one side.
bool LegalHashSplit(const PatternGraph& p, VertexMask mask, VertexMask l, VertexMask r) {
  if (l == mask || r == mask || (l & r) == 0 || (l | r) != mask) return false;
  if (!p.Connected(l) || !p.Connected(r)) return false;
  EdgeMask induced = p.InducedEdges(mask);
  for (size_t i = 0; i < p.m(); ++i) {
    if (!(induced >> i & 1)) continue;
    const PatternEdge& e = p.edges[i];
    bool in_l = In(l, e.src) && In(l, e.tgt);
    bool in_r = In(r, e.src) && In(r, e.tgt);
    if (!in_l && !in_r) return false;
  }
  return true;
}

// Cardinalities and join costs shared by the DP and the exhaustive enumerator.
class CostModel {
 public:
  CostModel(const PatternGraph& p, const GraphView& g, CardinalityEstimator& est, bool index)
      : p_(p), g_(g), est_(est), index_(index) {}

  double Rows(VertexMask mask) {
    auto it = rows_.find(mask);
    if (it != rows_.end()) return it->second;
    double r = est_.Estimate(p_.Induced(mask));
    rows_[mask] = r;
    return r;
  }

  double StarRows(VertexMask mask, int u) {
    EdgeMask se = StarEdges(p_, mask, u);
    return est_.Estimate(p_.Sub(StarVertices(p_, se, u), se));
  }

  double ExtendCost(VertexMask mask, int u) {
    VertexMask left = mask & ~(1u << u);
    double lrows = Rows(left);
    if (!index_) return lrows * StarRows(mask, u);
    EdgeMask se = StarEdges(p_, mask, u);
    if (std::popcount(se) == 1) {
      const PatternEdge& e = p_.edges[std::countr_zero(se)];
      int leaf = e.src == u ? e.tgt : e.src;
      LabelId ll = p_.vertices[leaf].label;
      double deg = 0;
      if (e.either) {
        deg = g_.AverageDegree(ll, e.label, Direction::kOut) + g_.AverageDegree(ll, e.label, Direction::kIn);
      } else {
        deg = g_.AverageDegree(ll, e.label, e.src == leaf ? Direction::kOut : Direction::kIn);
      }
      return lrows * deg;
    }
    double base_l = Base(left);
    if (base_l <= 0) return 0;
    return lrows * Base(mask) / base_l;
  }

  double HashCost(VertexMask l, VertexMask r) { return Rows(l) * Rows(r); }

  std::string Key(const PatternGraph& q) { return CanonicalKey(q); }

 private:
  double Base(VertexMask mask) {
    auto it = base_.find(mask);
    if (it != base_.end()) return it->second;
    double b = est_.EstimateBase(p_.Induced(mask));
    base_[mask] = b;
    return b;
  }

  const PatternGraph& p_;
  const GraphView& g_;
  CardinalityEstimator& est_;
  bool index_;
  std::map<VertexMask, double> rows_;
  std::map<VertexMask, double> base_;
};

bool CostLess(double a, double b) { return a < b && !(std::fabs(a - b) <= 1e-9 * std::max(std::fabs(a), std::fabs(b))); }
bool CostEqual(double a, double b) { return !CostLess(a, b) && !CostLess(b, a); }

struct Choice {
  bool set = false;
  DecompKind kind = DecompKind::kVertex;
  double cost = std::numeric_limits<double>::infinity();
  VertexMask left = 0;
  VertexMask right = 0;  // star vertices for kExtend
  int center = -1;
  std::string right_key;
};

void CheckSize(const PatternGraph& p) {
  if (p.n() == 0) throw Error(ErrorCode::kInvalidArgument, "empty pattern");
  if (p.n() > static_cast<size_t>(kMaxVertices)) throw Error(ErrorCode::kSizeLimit, "pattern has more than 12 vertices");
  if (!p.Connected()) throw Error(ErrorCode::kDisconnectedPattern, "pattern is not connected");
}

// Calls f(left, right) for every legal hash split of mask.
void ForEachHashSplit(const PatternGraph& p, VertexMask mask, const std::function<void(VertexMask, VertexMask)>& f) {
  for (VertexMask l = (mask - 1) & mask; l; l = (l - 1) & mask) {
    if (!p.Connected(l)) continue;
    VertexMask only_r = mask & ~l;
    for (VertexMask s = l; s; s = (s - 1) & l) {
      VertexMask r = only_r | s;
      if (LegalHashSplit(p, mask, l, r)) f(l, r);
    }
  }
}

}  // namespace

DecompositionTree SearchGraphPlan(const PatternGraph& p, const GraphView& g, CardinalityEstimator& est, bool index) {
  CheckSize(p);
  CostModel model(p, g, est, index);
  size_t n = p.n();
  VertexMask full = p.FullMask();
  std::vector<Choice> best(size_t{1} << n);
  std::vector<VertexMask> order;
  for (VertexMask m = 1; m <= full; ++m) {
    if (p.Connected(m)) order.push_back(m);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](VertexMask a, VertexMask b) { return std::popcount(a) < std::popcount(b); });

  for (VertexMask mask : order) {
    Choice& b = best[mask];
    if (std::popcount(mask) == 1) {
      b.set = true;
      b.kind = DecompKind::kVertex;
      b.cost = model.Rows(mask);
      b.center = std::countr_zero(mask);
      continue;
    }
    auto offer = [&](Choice c, const std::function<std::string()>& key) {
      if (b.set && CostLess(b.cost, c.cost)) return;
      if (b.set && CostEqual(b.cost, c.cost)) {
        int cr = std::popcount(c.right);
        int br = std::popcount(b.right);
        if (cr > br) return;
        if (cr == br) {
          c.right_key = key();
          if (c.right_key > b.right_key) return;
          if (c.right_key == b.right_key && std::make_pair(c.left, c.right) >= std::make_pair(b.left, b.right)) return;
        }
      }
      if (c.right_key.empty()) c.right_key = key();
      b = std::move(c);
    };
    for (int u = 0; u < static_cast<int>(n); ++u) {
      if (!In(mask, u)) continue;
      VertexMask left = mask & ~(1u << u);
      if (!p.Connected(left) || !best[left].set) continue;
      EdgeMask se = StarEdges(p, mask, u);
      Choice c;
      c.set = true;
      c.kind = DecompKind::kExtend;
      c.cost = best[left].cost + model.ExtendCost(mask, u);
      c.left = left;
      c.right = StarVertices(p, se, u);
      c.center = u;
      offer(std::move(c), [&] { return model.Key(p.Sub(StarVertices(p, se, u), se)); });
    }
    ForEachHashSplit(p, mask, [&](VertexMask l, VertexMask r) {
      if (!best[l].set || !best[r].set) return;
      Choice c;
      c.set = true;
      c.kind = DecompKind::kHashJoin;
      c.cost = best[l].cost + best[r].cost + model.HashCost(l, r);
      c.left = l;
      c.right = r;
      offer(std::move(c), [&] { return model.Key(p.Induced(r)); });
    });
  }

  DecompositionTree t;
  t.pattern = p;
  t.index = index;
  std::function<int(VertexMask)> build = [&](VertexMask mask) -> int {
    const Choice& c = best[mask];
    DecompNode node;
    node.kind = c.kind;
    node.vertices = mask;
    node.edges = p.InducedEdges(mask);
    node.rows = model.Rows(mask);
    node.cost = c.cost;
    if (c.kind == DecompKind::kVertex) {
      node.center = c.center;
    } else if (c.kind == DecompKind::kExtend) {
      node.left = build(c.left);
      DecompNode star;
      star.kind = DecompKind::kStar;
      star.edges = StarEdges(p, mask, c.center);
      star.vertices = StarVertices(p, star.edges, c.center);
      star.center = c.center;
      star.rows = model.StarRows(mask, c.center);
      t.nodes.push_back(star);
      node.right = static_cast<int>(t.nodes.size()) - 1;
    } else {
      node.left = build(c.left);
      node.right = build(c.right);
    }
    t.nodes.push_back(node);
    return static_cast<int>(t.nodes.size()) - 1;
  };
  t.root = build(full);
  return t;
}

namespace {

// Every tree's cost for `mask`, no memoization.
std::vector<double> AllCosts(const PatternGraph& p, VertexMask mask, CostModel& model) {
  if (std::popcount(mask) == 1) return {model.Rows(mask)};
  std::vector<double> out;
  for (int u = 0; u < static_cast<int>(p.n()); ++u) {
    if (!In(mask, u)) continue;
    VertexMask left = mask & ~(1u << u);
    if (!p.Connected(left)) continue;
    double join = model.ExtendCost(mask, u);
    for (double c : AllCosts(p, left, model)) out.push_back(c + join);
  }
  ForEachHashSplit(p, mask, [&](VertexMask l, VertexMask r) {
    double join = model.HashCost(l, r);
    auto lc = AllCosts(p, l, model);
    auto rc = AllCosts(p, r, model);
    for (double a : lc) {
      for (double b : rc) out.push_back(a + b + join);
    }
  });
  return out;
}

size_t CountTrees(const PatternGraph& p, VertexMask mask) {
  if (std::popcount(mask) == 1) return 1;
  size_t total = 0;
  for (int u = 0; u < static_cast<int>(p.n()); ++u) {
    VertexMask left = mask & ~(1u << u);
    if (In(mask, u) && p.Connected(left)) total += CountTrees(p, left);
  }
  ForEachHashSplit(p, mask, [&](VertexMask l, VertexMask r) { total += CountTrees(p, l) * CountTrees(p, r); });
  return total;
}

}  // namespace

double ExhaustiveMinCost(const PatternGraph& p, const GraphView& g, CardinalityEstimator& est, bool index) {
  CheckSize(p);
  CostModel model(p, g, est, index);
  auto costs = AllCosts(p, p.FullMask(), model);
  return *std::min_element(costs.begin(), costs.end());
}

size_t ExhaustiveTreeCount(const PatternGraph& p) {
  CheckSize(p);
  return CountTrees(p, p.FullMask());
}

std::string ValidateDecomposition(const DecompositionTree& t) {
  const PatternGraph& p = t.pattern;
  if (t.root < 0 || t.root >= static_cast<int>(t.nodes.size())) return "missing root";
  const DecompNode& root = t.Root();
  if (root.vertices != p.FullMask() || root.edges != p.InducedEdges(p.FullMask())) return "root does not cover the pattern";
  std::function<std::string(int, bool)> check = [&](int i, bool is_right) -> std::string {
    const DecompNode& n = t.nodes[i];
    std::string at = std::string(DecompKindName(n.kind)) + " node " + std::to_string(i) + ": ";
    switch (n.kind) {
      case DecompKind::kVertex:
        if (std::popcount(n.vertices) != 1 || n.edges != 0 || n.center != std::countr_zero(n.vertices)) {
          return at + "not a single vertex";
        }
        return "";
      case DecompKind::kStar:
        if (!is_right) return at + "star is not a right child";
        return "";
      case DecompKind::kExtend:
      case DecompKind::kHashJoin:
        break;
    }
    if (n.edges != p.InducedEdges(n.vertices)) return at + "not an induced sub-pattern";
    if (!p.Connected(n.vertices)) return at + "not connected";
    if (n.left < 0 || n.right < 0) return at + "missing child";
    const DecompNode& l = t.nodes[n.left];
    const DecompNode& r = t.nodes[n.right];
    if (l.kind == DecompKind::kStar) return at + "star as left child";
    if ((l.vertices | r.vertices) != n.vertices || (l.edges | r.edges) != n.edges) return at + "children do not cover";
    if (n.kind == DecompKind::kExtend) {
      if (r.kind != DecompKind::kStar) return at + "extension without a star";
      int u = r.center;
      if (!In(r.vertices, u) || In(l.vertices, u)) return at + "star center inside the sibling";
      if (l.vertices != (n.vertices & ~(1u << u))) return at + "sibling is not the pattern without the center";
      if ((r.vertices & ~(1u << u) & ~l.vertices) != 0) return at + "star leaf outside the sibling";
      if (r.edges != StarEdges(p, n.vertices, u)) return at + "star is not complete";
      if (r.edges == 0) return at + "star without legs";
    } else {
      if (r.kind == DecompKind::kStar) return at + "star under a hash join";
      if (!LegalHashSplit(p, n.vertices, l.vertices, r.vertices)) return at + "illegal hash split";
    }
    if (auto e = check(n.left, false); !e.empty()) return e;
    return check(n.right, true);
  };
  std::string err = check(t.root, false);
  if (!err.empty()) return err;
  // The first matched pattern is a single vertex.
  int i = t.root;
  while (t.nodes[i].left >= 0) i = t.nodes[i].left;
  if (t.nodes[i].kind != DecompKind::kVertex) return "entry leaf is not a single vertex";
  return "";
}

std::string DecompositionText(const DecompositionTree& t) {
  const PatternGraph& p = t.pattern;
  auto vars = [&](VertexMask m) {
    std::string s;
    for (size_t i = 0; i < p.n(); ++i) {
      if (In(m, static_cast<int>(i))) s += (s.empty() ? "" : ",") + p.vertices[i].var;
    }
    return "{" + s + "}";
  };
  std::string out;
  std::function<void(int, int)> walk = [&](int i, int depth) {
    const DecompNode& n = t.nodes[i];
    out += std::string(depth * 2, ' ') + DecompKindName(n.kind) + " ";
    if (n.kind == DecompKind::kStar) {
      std::string legs;
      for (size_t e = 0; e < p.m(); ++e) {
        if (n.edges >> e & 1) legs += (legs.empty() ? "" : ",") + p.edges[e].var;
      }
      out += p.vertices[n.center].var + " via " + legs;
    } else {
      out += vars(n.vertices);
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "  rows~%.6g cost~%.6g\n", n.rows, n.cost);
    out += buf;
    if (n.left >= 0) walk(n.left, depth + 1);
    if (n.right >= 0) walk(n.right, depth + 1);
  };
  walk(t.root, 0);
  return out;
}

}  // namespace spjm
