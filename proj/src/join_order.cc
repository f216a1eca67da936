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

#include "spjm/join_order.h"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <functional>
#include <numeric>

#include "spjm/error.h"

namespace spjm {

namespace {

bool Has(uint64_t mask, int i) { return (mask >> i & 1) != 0; }

bool Linked(const JoinGraph& g, uint64_t a, uint64_t b) {
  for (const auto& c : g.conditions) {
    if ((Has(a, c.a) && Has(b, c.b)) || (Has(a, c.b) && Has(b, c.a))) return true;
  }
  return false;
}

bool Connected(const JoinGraph& g, uint64_t mask) {
  if (mask == 0) return false;
  uint64_t seen = mask & (~mask + 1);
  while (true) {
    uint64_t grow = seen;
    for (const auto& c : g.conditions) {
      if (Has(mask, c.a) && Has(mask, c.b)) {
        if (Has(seen, c.a)) grow |= uint64_t{1} << c.b;
        if (Has(seen, c.b)) grow |= uint64_t{1} << c.a;
      }
    }
    if (grow == seen) return seen == mask;
    seen = grow;
  }
}

std::vector<int> CrossConditions(const JoinGraph& g, uint64_t a, uint64_t b) {
  std::vector<int> out;
  for (size_t i = 0; i < g.conditions.size(); ++i) {
    const auto& c = g.conditions[i];
    if ((Has(a, c.a) && Has(b, c.b)) || (Has(a, c.b) && Has(b, c.a))) out.push_back(static_cast<int>(i));
  }
  return out;
}

// Lower alias rank first when rows tie.
bool LeftFirst(const JoinGraph& g, uint64_t a, uint64_t b, const std::vector<int>& rank) {
  double ra = EstimateJoinRows(g, a);
  double rb = EstimateJoinRows(g, b);
  if (ra != rb) return ra < rb;
  auto min_rank = [&](uint64_t m) {
    int best = std::numeric_limits<int>::max();
    for (size_t i = 0; i < rank.size(); ++i) {
      if (Has(m, static_cast<int>(i))) best = std::min(best, rank[i]);
    }
    return best;
  };
  return min_rank(a) < min_rank(b);
}

class Builder {
 public:
  Builder(const JoinGraph& g, const std::vector<int>& rank) : g_(g), rank_(rank) {}

  int Leaf(int t) {
    JoinTreeNode n;
    n.table = t;
    n.tables = uint64_t{1} << t;
    n.rows = g_.rows[t];
    tree_.nodes.push_back(n);
    return static_cast<int>(tree_.nodes.size()) - 1;
  }

  int Join(int l, int r) {
    if (!LeftFirst(g_, tree_.nodes[l].tables, tree_.nodes[r].tables, rank_)) std::swap(l, r);
    JoinTreeNode n;
    n.left = l;
    n.right = r;
    n.tables = tree_.nodes[l].tables | tree_.nodes[r].tables;
    n.conditions = CrossConditions(g_, tree_.nodes[l].tables, tree_.nodes[r].tables);
    n.rows = EstimateJoinRows(g_, n.tables);
    n.cost = tree_.nodes[l].cost + tree_.nodes[r].cost + n.rows;
    tree_.nodes.push_back(n);
    return static_cast<int>(tree_.nodes.size()) - 1;
  }

  JoinTree Finish(int root) {
    tree_.root = root;
    return std::move(tree_);
  }

 private:
  const JoinGraph& g_;
  const std::vector<int>& rank_;
  JoinTree tree_;
};

// Tables visited in alias order; submask enumeration follows that order.
std::vector<int> AliasOrder(const JoinGraph& g) {
  std::vector<int> order(g.aliases.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.aliases[a] < g.aliases[b]; });
  return order;
}

JoinTree SolveDp(const JoinGraph& g, const std::vector<int>& rank) {
  size_t n = g.aliases.size();
  uint64_t full = (uint64_t{1} << n) - 1;
  // Work in alias-rank space so mask order equals alias order.
  std::vector<int> by_rank(n);
  for (size_t i = 0; i < n; ++i) by_rank[rank[i]] = static_cast<int>(i);
  auto to_tables = [&](uint64_t rmask) {
    uint64_t m = 0;
    for (size_t r = 0; r < n; ++r) {
      if (Has(rmask, static_cast<int>(r))) m |= uint64_t{1} << by_rank[r];
    }
    return m;
  };
  std::vector<double> cost(full + 1, std::numeric_limits<double>::infinity());
  std::vector<uint64_t> split(full + 1, 0);
  std::vector<char> connected(full + 1, 0);
  for (uint64_t m = 1; m <= full; ++m) {
    uint64_t tables = to_tables(m);
    if (!Connected(g, tables)) continue;
    connected[m] = 1;
    if (std::popcount(m) == 1) {
      cost[m] = 0;
      continue;
    }
    double rows = EstimateJoinRows(g, tables);
    uint64_t low = m & (~m + 1);
    // Increasing submasks containing the lowest rank.
    for (uint64_t rest = 0;; rest = (rest - (m ^ low)) & (m ^ low)) {
      uint64_t l = low | rest;
      uint64_t r = m ^ l;
      if (r != 0 && connected[l] && connected[r] && Linked(g, to_tables(l), to_tables(r))) {
        double c = cost[l] + cost[r] + rows;
        if (c < cost[m]) {
          cost[m] = c;
          split[m] = l;
        }
      }
      if (rest == (m ^ low)) break;
    }
  }
  if (!connected[full]) throw Error(ErrorCode::kCrossProductRequired, "join graph is disconnected");
  Builder b(g, rank);
  std::function<int(uint64_t)> build = [&](uint64_t m) -> int {
    if (std::popcount(m) == 1) return b.Leaf(by_rank[std::countr_zero(m)]);
    int l = build(split[m]);
    int r = build(m ^ split[m]);
    return b.Join(l, r);
  };
  return b.Finish(build(full));
}

JoinTree SolveGreedy(const JoinGraph& g, const std::vector<int>& rank) {
  Builder b(g, rank);
  std::vector<int> comps;
  std::vector<uint64_t> masks;
  for (int t : AliasOrder(g)) {
    comps.push_back(b.Leaf(t));
    masks.push_back(uint64_t{1} << t);
  }
  while (comps.size() > 1) {
    size_t bi = 0;
    size_t bj = 0;
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < comps.size(); ++i) {
      for (size_t j = i + 1; j < comps.size(); ++j) {
        if (!Linked(g, masks[i], masks[j])) continue;
        double rows = EstimateJoinRows(g, masks[i] | masks[j]);
        if (rows < best) {
          best = rows;
          bi = i;
          bj = j;
        }
      }
    }
    if (std::isinf(best)) throw Error(ErrorCode::kCrossProductRequired, "join graph is disconnected");
    int joined = b.Join(comps[bi], comps[bj]);
    comps[bi] = joined;
    masks[bi] |= masks[bj];
    comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(bj));
    masks.erase(masks.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return b.Finish(comps[0]);
}

double Exhaustive(const JoinGraph& g, uint64_t m) {
  if (std::popcount(m) == 1) return 0;
  double best = std::numeric_limits<double>::infinity();
  for (uint64_t l = (m - 1) & m; l; l = (l - 1) & m) {
    uint64_t r = m ^ l;
    if (!Connected(g, l) || !Connected(g, r) || !Linked(g, l, r)) continue;
    best = std::min(best, Exhaustive(g, l) + Exhaustive(g, r) + EstimateJoinRows(g, m));
  }
  return best;
}

}  // namespace

double EstimateJoinRows(const JoinGraph& g, uint64_t tables) {
  double rows = 1;
  for (size_t i = 0; i < g.rows.size(); ++i) {
    if (Has(tables, static_cast<int>(i))) rows *= g.rows[i];
  }
  for (const auto& c : g.conditions) {
    if (Has(tables, c.a) && Has(tables, c.b)) rows /= std::max({c.ndv_a, c.ndv_b, 1.0});
  }
  return rows;
}

JoinTree OptimizeJoinOrder(const JoinGraph& g, int dp_limit) {
  size_t n = g.aliases.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "empty join graph");
  if (n > 63) throw Error(ErrorCode::kSizeLimit, "too many tables to join");
  std::vector<int> order = AliasOrder(g);
  std::vector<int> rank(n);
  for (size_t r = 0; r < n; ++r) rank[order[r]] = static_cast<int>(r);
  if (static_cast<int>(n) <= dp_limit) return SolveDp(g, rank);
  return SolveGreedy(g, rank);
}

double ExhaustiveJoinCost(const JoinGraph& g) {
  uint64_t full = (uint64_t{1} << g.aliases.size()) - 1;
  if (!Connected(g, full)) throw Error(ErrorCode::kCrossProductRequired, "join graph is disconnected");
  return Exhaustive(g, full);
}

}  // namespace spjm
