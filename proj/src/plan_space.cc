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

#include "spjm/plan_space.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <set>

#include "spjm/error.h"

namespace spjm {

namespace {

// Adjacency bitmasks of the relational join graph: vertex relations first,
// then one relation per edge linked to both endpoints.
std::vector<uint32_t> JoinGraphAdjacency(const PatternGraph& p) {
  size_t n = p.n();
  std::vector<uint32_t> adj(n + p.m(), 0);
  for (size_t i = 0; i < p.m(); ++i) {
    uint32_t e = static_cast<uint32_t>(n + i);
    for (int v : {p.edges[i].src, p.edges[i].tgt}) {
      adj[e] |= 1u << v;
      adj[v] |= 1u << e;
    }
  }
  return adj;
}

bool MaskConnected(const std::vector<uint32_t>& adj, uint32_t mask) {
  if (mask == 0) return false;
  uint32_t seen = mask & (~mask + 1);
  uint32_t frontier = seen;
  while (frontier) {
    uint32_t next = 0;
    for (uint32_t f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
    next &= mask & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == mask;
}

void CheckConnected(const PatternGraph& p) {
  if (p.n() == 0) throw Error(ErrorCode::kInvalidArgument, "empty pattern");
  if (!p.Connected()) throw Error(ErrorCode::kDisconnectedPattern, "pattern is not connected");
}

}  // namespace

BigInt CountAgnostic(const PatternGraph& p) {
  CheckConnected(p);
  size_t k = p.n() + p.m();
  if (k > 18) throw Error(ErrorCode::kSizeLimit, "agnostic plan space limited to 18 relations");
  auto adj = JoinGraphAdjacency(p);
  uint32_t full = (1u << k) - 1;
  std::vector<char> connected(size_t{full} + 1, 0);
  for (uint32_t m = 1; m <= full; ++m) connected[m] = MaskConnected(adj, m);
  std::vector<BigInt> count(size_t{full} + 1);
  for (uint32_t m = 1; m <= full; ++m) {
    if (!connected[m]) continue;
    if (std::popcount(m) == 1) {
      count[m] = 1;
      continue;
    }
    // Splits with the lowest relation on the left; the mirrored order doubles them.
    uint32_t low = m & (~m + 1);
    uint32_t rest = m ^ low;
    BigInt total = 0;
    for (uint32_t s = rest;; s = (s - 1) & rest) {
      uint32_t l = low | s;
      uint32_t r = m ^ l;
      if (r && connected[l] && connected[r]) total += count[l] * count[r];
      if (s == 0) break;
    }
    count[m] = total * 2;
  }
  return count[full];
}

BigInt CountAware(const PatternGraph& p) {
  CheckConnected(p);
  size_t n = p.n();
  if (n > 10) throw Error(ErrorCode::kSizeLimit, "aware plan space limited to 10 vertices");
  VertexMask full = p.FullMask();
  std::vector<BigInt> count(size_t{full} + 1);
  for (VertexMask m = 1; m <= full; ++m) {
    if (!p.Connected(m)) continue;
    if (std::popcount(m) == 1) {
      count[m] = 1;
      continue;
    }
    for (VertexMask f = m; f; f &= f - 1) {
      VertexMask left = m & ~(f & (~f + 1));
      if (p.Connected(left)) count[m] += count[left];
    }
  }
  return count[full];
}

namespace {

// Every tree over `mask` written out as a string.
std::vector<std::string> GenerateTrees(const std::vector<uint32_t>& adj, uint32_t mask) {
  if (std::popcount(mask) == 1) return {std::to_string(std::countr_zero(mask))};
  std::vector<std::string> out;
  for (uint32_t l = (mask - 1) & mask; l; l = (l - 1) & mask) {
    uint32_t r = mask ^ l;
    if (!MaskConnected(adj, l) || !MaskConnected(adj, r)) continue;
    auto lt = GenerateTrees(adj, l);
    auto rt = GenerateTrees(adj, r);
    for (const auto& a : lt) {
      for (const auto& b : rt) out.push_back("(" + a + " " + b + ")");
    }
  }
  return out;
}

}  // namespace

BigInt CountAgnosticNaive(const PatternGraph& p) {
  CheckConnected(p);
  size_t k = p.n() + p.m();
  if (k > 9) throw Error(ErrorCode::kSizeLimit, "naive generation limited to 9 relations");
  auto adj = JoinGraphAdjacency(p);
  auto trees = GenerateTrees(adj, (1u << k) - 1);
  std::set<std::string> distinct(trees.begin(), trees.end());
  return BigInt(distinct.size());
}

BigInt CountAwareNaive(const PatternGraph& p) {
  CheckConnected(p);
  if (p.n() > 8) throw Error(ErrorCode::kSizeLimit, "naive generation limited to 8 vertices");
  std::vector<int> perm(p.n());
  std::iota(perm.begin(), perm.end(), 0);
  BigInt total = 0;
  do {
    VertexMask prefix = 0;
    bool ok = true;
    for (int v : perm) {
      prefix |= 1u << v;
      if (!p.Connected(prefix)) {
        ok = false;
        break;
      }
    }
    if (ok) ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

namespace {

PatternGraph Vertices(int n) {
  PatternGraph p;
  for (int i = 0; i < n; ++i) p.vertices.push_back({"v" + std::to_string(i), 0, {}});
  return p;
}

void AddEdge(PatternGraph& p, int s, int t) {
  PatternEdge e;
  e.var = "e" + std::to_string(p.edges.size());
  e.label = 1;
  e.src = s;
  e.tgt = t;
  p.edges.push_back(e);
}

}  // namespace

PatternGraph PathPattern(int edges) {
  PatternGraph p = Vertices(edges + 1);
  for (int i = 0; i < edges; ++i) AddEdge(p, i, i + 1);
  return p;
}

PatternGraph CyclePattern(int vertices) {
  if (vertices < 3) throw Error(ErrorCode::kInvalidArgument, "a cycle needs at least 3 vertices");
  PatternGraph p = Vertices(vertices);
  for (int i = 0; i < vertices; ++i) AddEdge(p, i, (i + 1) % vertices);
  return p;
}

PatternGraph StarPattern(int leaves) {
  PatternGraph p = Vertices(leaves + 1);
  for (int i = 1; i <= leaves; ++i) AddEdge(p, 0, i);
  return p;
}

PatternGraph CliquePattern(int vertices) {
  PatternGraph p = Vertices(vertices);
  for (int i = 0; i < vertices; ++i) {
    for (int j = i + 1; j < vertices; ++j) AddEdge(p, i, j);
  }
  return p;
}

PatternGraph FamilyPattern(const std::string& family, int size) {
  if (size < 0) throw Error(ErrorCode::kInvalidArgument, "negative size");
  if (family == "path") return PathPattern(size);
  if (family == "cycle") return CyclePattern(size);
  if (family == "star") return StarPattern(size);
  if (family == "clique") {
    if (size < 1) throw Error(ErrorCode::kInvalidArgument, "a clique needs a vertex");
    return CliquePattern(size);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown pattern family " + family + " (path, cycle, star, clique)");
}

std::vector<SpaceRow> SpaceReport(const std::string& family, int from, int to) {
  std::vector<SpaceRow> rows;
  for (int size = from; size <= to; ++size) {
    PatternGraph p = FamilyPattern(family, size);
    SpaceRow row;
    row.family = family;
    row.size = size;
    BigInt ag = 0;
    BigInt aw = 0;
    auto timed = [](auto&& f, double& micros) {
      auto t0 = std::chrono::steady_clock::now();
      f();
      micros = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
    };
    try {
      timed([&] { ag = CountAgnostic(p); }, row.micros_agnostic);
      row.agnostic = ag.str();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSizeLimit) throw;
      row.agnostic = "SizeLimit";
    }
    try {
      timed([&] { aw = CountAware(p); }, row.micros_aware);
      row.aware = aw.str();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSizeLimit) throw;
      row.aware = "SizeLimit";
    }
    if (ag > 0 && aw > 0) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.6g", static_cast<double>(ag) / static_cast<double>(aw));
      row.ratio = buf;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string SpaceReportCsv(const std::vector<SpaceRow>& rows) {
  std::string out = "family,size,agnostic_count,aware_count,ratio,micros_agnostic,micros_aware\n";
  char buf[64];
  for (const auto& r : rows) {
    out += r.family + "," + std::to_string(r.size) + "," + r.agnostic + "," + r.aware + "," + r.ratio;
    std::snprintf(buf, sizeof(buf), ",%.0f,%.0f\n", r.micros_agnostic, r.micros_aware);
    out += buf;
  }
  return out;
}

std::string SpaceReportText(const std::vector<SpaceRow>& rows) {
  std::vector<std::vector<std::string>> cells = {{"family", "size", "agnostic", "aware", "ratio", "us_agnostic", "us_aware"}};
  char buf[64];
  for (const auto& r : rows) {
    std::vector<std::string> c = {r.family, std::to_string(r.size), r.agnostic, r.aware, r.ratio};
    std::snprintf(buf, sizeof(buf), "%.0f", r.micros_agnostic);
    c.push_back(buf);
    std::snprintf(buf, sizeof(buf), "%.0f", r.micros_aware);
    c.push_back(buf);
    cells.push_back(c);
  }
  std::vector<size_t> width(cells[0].size(), 0);
  for (const auto& row : cells) {
    for (size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (const auto& row : cells) {
    for (size_t i = 0; i < row.size(); ++i) {
      out += row[i] + std::string(width[i] - row[i].size() + (i + 1 < row.size() ? 2 : 0), ' ');
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += "\n";
  }
  return out;
}

}  // namespace spjm
