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

#include "spjm/datagen.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unordered_set>
#include <vector>

#include "spjm/error.h"

namespace spjm {

uint64_t UniformBelow(std::mt19937_64& rng, uint64_t bound) {
  if (bound == 0) return 0;
  // Rejection keeps the result unbiased.
  uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % bound);
  uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

double UniformUnit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

namespace {

const char* kFirstNames[] = {"Tom",   "Jerry", "Spike", "Tyke",  "Butch", "Nibbles", "Toodles", "Quacker",
                             "Lightning", "Topsy", "Meathead", "Cuckoo", "Muscles", "Droopy", "Dripple", "Barney"};
const char* kPlaceNames[] = {"Berlin", "Paris", "Lyon",   "Porto", "Oslo",  "Turin", "Ghent",
                             "Graz",   "Split", "Tartu", "Malmo", "Basel", "Cork",  "Bergen"};

class Generator {
 public:
  explicit Generator(const GenConfig& c) : c_(c), rng_(c.seed) {}

  // Index in [0, n) biased toward 0.
  size_t Skewed(size_t n) {
    double u = UniformUnit(rng_);
    size_t i = static_cast<size_t>(static_cast<double>(n) * std::pow(u, c_.skew));
    return std::min(i, n - 1);
  }

  size_t Uniform(size_t n) { return UniformBelow(rng_, n); }
  double Unit() { return UniformUnit(rng_); }

  std::string Date() {
    int day = static_cast<int>(Uniform(365));
    static const int kDays[] = {31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int month = 0;
    while (day >= kDays[month]) day -= kDays[month++];
    char buf[32];
    std::snprintf(buf, sizeof(buf), "2024-%02d-%02d", month + 1, day + 1);
    return buf;
  }

 private:
  const GenConfig& c_;
  std::mt19937_64 rng_;
};

std::ofstream Open(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::kMissingFile, "cannot write " + p.string());
  return out;
}

uint64_t PairKey(size_t a, size_t b) { return (static_cast<uint64_t>(a) << 32) | b; }

}  // namespace

GenStats GenerateSocial(const GenConfig& c, const std::string& dir) {
  if (c.persons < 1 || c.places < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one person and one place");
  std::filesystem::path root(dir);
  std::filesystem::create_directories(root);
  Generator g(c);
  GenStats stats;
  size_t np = static_cast<size_t>(c.persons);
  size_t nm = static_cast<size_t>(c.messages >= 0 ? c.messages : 2 * c.persons);
  size_t nplace = static_cast<size_t>(c.places);

  {
    auto out = Open(root / "place.csv");
    out << "place_id,pl_name\n";
    for (size_t i = 0; i < nplace; ++i) {
      out << i + 1 << "," << kPlaceNames[i % std::size(kPlaceNames)];
      if (i >= std::size(kPlaceNames)) out << "-" << i / std::size(kPlaceNames);
      out << "\n";
    }
    stats.places = nplace;
  }
  {
    auto out = Open(root / "person.csv");
    out << "person_id,name,place_id\n";
    for (size_t i = 0; i < np; ++i) {
      out << i + 1 << "," << kFirstNames[i % std::size(kFirstNames)];
      if (i >= std::size(kFirstNames)) out << "-" << i / std::size(kFirstNames);
      out << "," << g.Skewed(nplace) + 1 << "\n";
    }
    stats.persons = np;
  }
  {
    auto out = Open(root / "message.csv");
    out << "message_id,content,date\n";
    for (size_t i = 0; i < nm; ++i) out << i + 1 << ",msg" << i + 1 << "," << g.Date() << "\n";
    stats.messages = nm;
  }
  {
    // Friendships: skewed random pairs, or a friend of a friend with the
    // triangle-closing probability.
    size_t target = static_cast<size_t>(std::llround(c.knows_per_person * static_cast<double>(np) / 2.0));
    size_t max_pairs = np * (np - 1) / 2;
    target = std::min(target, max_pairs);
    std::vector<std::vector<uint32_t>> adj(np);
    std::unordered_set<uint64_t> seen;
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    size_t attempts = 0;
    while (edges.size() < target && attempts < 50 * target + 1000) {
      ++attempts;
      size_t a = 0;
      size_t b = 0;
      if (!edges.empty() && g.Unit() < c.triangle_closing) {
        const auto& e = edges[g.Uniform(edges.size())];
        size_t mid = g.Uniform(2) ? e.first : e.second;
        a = mid == e.first ? e.second : e.first;
        if (adj[mid].size() < 2) continue;
        b = adj[mid][g.Uniform(adj[mid].size())];
      } else {
        a = g.Skewed(np);
        b = g.Uniform(np);
      }
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (!seen.insert(PairKey(a, b)).second) continue;
      edges.emplace_back(static_cast<uint32_t>(a), static_cast<uint32_t>(b));
      adj[a].push_back(static_cast<uint32_t>(b));
      adj[b].push_back(static_cast<uint32_t>(a));
    }
    std::sort(edges.begin(), edges.end());
    auto out = Open(root / "knows.csv");
    out << "knows_id,pid1,pid2,date\n";
    for (size_t i = 0; i < edges.size(); ++i) {
      out << i + 1 << "," << edges[i].first + 1 << "," << edges[i].second + 1 << "," << g.Date() << "\n";
    }
    stats.knows = edges.size();
  }
  {
    size_t target = static_cast<size_t>(std::llround(c.likes_per_person * static_cast<double>(np)));
    target = std::min(target, np * nm);
    std::unordered_set<uint64_t> seen;
    std::vector<std::pair<uint32_t, uint32_t>> likes;
    size_t attempts = 0;
    while (likes.size() < target && attempts < 50 * target + 1000) {
      ++attempts;
      size_t p = g.Skewed(np);
      size_t m = g.Skewed(nm);
      if (!seen.insert(PairKey(p, m)).second) continue;
      likes.emplace_back(static_cast<uint32_t>(p), static_cast<uint32_t>(m));
    }
    std::sort(likes.begin(), likes.end());
    auto out = Open(root / "likes.csv");
    out << "likes_id,pid,mid,date\n";
    for (size_t i = 0; i < likes.size(); ++i) {
      out << i + 1 << "," << likes[i].first + 1 << "," << likes[i].second + 1 << "," << g.Date() << "\n";
    }
    stats.likes = likes.size();
  }
  {
    auto out = Open(root / "social.ddl");
    out << "CREATE PROPERTY GRAPH social\n"
           "  VERTEX TABLES (\n"
           "    Person PROPERTIES (person_id, name, place_id),\n"
           "    Message PROPERTIES (message_id, content, date)\n"
           "  )\n"
           "  EDGE TABLES (\n"
           "    Knows SOURCE KEY (pid1) REFERENCES Person (person_id)\n"
           "          DESTINATION KEY (pid2) REFERENCES Person (person_id)\n"
           "          PROPERTIES (date),\n"
           "    Likes SOURCE KEY (pid) REFERENCES Person (person_id)\n"
           "          DESTINATION KEY (mid) REFERENCES Message (message_id)\n"
           "          PROPERTIES (date)\n"
           "  );\n";
  }
  {
    auto out = Open(root / "manifest.txt");
    out << "# generated social graph, seed " << c.seed << "\n"
        << "relation Person person.csv person_id:int64,name:string,place_id:int64 pk=person_id\n"
        << "relation Message message.csv message_id:int64,content:string,date:date pk=message_id\n"
        << "relation Place place.csv place_id:int64,pl_name:string pk=place_id\n"
        << "relation Knows knows.csv knows_id:int64,pid1:int64,pid2:int64,date:date pk=knows_id\n"
        << "relation Likes likes.csv likes_id:int64,pid:int64,mid:int64,date:date pk=likes_id\n"
        << "graph social.ddl\n";
  }
  return stats;
}

}  // namespace spjm
