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
#include <map>
#include <tuple>
#include <vector>

#include "spjm/glogue.h"

namespace spjm {

namespace {

// Colour refinement followed by individualization of the first non-singleton
// class; the smallest encoding over all discrete leaves is the canonical form.
class Canonizer {
 public:
  explicit Canonizer(const PatternGraph& p) : p_(p), n_(p.n()) {}

  PatternKey Run() {
    std::vector<int> colors(n_);
    for (size_t v = 0; v < n_; ++v) colors[v] = static_cast<int>(p_.vertices[v].label);
    Refine(colors);
    Search(colors);
    std::string key = std::to_string(n_) + "|";
    for (size_t i = 0; i < best_.size(); ++i) key += (i ? "," : "") + std::to_string(best_[i]);
    return key;
  }

 private:
  using Sig = std::pair<int, std::vector<std::tuple<uint32_t, int, int>>>;

  void Refine(std::vector<int>& colors) const {
    size_t classes = 0;
    while (true) {
      std::vector<Sig> sigs(n_);
      for (size_t v = 0; v < n_; ++v) sigs[v].first = colors[v];
      for (const auto& e : p_.edges) {
        int dir_out = e.either ? 2 : 0;
        int dir_in = e.either ? 2 : 1;
        sigs[e.src].second.emplace_back(e.label, dir_out, colors[e.tgt]);
        sigs[e.tgt].second.emplace_back(e.label, dir_in, colors[e.src]);
      }
      for (auto& s : sigs) std::sort(s.second.begin(), s.second.end());
      std::vector<Sig> uniq = sigs;
      std::sort(uniq.begin(), uniq.end());
      uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
      for (size_t v = 0; v < n_; ++v) {
        colors[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sigs[v]) - uniq.begin());
      }
      if (uniq.size() == classes) return;
      classes = uniq.size();
    }
  }

  void Search(const std::vector<int>& colors) {
    // First non-singleton class, smallest colour first.
    std::map<int, std::vector<int>> cls;
    for (size_t v = 0; v < n_; ++v) cls[colors[v]].push_back(static_cast<int>(v));
    const std::vector<int>* target = nullptr;
    for (const auto& [c, members] : cls) {
      if (members.size() > 1) {
        target = &members;
        break;
      }
    }
    if (!target) {
      Leaf(colors);
      return;
    }
    for (int v : *target) {
      std::vector<int> next(n_);
      for (size_t u = 0; u < n_; ++u) {
        next[u] = 2 * colors[u] + ((colors[u] == colors[v] && static_cast<int>(u) != v) ? 1 : 0);
      }
      Refine(next);
      Search(next);
    }
  }

  void Leaf(const std::vector<int>& colors) {
    // colors is a permutation: vertex -> position.
    std::vector<uint64_t> enc;
    std::vector<uint32_t> labels(n_);
    for (size_t v = 0; v < n_; ++v) labels[colors[v]] = p_.vertices[v].label;
    for (uint32_t l : labels) enc.push_back(l);
    std::vector<std::tuple<int, int, uint32_t, int>> es;
    for (const auto& e : p_.edges) {
      int a = colors[e.src];
      int b = colors[e.tgt];
      if (e.either && a > b) std::swap(a, b);
      es.emplace_back(a, b, e.label, e.either ? 1 : 0);
    }
    std::sort(es.begin(), es.end());
    enc.push_back(es.size());
    for (const auto& [a, b, l, x] : es) {
      enc.push_back(static_cast<uint64_t>(a));
      enc.push_back(static_cast<uint64_t>(b));
      enc.push_back(l);
      enc.push_back(static_cast<uint64_t>(x));
    }
    if (!have_best_ || enc < best_) {
      best_ = std::move(enc);
      have_best_ = true;
    }
  }

  const PatternGraph& p_;
  size_t n_;
  std::vector<uint64_t> best_;
  bool have_best_ = false;
};

}  // namespace

PatternKey CanonicalKey(const PatternGraph& p) { return Canonizer(p).Run(); }

}  // namespace spjm
