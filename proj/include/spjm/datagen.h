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

#ifndef SPJM_DATAGEN_H_
#define SPJM_DATAGEN_H_

#include <cstdint>
#include <random>
#include <string>

namespace spjm {

// Social micro-schema: Person, Message, Place, Knows, Likes.
struct GenConfig {
  int persons = 1000;
  int messages = -1;  // default: 2 per person
  int places = 50;
  double knows_per_person = 10;  // average undirected friendships per person
  double likes_per_person = 5;
  double skew = 2.0;               // > 1 concentrates endpoints on low ids
  double triangle_closing = 0.3;   // probability a new friendship closes a wedge
  uint64_t seed = 42;
};

struct GenStats {
  size_t persons = 0;
  size_t messages = 0;
  size_t places = 0;
  size_t knows = 0;
  size_t likes = 0;
};

// Writes person.csv, message.csv, place.csv, knows.csv, likes.csv,
// social.ddl and manifest.txt into `dir` (created if missing). The output is
// a pure function of the config. Knows rows are stored with pid1 < pid2.
GenStats GenerateSocial(const GenConfig& config, const std::string& dir);

// Uniform helpers on raw engine output, identical on every standard library.
uint64_t UniformBelow(std::mt19937_64& rng, uint64_t bound);
double UniformUnit(std::mt19937_64& rng);

}  // namespace spjm

#endif  // SPJM_DATAGEN_H_
