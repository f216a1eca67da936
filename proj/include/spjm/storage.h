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

#ifndef SPJM_STORAGE_H_
#define SPJM_STORAGE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spjm/value.h"

namespace spjm {

using RowId = uint32_t;

struct Attribute {
  std::string name;
  AttrType type;
};

class Schema {
 public:
  Schema() = default;
  Schema(std::string name, std::vector<Attribute> attrs, std::optional<std::string> primary_key = {});

  const std::string& name() const { return name_; }
  const std::vector<Attribute>& attributes() const { return attrs_; }
  size_t size() const { return attrs_.size(); }
  const Attribute& attribute(size_t i) const { return attrs_[i]; }
  const std::optional<std::string>& primary_key() const { return primary_key_; }

  std::optional<size_t> IndexOf(const std::string& attr) const;

  bool operator==(const Schema& other) const;

 private:
  std::string name_;
  std::vector<Attribute> attrs_;
  std::optional<std::string> primary_key_;
};

using Tuple = std::vector<Value>;

// Column-major immutable table. Row i has rid i.
class Relation {
 public:
  using Column = std::variant<std::vector<int64_t>, std::vector<std::string>>;

  // Throws TypeError if a value does not fit its column type.
  Relation(Schema schema, const std::vector<Tuple>& rows);
  // `rows` sets the size of a relation with no columns.
  Relation(Schema schema, std::vector<Column> columns, size_t rows = 0);

  const Schema& schema() const { return schema_; }
  const std::string& name() const { return schema_.name(); }
  size_t size() const { return size_; }

  const Column& column(size_t i) const { return columns_[i]; }
  const std::vector<int64_t>& ints(size_t i) const { return std::get<0>(columns_[i]); }
  const std::vector<std::string>& strings(size_t i) const { return std::get<1>(columns_[i]); }

  Value value(RowId rid, size_t attr) const;
  Tuple FetchRow(RowId rid) const;

  bool operator==(const Relation& other) const;

 private:
  Schema schema_;
  std::vector<Column> columns_;
  size_t size_ = 0;
};

using RelationPtr = std::shared_ptr<const Relation>;

// Parses a whole CSV file per the fixed dialect (comma, double quotes, header row).
std::vector<std::vector<std::string>> ReadCsvFile(const std::string& path);
std::vector<std::vector<std::string>> ParseCsv(const std::string& text);
std::string CsvEscape(const std::string& cell);

// Reads a CSV into a relation without registering it.
RelationPtr ReadRelationCsv(const std::string& path, const Schema& schema);
void WriteRelationCsv(const Relation& relation, const std::string& path);

class GraphView;

class Catalog {
 public:
  // All-or-nothing: on error nothing is registered.
  RelationPtr LoadCsv(const std::string& name, const std::string& path, const Schema& schema);
  RelationPtr AddRelation(RelationPtr relation);

  RelationPtr GetRelation(const std::string& name) const;
  bool HasRelation(const std::string& name) const { return relations_.count(name) > 0; }
  std::vector<std::string> RelationNames() const;

  void AddGraph(std::shared_ptr<const GraphView> graph);
  std::shared_ptr<const GraphView> GetGraph(const std::string& name) const;
  bool HasGraph(const std::string& name) const { return graphs_.count(name) > 0; }
  std::vector<std::string> GraphNames() const;

 private:
  std::map<std::string, RelationPtr> relations_;
  std::map<std::string, std::shared_ptr<const GraphView>> graphs_;
};

Tuple FetchRow(const Relation& relation, RowId rid);

}  // namespace spjm

#endif  // SPJM_STORAGE_H_
