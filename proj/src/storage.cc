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

#include "spjm/storage.h"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "spjm/error.h"
#include "spjm/graph_view.h"

namespace spjm {

Schema::Schema(std::string name, std::vector<Attribute> attrs, std::optional<std::string> primary_key)
    : name_(std::move(name)), attrs_(std::move(attrs)), primary_key_(std::move(primary_key)) {
  std::set<std::string> seen;
  for (const auto& a : attrs_) {
    if (!seen.insert(a.name).second) {
      throw Error(ErrorCode::kDuplicateName, "attribute '" + a.name + "' repeated in schema " + name_);
    }
  }
  if (primary_key_ && !IndexOf(*primary_key_)) {
    throw Error(ErrorCode::kUnknownAttribute, "primary key '" + *primary_key_ + "' not in schema " + name_);
  }
}

std::optional<size_t> Schema::IndexOf(const std::string& attr) const {
  for (size_t i = 0; i < attrs_.size(); ++i) {
    if (attrs_[i].name == attr) return i;
  }
  return std::nullopt;
}

bool Schema::operator==(const Schema& other) const {
  if (name_ != other.name_ || primary_key_ != other.primary_key_ || attrs_.size() != other.attrs_.size()) {
    return false;
  }
  for (size_t i = 0; i < attrs_.size(); ++i) {
    if (attrs_[i].name != other.attrs_[i].name || attrs_[i].type != other.attrs_[i].type) return false;
  }
  return true;
}

Relation::Relation(Schema schema, const std::vector<Tuple>& rows) : schema_(std::move(schema)), size_(rows.size()) {
  for (size_t c = 0; c < schema_.size(); ++c) {
    if (schema_.attribute(c).type == AttrType::kInt64) {
      std::vector<int64_t> col;
      col.reserve(rows.size());
      for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != schema_.size()) {
          throw Error(ErrorCode::kTypeError, "row " + std::to_string(r) + " has wrong arity for " + schema_.name());
        }
        if (!IsInt(rows[r][c])) {
          throw Error(ErrorCode::kTypeError, "row " + std::to_string(r) + ", column " + schema_.attribute(c).name);
        }
        col.push_back(std::get<int64_t>(rows[r][c]));
      }
      columns_.emplace_back(std::move(col));
    } else {
      std::vector<std::string> col;
      col.reserve(rows.size());
      for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != schema_.size()) {
          throw Error(ErrorCode::kTypeError, "row " + std::to_string(r) + " has wrong arity for " + schema_.name());
        }
        if (IsInt(rows[r][c])) {
          throw Error(ErrorCode::kTypeError, "row " + std::to_string(r) + ", column " + schema_.attribute(c).name);
        }
        col.push_back(std::get<std::string>(rows[r][c]));
      }
      columns_.emplace_back(std::move(col));
    }
  }
}

Relation::Relation(Schema schema, std::vector<Column> columns, size_t rows)
    : schema_(std::move(schema)), columns_(std::move(columns)), size_(rows) {
  if (columns_.size() != schema_.size()) {
    throw Error(ErrorCode::kTypeError, "column count does not match schema " + schema_.name());
  }
  for (size_t c = 0; c < columns_.size(); ++c) {
    bool is_int = columns_[c].index() == 0;
    if (is_int != (schema_.attribute(c).type == AttrType::kInt64)) {
      throw Error(ErrorCode::kTypeError, "column " + schema_.attribute(c).name + " has wrong type");
    }
    size_t n = std::visit([](const auto& v) { return v.size(); }, columns_[c]);
    if (c == 0) size_ = n;
    if (n != size_) throw Error(ErrorCode::kTypeError, "ragged columns in " + schema_.name());
  }
}

Value Relation::value(RowId rid, size_t attr) const {
  const Column& col = columns_[attr];
  if (col.index() == 0) return std::get<0>(col)[rid];
  return std::get<1>(col)[rid];
}

Tuple Relation::FetchRow(RowId rid) const {
  if (rid >= size_) {
    throw Error(ErrorCode::kRowOutOfRange,
                "rid " + std::to_string(rid) + " out of range for " + name() + " (size " + std::to_string(size_) + ")");
  }
  Tuple t;
  t.reserve(columns_.size());
  for (size_t c = 0; c < columns_.size(); ++c) t.push_back(value(rid, c));
  return t;
}

bool Relation::operator==(const Relation& other) const {
  return schema_ == other.schema_ && size_ == other.size_ && columns_ == other.columns_;
}

Tuple FetchRow(const Relation& relation, RowId rid) { return relation.FetchRow(rid); }

std::vector<std::vector<std::string>> ParseCsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool in_quotes = false;
  bool cell_started = false;
  size_t i = 0;
  auto end_row = [&]() {
    row.push_back(std::move(cell));
    cell.clear();
    rows.push_back(std::move(row));
    row.clear();
    cell_started = false;
  };
  while (i < text.size()) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          i += 2;
          continue;
        }
        in_quotes = false;
      } else {
        cell += c;
      }
      ++i;
      continue;
    }
    if (c == '"' && cell.empty()) {
      in_quotes = true;
      cell_started = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
      cell_started = true;
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      end_row();
      ++i;
    } else if (c == '\n') {
      end_row();
    } else {
      cell += c;
      cell_started = true;
    }
    ++i;
  }
  if (in_quotes) throw Error(ErrorCode::kTypeError, "unterminated quoted CSV cell");
  if (cell_started || !row.empty()) end_row();
  return rows;
}

std::vector<std::vector<std::string>> ReadCsvFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingFile, path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseCsv(ss.str());
}

std::string CsvEscape(const std::string& cell) {
  bool needs = cell.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

bool IsIsoDate(const std::string& s) {
  if (s.size() < 10) return false;
  for (int i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  if (s[4] != '-' || s[7] != '-') return false;
  return s.size() == 10 || s[10] == 'T' || s[10] == ' ';
}

}  // namespace

RelationPtr ReadRelationCsv(const std::string& path, const Schema& schema) {
  auto rows = ReadCsvFile(path);
  if (rows.empty()) throw Error(ErrorCode::kHeaderMismatch, path + ": missing header row");
  const auto& header = rows[0];
  bool header_ok = header.size() == schema.size();
  for (size_t i = 0; header_ok && i < header.size(); ++i) header_ok = header[i] == schema.attribute(i).name;
  if (!header_ok) {
    std::string got;
    for (size_t i = 0; i < header.size(); ++i) got += (i ? "," : "") + header[i];
    throw Error(ErrorCode::kHeaderMismatch, path + ": header (" + got + ") does not match schema " + schema.name());
  }
  std::vector<Relation::Column> cols;
  for (const auto& a : schema.attributes()) {
    if (a.type == AttrType::kInt64) {
      cols.emplace_back(std::vector<int64_t>());
    } else {
      cols.emplace_back(std::vector<std::string>());
    }
  }
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    size_t data_row = r - 1;
    if (row.size() != schema.size()) {
      throw Error(ErrorCode::kTypeError, path + ": row " + std::to_string(data_row) + " has " +
                                             std::to_string(row.size()) + " cells, expected " +
                                             std::to_string(schema.size()));
    }
    for (size_t c = 0; c < row.size(); ++c) {
      const std::string& cell = row[c];
      const Attribute& attr = schema.attribute(c);
      auto type_error = [&]() {
        return Error(ErrorCode::kTypeError, path + ": row " + std::to_string(data_row) + ", column " + attr.name +
                                                ": cannot parse '" + cell + "' as " + AttrTypeName(attr.type));
      };
      if (attr.type == AttrType::kInt64) {
        int64_t v = 0;
        auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size()) throw type_error();
        std::get<0>(cols[c]).push_back(v);
      } else {
        if (attr.type == AttrType::kDate && !IsIsoDate(cell)) throw type_error();
        std::get<1>(cols[c]).push_back(cell);
      }
    }
  }
  return std::make_shared<Relation>(schema, std::move(cols));
}

void WriteRelationCsv(const Relation& relation, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kMissingFile, "cannot write " + path);
  const Schema& s = relation.schema();
  for (size_t c = 0; c < s.size(); ++c) out << (c ? "," : "") << CsvEscape(s.attribute(c).name);
  out << "\n";
  for (RowId r = 0; r < relation.size(); ++r) {
    for (size_t c = 0; c < s.size(); ++c) out << (c ? "," : "") << CsvEscape(ValueToString(relation.value(r, c)));
    out << "\n";
  }
}

RelationPtr Catalog::LoadCsv(const std::string& name, const std::string& path, const Schema& schema) {
  if (relations_.count(name)) throw Error(ErrorCode::kDuplicateName, "relation " + name + " already registered");
  Schema named(name, schema.attributes(), schema.primary_key());
  return AddRelation(ReadRelationCsv(path, named));
}

RelationPtr Catalog::AddRelation(RelationPtr relation) {
  const std::string& name = relation->name();
  if (relations_.count(name)) throw Error(ErrorCode::kDuplicateName, "relation " + name + " already registered");
  relations_[name] = relation;
  return relation;
}

RelationPtr Catalog::GetRelation(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw Error(ErrorCode::kUnknownRelation, name);
  return it->second;
}

std::vector<std::string> Catalog::RelationNames() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : relations_) out.push_back(k);
  return out;
}

void Catalog::AddGraph(std::shared_ptr<const GraphView> graph) {
  const std::string& name = graph->name();
  if (graphs_.count(name)) throw Error(ErrorCode::kDuplicateName, "graph " + name + " already registered");
  graphs_[name] = std::move(graph);
}

std::shared_ptr<const GraphView> Catalog::GetGraph(const std::string& name) const {
  auto it = graphs_.find(name);
  if (it == graphs_.end()) throw Error(ErrorCode::kUnknownGraph, name);
  return it->second;
}

std::vector<std::string> Catalog::GraphNames() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : graphs_) out.push_back(k);
  return out;
}

}  // namespace spjm
