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

#include "spjm/error.h"

#include <utility>

#include "spjm/value.h"

namespace spjm {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingFile:
      return "MissingFile";
    case ErrorCode::kHeaderMismatch:
      return "HeaderMismatch";
    case ErrorCode::kTypeError:
      return "TypeError";
    case ErrorCode::kUnknownRelation:
      return "UnknownRelation";
    case ErrorCode::kDuplicateName:
      return "DuplicateName";
    case ErrorCode::kRowOutOfRange:
      return "RowOutOfRange";
    case ErrorCode::kDanglingEdge:
      return "DanglingEdge";
    case ErrorCode::kAmbiguousKey:
      return "AmbiguousKey";
    case ErrorCode::kUnknownLabel:
      return "UnknownLabel";
    case ErrorCode::kUnknownVertex:
      return "UnknownVertex";
    case ErrorCode::kUnknownEdge:
      return "UnknownEdge";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kUnknownGraph:
      return "UnknownGraph";
    case ErrorCode::kUnknownAttribute:
      return "UnknownAttribute";
    case ErrorCode::kUnknownAlias:
      return "UnknownAlias";
    case ErrorCode::kDisconnectedPattern:
      return "DisconnectedPattern";
    case ErrorCode::kTypeMismatch:
      return "TypeMismatch";
    case ErrorCode::kUnsupported:
      return "UnsupportedPattern";
    case ErrorCode::kCrossProductRequired:
      return "CrossProductRequired";
    case ErrorCode::kSizeLimit:
      return "SizeLimit";
    case ErrorCode::kSchemaMismatch:
      return "SchemaMismatch";
    case ErrorCode::kTimeout:
      return "Timeout";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message), code_(code) {}

ParseError::ParseError(int line, int col, const std::string& message, std::vector<std::string> expected)
    : Error(ErrorCode::kParseError,
            "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + message),
      line_(line),
      col_(col),
      expected_(std::move(expected)) {}

const char* AttrTypeName(AttrType type) {
  switch (type) {
    case AttrType::kInt64:
      return "int64";
    case AttrType::kString:
      return "string";
    case AttrType::kDate:
      return "date";
  }
  return "?";
}

std::optional<AttrType> ParseAttrType(const std::string& name) {
  if (name == "int64" || name == "int") return AttrType::kInt64;
  if (name == "string") return AttrType::kString;
  if (name == "date") return AttrType::kDate;
  return std::nullopt;
}

std::string ValueToString(const Value& v) {
  if (IsInt(v)) return std::to_string(std::get<int64_t>(v));
  return std::get<std::string>(v);
}

std::string ValueToLiteral(const Value& v) {
  if (IsInt(v)) return std::to_string(std::get<int64_t>(v));
  std::string out = "'";
  for (char c : std::get<std::string>(v)) {
    if (c == '\'') out += '\'';
    out += c;
  }
  out += '\'';
  return out;
}

const char* CmpOpSymbol(CmpOp op) {
  switch (op) {
    case CmpOp::kEq:
      return "=";
    case CmpOp::kNe:
      return "<>";
    case CmpOp::kLt:
      return "<";
    case CmpOp::kLe:
      return "<=";
    case CmpOp::kGt:
      return ">";
    case CmpOp::kGe:
      return ">=";
  }
  return "?";
}

CmpOp FlipCmp(CmpOp op) {
  switch (op) {
    case CmpOp::kLt:
      return CmpOp::kGt;
    case CmpOp::kLe:
      return CmpOp::kGe;
    case CmpOp::kGt:
      return CmpOp::kLt;
    case CmpOp::kGe:
      return CmpOp::kLe;
    default:
      return op;
  }
}

bool CompareValues(CmpOp op, const Value& a, const Value& b) {
  if (a.index() != b.index()) return false;
  if (IsInt(a)) return ApplyCmp(op, std::get<int64_t>(a), std::get<int64_t>(b));
  return ApplyCmp(op, std::get<std::string>(a), std::get<std::string>(b));
}

}  // namespace spjm
