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

#ifndef SPJM_VALUE_H_
#define SPJM_VALUE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace spjm {

// Dates are ISO-8601 strings and compare lexically.
enum class AttrType { kInt64, kString, kDate };

const char* AttrTypeName(AttrType type);
std::optional<AttrType> ParseAttrType(const std::string& name);

// True for the two string-backed types.
inline bool IsStringType(AttrType t) { return t != AttrType::kInt64; }

// Two types can be compared when both are integers or both are string-backed.
inline bool Comparable(AttrType a, AttrType b) { return IsStringType(a) == IsStringType(b); }

using Value = std::variant<int64_t, std::string>;

inline bool IsInt(const Value& v) { return std::holds_alternative<int64_t>(v); }

std::string ValueToString(const Value& v);

// SQL-style literal text: integers bare, strings single-quoted.
std::string ValueToLiteral(const Value& v);

enum class CmpOp { kEq, kNe, kLt, kLe, kGt, kGe };

const char* CmpOpSymbol(CmpOp op);

// Swaps operand order: a < b becomes b > a.
CmpOp FlipCmp(CmpOp op);

template <typename T>
inline bool ApplyCmp(CmpOp op, const T& a, const T& b) {
  switch (op) {
    case CmpOp::kEq:
      return a == b;
    case CmpOp::kNe:
      return !(a == b);
    case CmpOp::kLt:
      return a < b;
    case CmpOp::kLe:
      return !(b < a);
    case CmpOp::kGt:
      return b < a;
    case CmpOp::kGe:
      return !(a < b);
  }
  return false;
}

// Values of different kinds never compare true.
bool CompareValues(CmpOp op, const Value& a, const Value& b);

}  // namespace spjm

#endif  // SPJM_VALUE_H_
