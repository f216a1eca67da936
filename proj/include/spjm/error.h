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

#ifndef SPJM_ERROR_H_
#define SPJM_ERROR_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace spjm {

enum class ErrorCode {
  kMissingFile,
  kHeaderMismatch,
  kTypeError,
  kUnknownRelation,
  kDuplicateName,
  kRowOutOfRange,
  kDanglingEdge,
  kAmbiguousKey,
  kUnknownLabel,
  kUnknownVertex,
  kUnknownEdge,
  kParseError,
  kUnknownGraph,
  kUnknownAttribute,
  kUnknownAlias,
  kDisconnectedPattern,
  kTypeMismatch,
  kUnsupported,
  kCrossProductRequired,
  kSizeLimit,
  kSchemaMismatch,
  kTimeout,
  kInvalidArgument,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Thrown by the parser. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& message, std::vector<std::string> expected);

  int line() const { return line_; }
  int col() const { return col_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int col_;
  std::vector<std::string> expected_;
};

}  // namespace spjm

#endif  // SPJM_ERROR_H_
