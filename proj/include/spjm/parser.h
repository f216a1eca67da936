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

#ifndef SPJM_PARSER_H_
#define SPJM_PARSER_H_

#include <string>
#include <vector>

#include "spjm/ast.h"

namespace spjm {

// Parses one statement; a trailing ';' is allowed. Throws ParseError.
ast::Statement Parse(const std::string& text);

// Splits a script on top-level ';' and parses each statement.
std::vector<ast::Statement> ParseScript(const std::string& text);

std::string PrettyPrint(const ast::Statement& stmt);
std::string PrettyPrint(const ast::SelectStmt& stmt);
std::string PrettyPrint(const ast::CreateGraphStmt& stmt);

}  // namespace spjm

#endif  // SPJM_PARSER_H_
