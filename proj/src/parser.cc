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

#include "spjm/parser.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "spjm/error.h"

namespace spjm {

namespace {

enum class Tok {
  kIdent,
  kInt,
  kString,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kLBrace,
  kRBrace,
  kComma,
  kDot,
  kColon,
  kSemicolon,
  kStar,
  kEq,
  kNe,
  kLt,
  kLe,
  kGt,
  kGe,
  kMinus,
  kArrowRight,  // ->
  kArrowLeft,   // <-
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  int64_t int_value = 0;
  int line = 1;
  int col = 1;
};

std::string Upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string TokDescription(Tok t) {
  switch (t) {
    case Tok::kIdent:
      return "identifier";
    case Tok::kInt:
      return "integer";
    case Tok::kString:
      return "string";
    case Tok::kLParen:
      return "'('";
    case Tok::kRParen:
      return "')'";
    case Tok::kLBracket:
      return "'['";
    case Tok::kRBracket:
      return "']'";
    case Tok::kLBrace:
      return "'{'";
    case Tok::kRBrace:
      return "'}'";
    case Tok::kComma:
      return "','";
    case Tok::kDot:
      return "'.'";
    case Tok::kColon:
      return "':'";
    case Tok::kSemicolon:
      return "';'";
    case Tok::kStar:
      return "'*'";
    case Tok::kEq:
      return "'='";
    case Tok::kNe:
      return "'<>'";
    case Tok::kLt:
      return "'<'";
    case Tok::kLe:
      return "'<='";
    case Tok::kGt:
      return "'>'";
    case Tok::kGe:
      return "'>='";
    case Tok::kMinus:
      return "'-'";
    case Tok::kArrowRight:
      return "'->'";
    case Tok::kArrowLeft:
      return "'<-'";
    case Tok::kEnd:
      return "end of input";
  }
  return "?";
}

std::vector<Token> Lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1;
  int col = 1;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n && i < s.size(); ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (true) {
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        advance(1);
      } else if (s[i] == '-' && i + 1 < s.size() && s[i + 1] == '-') {
        while (i < s.size() && s[i] != '\n') advance(1);
      } else {
        break;
      }
    }
    Token t;
    t.line = line;
    t.col = col;
    if (i >= s.size()) {
      t.kind = Tok::kEnd;
      out.push_back(t);
      return out;
    }
    char c = s[i];
    auto sym = [&](Tok k, size_t n) {
      t.kind = k;
      t.text = s.substr(i, n);
      advance(n);
      out.push_back(t);
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      t.kind = Tok::kIdent;
      t.text = s.substr(i, j - i);
      advance(j - i);
      out.push_back(t);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Tok::kInt;
      t.text = s.substr(i, j - i);
      auto res = std::from_chars(s.data() + i, s.data() + j, t.int_value);
      if (res.ec != std::errc()) throw ParseError(line, col, "integer literal out of range", {"integer"});
      advance(j - i);
      out.push_back(t);
    } else if (c == '\'' || c == '"') {
      std::string value;
      size_t j = i + 1;
      bool closed = false;
      while (j < s.size()) {
        if (s[j] == c) {
          if (j + 1 < s.size() && s[j + 1] == c) {
            value += c;
            j += 2;
            continue;
          }
          closed = true;
          break;
        }
        value += s[j++];
      }
      if (!closed) throw ParseError(line, col, "unterminated string literal", {"closing quote"});
      t.kind = Tok::kString;
      t.text = value;
      advance(j + 1 - i);
      out.push_back(t);
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      sym(Tok::kArrowRight, 2);
    } else if (c == '<' && i + 1 < s.size() && s[i + 1] == '-') {
      sym(Tok::kArrowLeft, 2);
    } else if (c == '<' && i + 1 < s.size() && s[i + 1] == '>') {
      sym(Tok::kNe, 2);
    } else if (c == '!' && i + 1 < s.size() && s[i + 1] == '=') {
      sym(Tok::kNe, 2);
    } else if (c == '<' && i + 1 < s.size() && s[i + 1] == '=') {
      sym(Tok::kLe, 2);
    } else if (c == '>' && i + 1 < s.size() && s[i + 1] == '=') {
      sym(Tok::kGe, 2);
    } else {
      switch (c) {
        case '(':
          sym(Tok::kLParen, 1);
          break;
        case ')':
          sym(Tok::kRParen, 1);
          break;
        case '[':
          sym(Tok::kLBracket, 1);
          break;
        case ']':
          sym(Tok::kRBracket, 1);
          break;
        case '{':
          sym(Tok::kLBrace, 1);
          break;
        case '}':
          sym(Tok::kRBrace, 1);
          break;
        case ',':
          sym(Tok::kComma, 1);
          break;
        case '.':
          sym(Tok::kDot, 1);
          break;
        case ':':
          sym(Tok::kColon, 1);
          break;
        case ';':
          sym(Tok::kSemicolon, 1);
          break;
        case '*':
          sym(Tok::kStar, 1);
          break;
        case '=':
          sym(Tok::kEq, 1);
          break;
        case '<':
          sym(Tok::kLt, 1);
          break;
        case '>':
          sym(Tok::kGt, 1);
          break;
        case '-':
          sym(Tok::kMinus, 1);
          break;
        default:
          throw ParseError(line, col, std::string("unexpected character '") + c + "'", {});
      }
    }
  }
}

// Words that cannot be used as bare identifiers or implicit aliases.
const std::set<std::string>& Reserved() {
  static const std::set<std::string> kReserved = {
      "SELECT", "FROM", "WHERE", "AND", "AS", "JOIN", "INNER", "ON", "MATCH", "COLUMNS", "GRAPH_TABLE", "CREATE",
  };
  return kReserved;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(Lex(text)) {}

  bool AtEnd() const { return Peek().kind == Tok::kEnd; }

  ast::Statement Statement() {
    if (IsKeyword("SELECT")) return Select();
    if (IsKeyword("CREATE")) return CreateGraph();
    Fail({"SELECT", "CREATE"});
  }

  void SkipSemicolons() {
    while (Peek().kind == Tok::kSemicolon) Next();
  }

  void ExpectEnd() {
    SkipSemicolons();
    if (!AtEnd()) Fail({"end of input", "';'"});
  }

 private:
  const Token& Peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token Next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void Fail(std::vector<std::string> expected) const {
    const Token& t = Peek();
    std::string got = t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
    std::string msg = "unexpected " + got + ", expected ";
    for (size_t i = 0; i < expected.size(); ++i) msg += (i ? " or " : "") + expected[i];
    throw ParseError(t.line, t.col, msg, std::move(expected));
  }

  bool IsKeyword(const char* kw, size_t k = 0) const {
    return Peek(k).kind == Tok::kIdent && Upper(Peek(k).text) == kw;
  }
  bool AcceptKeyword(const char* kw) {
    if (!IsKeyword(kw)) return false;
    Next();
    return true;
  }
  void ExpectKeyword(const char* kw) {
    if (!AcceptKeyword(kw)) Fail({kw});
  }
  bool Accept(Tok kind) {
    if (Peek().kind != kind) return false;
    Next();
    return true;
  }
  void Expect(Tok kind) {
    if (!Accept(kind)) Fail({TokDescription(kind)});
  }
  bool IsIdent(size_t k = 0) const {
    return Peek(k).kind == Tok::kIdent && !Reserved().count(Upper(Peek(k).text));
  }
  std::string Ident() {
    if (!IsIdent()) Fail({"identifier"});
    return Next().text;
  }
  // After a dot any word is a name, keywords included.
  std::string Name() {
    if (Peek().kind != Tok::kIdent) Fail({"identifier"});
    return Next().text;
  }

  ast::Literal LiteralValue() {
    const Token& t = Peek();
    if (t.kind == Tok::kInt) {
      Next();
      return {Value(t.int_value)};
    }
    if (t.kind == Tok::kMinus && Peek(1).kind == Tok::kInt) {
      Next();
      return {Value(-Next().int_value)};
    }
    if (t.kind == Tok::kString) {
      Next();
      return {Value(t.text)};
    }
    Fail({"literal"});
  }

  ast::Operand OperandValue() {
    if (Peek().kind == Tok::kInt || Peek().kind == Tok::kString ||
        (Peek().kind == Tok::kMinus && Peek(1).kind == Tok::kInt)) {
      return LiteralValue();
    }
    if (!IsIdent()) Fail({"column reference", "literal"});
    ast::ColumnRef ref;
    std::string first = Next().text;
    if (Accept(Tok::kDot)) {
      ref.qualifier = first;
      ref.name = Name();
    } else {
      ref.name = first;
    }
    return ref;
  }

  ast::Comparison ComparisonValue() {
    ast::Comparison c;
    c.lhs = OperandValue();
    switch (Peek().kind) {
      case Tok::kEq:
        c.op = CmpOp::kEq;
        break;
      case Tok::kNe:
        c.op = CmpOp::kNe;
        break;
      case Tok::kLt:
        c.op = CmpOp::kLt;
        break;
      case Tok::kLe:
        c.op = CmpOp::kLe;
        break;
      case Tok::kGt:
        c.op = CmpOp::kGt;
        break;
      case Tok::kGe:
        c.op = CmpOp::kGe;
        break;
      case Tok::kArrowLeft: {
        // "a<-1" lexes as an arrow; read it as "<" then a negative literal.
        Next();
        if (Peek().kind != Tok::kInt) Fail({"integer"});
        c.op = CmpOp::kLt;
        c.rhs = ast::Literal{Value(-Next().int_value)};
        return c;
      }
      default:
        Fail({"comparison operator"});
    }
    Next();
    c.rhs = OperandValue();
    return c;
  }

  std::vector<ast::Comparison> Conjunction() {
    std::vector<ast::Comparison> out;
    out.push_back(ComparisonValue());
    while (AcceptKeyword("AND")) out.push_back(ComparisonValue());
    return out;
  }

  std::vector<ast::PropertyConstraint> Properties() {
    std::vector<ast::PropertyConstraint> out;
    if (!Accept(Tok::kLBrace)) return out;
    do {
      ast::PropertyConstraint pc;
      pc.attr = Name();
      Expect(Tok::kColon);
      pc.value = LiteralValue();
      out.push_back(std::move(pc));
    } while (Accept(Tok::kComma));
    Expect(Tok::kRBrace);
    return out;
  }

  ast::NodePattern Node() {
    Expect(Tok::kLParen);
    ast::NodePattern n;
    if (IsIdent()) n.var = Next().text;
    if (Accept(Tok::kColon)) n.label = Ident();
    n.props = Properties();
    Expect(Tok::kRParen);
    return n;
  }

  ast::EdgePattern Edge() {
    ast::EdgePattern e;
    bool left = false;
    if (Accept(Tok::kArrowLeft)) {
      left = true;
    } else if (!Accept(Tok::kMinus)) {
      Fail({"'-'", "'<-'"});
    }
    Expect(Tok::kLBracket);
    if (IsIdent()) e.var = Next().text;
    Expect(Tok::kColon);
    e.label = Ident();
    e.props = Properties();
    Expect(Tok::kRBracket);
    if (Accept(Tok::kArrowRight)) {
      if (left) Fail({"'-'"});
      e.dir = ast::ArrowDir::kForward;
    } else if (Accept(Tok::kMinus)) {
      e.dir = left ? ast::ArrowDir::kBackward : ast::ArrowDir::kEither;
    } else {
      Fail(left ? std::vector<std::string>{"'-'"} : std::vector<std::string>{"'->'", "'-'"});
    }
    return e;
  }

  ast::PathPattern Path() {
    ast::PathPattern p;
    p.nodes.push_back(Node());
    while (Peek().kind == Tok::kMinus || Peek().kind == Tok::kArrowLeft) {
      p.edges.push_back(Edge());
      p.nodes.push_back(Node());
    }
    return p;
  }

  ast::GraphColumn GraphColumnValue() {
    ast::GraphColumn c;
    bool is_fn = (IsKeyword("ID") || IsKeyword("LABEL")) && Peek(1).kind == Tok::kLParen;
    if (is_fn) {
      c.kind = IsKeyword("ID") ? ast::ColumnKind::kId : ast::ColumnKind::kLabel;
      Next();
      Expect(Tok::kLParen);
      c.var = Ident();
      Expect(Tok::kRParen);
      c.alias = c.var + (c.kind == ast::ColumnKind::kId ? "_id" : "_label");
    } else {
      c.var = Ident();
      Expect(Tok::kDot);
      c.attr = Name();
      c.alias = c.attr;
    }
    if (AcceptKeyword("AS")) c.alias = Name();
    return c;
  }

  ast::GraphTable GraphTableValue() {
    ExpectKeyword("GRAPH_TABLE");
    Expect(Tok::kLParen);
    ast::GraphTable gt;
    gt.graph = Ident();
    ExpectKeyword("MATCH");
    if (AcceptKeyword("DISTINCT")) {
      if (AcceptKeyword("VERTICES")) {
        gt.mode = ast::MatchMode::kVertices;
      } else if (AcceptKeyword("EDGES")) {
        gt.mode = ast::MatchMode::kEdges;
      } else if (AcceptKeyword("ALL")) {
        gt.mode = ast::MatchMode::kAll;
      } else {
        Fail({"VERTICES", "EDGES", "ALL"});
      }
    }
    gt.paths.push_back(Path());
    while (Accept(Tok::kComma)) gt.paths.push_back(Path());
    ExpectKeyword("COLUMNS");
    Expect(Tok::kLParen);
    if (Peek().kind != Tok::kRParen) {
      gt.columns.push_back(GraphColumnValue());
      while (Accept(Tok::kComma)) gt.columns.push_back(GraphColumnValue());
    }
    Expect(Tok::kRParen);
    Expect(Tok::kRParen);
    AcceptKeyword("AS");
    if (IsIdent()) gt.alias = Next().text;
    return gt;
  }

  ast::FromItem FromItemValue() {
    if (IsKeyword("GRAPH_TABLE")) return GraphTableValue();
    ast::TableRef t;
    t.name = Ident();
    if (AcceptKeyword("AS")) {
      t.alias = Ident();
    } else if (IsIdent()) {
      t.alias = Next().text;
    }
    return t;
  }

  ast::SelectStmt Select() {
    ExpectKeyword("SELECT");
    ast::SelectStmt s;
    do {
      ast::SelectItem item;
      if (Accept(Tok::kStar)) {
        item.star = true;
      } else {
        if (!IsIdent()) Fail({"'*'", "column reference"});
        std::string first = Next().text;
        if (Accept(Tok::kDot)) {
          item.column.qualifier = first;
          item.column.name = Name();
        } else {
          item.column.name = first;
        }
        if (AcceptKeyword("AS")) item.alias = Name();
      }
      s.items.push_back(std::move(item));
    } while (Accept(Tok::kComma));
    ExpectKeyword("FROM");
    ast::FromEntry first;
    first.item = FromItemValue();
    s.from.push_back(std::move(first));
    while (true) {
      if (Accept(Tok::kComma)) {
        ast::FromEntry e;
        e.item = FromItemValue();
        s.from.push_back(std::move(e));
      } else if (IsKeyword("JOIN") || (IsKeyword("INNER") && IsKeyword("JOIN", 1))) {
        AcceptKeyword("INNER");
        ExpectKeyword("JOIN");
        ast::FromEntry e;
        e.explicit_join = true;
        e.item = FromItemValue();
        ExpectKeyword("ON");
        e.on = Conjunction();
        s.from.push_back(std::move(e));
      } else {
        break;
      }
    }
    if (AcceptKeyword("WHERE")) s.where = Conjunction();
    return s;
  }

  std::vector<std::string> NameList() {
    std::vector<std::string> out;
    Expect(Tok::kLParen);
    if (Peek().kind != Tok::kRParen) {
      out.push_back(Name());
      while (Accept(Tok::kComma)) out.push_back(Name());
    }
    Expect(Tok::kRParen);
    return out;
  }

  ast::EdgeKeyDecl KeyDecl() {
    ast::EdgeKeyDecl k;
    ExpectKeyword("KEY");
    Expect(Tok::kLParen);
    k.key_attr = Name();
    Expect(Tok::kRParen);
    if (!AcceptKeyword("REFERENCES")) ExpectKeyword("REFERENCE");
    k.ref_relation = Ident();
    Expect(Tok::kLParen);
    k.ref_attr = Name();
    Expect(Tok::kRParen);
    return k;
  }

  ast::CreateGraphStmt CreateGraph() {
    ExpectKeyword("CREATE");
    ExpectKeyword("PROPERTY");
    ExpectKeyword("GRAPH");
    ast::CreateGraphStmt g;
    g.name = Ident();
    ExpectKeyword("VERTEX");
    ExpectKeyword("TABLES");
    Expect(Tok::kLParen);
    do {
      ast::VertexTableDecl v;
      v.relation = Ident();
      if (AcceptKeyword("KEY")) NameList();
      if (AcceptKeyword("LABEL")) v.label = Ident();
      if (AcceptKeyword("PROPERTIES")) v.properties = NameList();
      g.vertex_tables.push_back(std::move(v));
    } while (Accept(Tok::kComma));
    Expect(Tok::kRParen);
    if (AcceptKeyword("EDGE")) {
      ExpectKeyword("TABLES");
      Expect(Tok::kLParen);
      do {
        ast::EdgeTableDecl e;
        e.relation = Ident();
        if (AcceptKeyword("KEY")) NameList();
        if (AcceptKeyword("LABEL")) e.label = Ident();
        ExpectKeyword("SOURCE");
        e.source = KeyDecl();
        ExpectKeyword("DESTINATION");
        e.target = KeyDecl();
        if (AcceptKeyword("LABEL")) e.label = Ident();
        if (AcceptKeyword("PROPERTIES")) e.properties = NameList();
        g.edge_tables.push_back(std::move(e));
      } while (Accept(Tok::kComma));
      Expect(Tok::kRParen);
    }
    return g;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

std::string OperandText(const ast::Operand& o) {
  if (const auto* lit = std::get_if<ast::Literal>(&o)) return ValueToLiteral(lit->value);
  const auto& c = std::get<ast::ColumnRef>(o);
  return c.qualifier.empty() ? c.name : c.qualifier + "." + c.name;
}

std::string ComparisonText(const ast::Comparison& c) {
  return OperandText(c.lhs) + " " + CmpOpSymbol(c.op) + " " + OperandText(c.rhs);
}

std::string Conj(const std::vector<ast::Comparison>& cs) {
  std::string out;
  for (size_t i = 0; i < cs.size(); ++i) out += (i ? " AND " : "") + ComparisonText(cs[i]);
  return out;
}

std::string PropsText(const std::vector<ast::PropertyConstraint>& props) {
  if (props.empty()) return "";
  std::string out = " {";
  for (size_t i = 0; i < props.size(); ++i) {
    out += (i ? ", " : "") + props[i].attr + ": " + ValueToLiteral(props[i].value.value);
  }
  return out + "}";
}

std::string NodeText(const ast::NodePattern& n) {
  std::string out = "(" + n.var;
  if (!n.label.empty()) out += ":" + n.label;
  return out + PropsText(n.props) + ")";
}

std::string EdgeText(const ast::EdgePattern& e) {
  std::string body = "[" + e.var + ":" + e.label + PropsText(e.props) + "]";
  switch (e.dir) {
    case ast::ArrowDir::kForward:
      return "-" + body + "->";
    case ast::ArrowDir::kBackward:
      return "<-" + body + "-";
    case ast::ArrowDir::kEither:
      return "-" + body + "-";
  }
  return "";
}

}  // namespace

ast::Statement Parse(const std::string& text) {
  Parser p(text);
  ast::Statement s = p.Statement();
  p.ExpectEnd();
  return s;
}

std::vector<ast::Statement> ParseScript(const std::string& text) {
  Parser p(text);
  std::vector<ast::Statement> out;
  p.SkipSemicolons();
  while (!p.AtEnd()) {
    out.push_back(p.Statement());
    p.SkipSemicolons();
  }
  return out;
}

std::string PrettyPrint(const ast::SelectStmt& s) {
  std::ostringstream out;
  out << "SELECT ";
  for (size_t i = 0; i < s.items.size(); ++i) {
    const auto& item = s.items[i];
    if (i) out << ", ";
    if (item.star) {
      out << "*";
      continue;
    }
    out << OperandText(item.column);
    if (!item.alias.empty()) out << " AS " << item.alias;
  }
  out << "\nFROM ";
  for (size_t i = 0; i < s.from.size(); ++i) {
    const auto& entry = s.from[i];
    if (i) out << (entry.explicit_join ? "\nJOIN " : ",\n     ");
    if (const auto* t = std::get_if<ast::TableRef>(&entry.item)) {
      out << t->name;
      if (!t->alias.empty()) out << " AS " << t->alias;
    } else {
      const auto& gt = std::get<ast::GraphTable>(entry.item);
      out << "GRAPH_TABLE (" << gt.graph << "\n  MATCH ";
      switch (gt.mode) {
        case ast::MatchMode::kVertices:
          out << "DISTINCT VERTICES ";
          break;
        case ast::MatchMode::kEdges:
          out << "DISTINCT EDGES ";
          break;
        case ast::MatchMode::kAll:
          out << "DISTINCT ALL ";
          break;
        case ast::MatchMode::kNone:
          break;
      }
      for (size_t p = 0; p < gt.paths.size(); ++p) {
        if (p) out << ",\n        ";
        const auto& path = gt.paths[p];
        out << NodeText(path.nodes[0]);
        for (size_t e = 0; e < path.edges.size(); ++e) out << EdgeText(path.edges[e]) << NodeText(path.nodes[e + 1]);
      }
      out << "\n  COLUMNS (";
      for (size_t c = 0; c < gt.columns.size(); ++c) {
        const auto& col = gt.columns[c];
        if (c) out << ", ";
        switch (col.kind) {
          case ast::ColumnKind::kAttr:
            out << col.var << "." << col.attr;
            break;
          case ast::ColumnKind::kId:
            out << "ID(" << col.var << ")";
            break;
          case ast::ColumnKind::kLabel:
            out << "LABEL(" << col.var << ")";
            break;
        }
        out << " AS " << col.alias;
      }
      out << "))";
      if (!gt.alias.empty()) out << " AS " << gt.alias;
    }
    if (entry.explicit_join) out << " ON " << Conj(entry.on);
  }
  if (!s.where.empty()) out << "\nWHERE " << Conj(s.where);
  return out.str();
}

std::string PrettyPrint(const ast::CreateGraphStmt& g) {
  std::ostringstream out;
  out << "CREATE PROPERTY GRAPH " << g.name << "\n  VERTEX TABLES (";
  auto names = [](const std::vector<std::string>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s + ")";
  };
  for (size_t i = 0; i < g.vertex_tables.size(); ++i) {
    const auto& v = g.vertex_tables[i];
    out << (i ? ",\n    " : "\n    ") << v.relation;
    if (!v.label.empty()) out << " LABEL " << v.label;
    if (!v.properties.empty()) out << " PROPERTIES " << names(v.properties);
  }
  out << "\n  )";
  if (!g.edge_tables.empty()) {
    out << "\n  EDGE TABLES (";
    for (size_t i = 0; i < g.edge_tables.size(); ++i) {
      const auto& e = g.edge_tables[i];
      out << (i ? ",\n    " : "\n    ") << e.relation;
      if (!e.label.empty()) out << " LABEL " << e.label;
      out << "\n      SOURCE KEY (" << e.source.key_attr << ") REFERENCES " << e.source.ref_relation << " ("
          << e.source.ref_attr << ")";
      out << "\n      DESTINATION KEY (" << e.target.key_attr << ") REFERENCES " << e.target.ref_relation << " ("
          << e.target.ref_attr << ")";
      if (!e.properties.empty()) out << "\n      PROPERTIES " << names(e.properties);
    }
    out << "\n  )";
  }
  return out.str();
}

std::string PrettyPrint(const ast::Statement& stmt) {
  if (const auto* s = std::get_if<ast::SelectStmt>(&stmt)) return PrettyPrint(*s);
  return PrettyPrint(std::get<ast::CreateGraphStmt>(stmt));
}

namespace ast {

RGMapping ToMapping(const CreateGraphStmt& stmt) {
  RGMapping m;
  m.graph_name = stmt.name;
  for (const auto& v : stmt.vertex_tables) m.vertex_tables.push_back({v.relation, v.label.empty() ? v.relation : v.label});
  for (const auto& e : stmt.edge_tables) {
    m.edge_tables.push_back({e.relation, e.label.empty() ? e.relation : e.label,
                             {e.source.key_attr, e.source.ref_relation, e.source.ref_attr},
                             {e.target.key_attr, e.target.ref_relation, e.target.ref_attr}});
  }
  return m;
}

}  // namespace ast

}  // namespace spjm
