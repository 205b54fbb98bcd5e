// Copyright 2026 The Species Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "species/parser.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "species/errors.hpp"

namespace species {

namespace {

enum class Tok { Ident, Integer, Plus, Star, Caret, Quote, LParen, RParen, LBracket, RBracket, Eq, Ge, Le, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> tokenize(std::string_view src, std::size_t base) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(src.substr(start, i - start)), base + start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({Tok::Integer, std::string(src.substr(start, i - start)), base + start});
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == ">=" || two == "<=") {
      out.push_back({two == ">=" ? Tok::Ge : Tok::Le, std::string(two), base + start});
      i += 2;
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '*': kind = Tok::Star; break;
      case '^': kind = Tok::Caret; break;
      case '\'': kind = Tok::Quote; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case '=': kind = Tok::Eq; break;
      default:
        throw SyntaxError(base + start, {"expression"}, "'" + std::string(1, c) + "'");
    }
    out.push_back({kind, std::string(1, c), base + start});
    ++i;
  }
  out.push_back({Tok::End, "", base + src.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Expr parse_all() {
    Expr e = expr();
    expect_end();
    return e;
  }

  // "Name =" prefix of a definition line.
  std::string definition_head() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail({"identifier"});
    if (is_reserved(t.text)) fail({"non-reserved identifier"});
    std::string id = t.text;
    ++at_;
    expect(Tok::Eq, "'='");
    return id;
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail({"'+'", "'*'", "'^'", "'''", "'('", "'['", "end of input"});
  }

  Expr expr() {
    Expr e = term();
    while (accept(Tok::Plus)) e = sum(std::move(e), term());
    return e;
  }

 private:
  const Token& peek() const { return tokens_[at_]; }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++at_;
    return true;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw SyntaxError(peek().pos, std::move(expected), describe(peek()));
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail({what});
    return tokens_[at_++];
  }

  std::size_t integer() {
    const Token& t = expect(Tok::Integer, "integer");
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      throw SyntaxError(t.pos, {"integer that fits in 64 bits"}, describe(t));
    }
    return value;
  }

  Expr term() {
    Expr e = factor();
    while (accept(Tok::Star)) e = product(std::move(e), factor());
    return e;
  }

  static Expr repeat(const Expr& base, std::size_t k) {
    if (k == 0) return primitive(PrimitiveKind::One);
    Expr e = base;
    for (std::size_t i = 1; i < k; ++i) e = product(base, std::move(e));
    return e;
  }

  Expr factor() {
    Expr e = postfix();
    while (accept(Tok::Caret)) e = repeat(e, integer());
    return e;
  }

  Expr postfix() {
    Expr e = atom();
    for (;;) {
      if (accept(Tok::Quote)) {
        e = derivative(std::move(e));
      } else if (accept(Tok::LParen)) {
        Expr inner = expr();
        expect(Tok::RParen, "')'");
        e = substitute(std::move(e), std::move(inner));
      } else if (accept(Tok::LBracket)) {
        CardRelation rel;
        if (accept(Tok::Eq)) rel = CardRelation::Equal;
        else if (accept(Tok::Ge)) rel = CardRelation::AtLeast;
        else if (accept(Tok::Le)) rel = CardRelation::AtMost;
        else fail({"'='", "'>='", "'<='"});
        const std::size_t k = integer();
        expect(Tok::RBracket, "']'");
        e = restrict_card(std::move(e), CardPredicate{rel, k});
      } else {
        return e;
      }
    }
  }

  Expr atom() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        ++at_;
        Expr e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Integer:
        if (t.text == "0") {
          ++at_;
          return primitive(PrimitiveKind::Zero);
        }
        if (t.text == "1") {
          ++at_;
          return primitive(PrimitiveKind::One);
        }
        fail({"'0'", "'1'"});
      case Tok::Ident: {
        ++at_;
        if (t.text == "pt") {
          expect(Tok::LParen, "'('");
          Expr inner = expr();
          expect(Tok::RParen, "')'");
          return pointing(std::move(inner));
        }
        if (t.text == "Pk" || t.text == "Ek") {
          expect(Tok::LBracket, "'['");
          const std::size_t k = integer();
          expect(Tok::RBracket, "']'");
          return primitive(t.text == "Pk" ? PrimitiveKind::KSubset : PrimitiveKind::KSet, k);
        }
        if (auto kind = primitive_from_name(t.text)) return primitive(*kind);
        return name(t.text);
      }
      default:
        fail({"identifier", "'0'", "'1'", "'('", "'pt'"});
    }
  }

  std::vector<Token> tokens_;
  std::size_t at_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(tokenize(text, 0)).parse_all(); }

Environment parse_defs(std::string_view text) {
  Environment env;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    auto tokens = tokenize(line, line_start);
    if (tokens.size() > 1) {
      Parser p(std::move(tokens));
      std::string id = p.definition_head();
      Expr rhs = p.expr();
      p.expect_end();
      env.bind(id, std::move(rhs));
    }
    line_start = line_end + 1;
  }

  for (const auto& [id, rhs] : env.bindings()) {
    for (const auto& ref : referenced_names(rhs)) {
      if (!env.contains(ref)) {
        throw Error(ErrorCode::UnboundName, "name " + ref + " used in the definition of " + id + " is not defined");
      }
    }
  }
  return env;
}

}  // namespace species
