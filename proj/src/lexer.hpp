#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "presto/dsl.hpp"

namespace presto::detail {

enum class Tok { Ident, Int, String, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  Span at;
};

std::vector<Token> tokenize(std::string_view src);

/// Cursor over a token list with the usual expect/accept helpers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool atEnd() const { return peek().kind == Tok::End; }

  bool isPunct(std::string_view p, std::size_t ahead = 0) const;
  bool isWord(std::string_view w, std::size_t ahead = 0) const;
  bool acceptPunct(std::string_view p);
  bool acceptWord(std::string_view w);
  void expectPunct(std::string_view p);
  void expectWord(std::string_view w);
  std::string expectIdent(std::string_view what);
  std::string expectString(std::string_view what);
  Int expectInt(std::string_view what);

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail(const Token& at, const std::string& message) const;

  Expr expression();

 private:
  Expr disjunction();
  Expr conjunction();
  Expr negation();
  Expr relation();
  Expr additive();
  Expr multiplicative();
  Expr unary();
  Expr primary();

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string describe(const Token& t);

}  // namespace presto::detail
