#include "lexer.hpp"

#include <cctype>

namespace presto {

std::string toString(const Span& s) { return std::to_string(s.line) + ":" + std::to_string(s.column); }

namespace detail {

namespace {

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

const std::string_view kTwoChar[] = {"->", "<=", ">=", "==", "!="};
const std::string_view kOneChar = "{}();,=<>+-*";

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  Span at;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++at.line;
        at.column = 1;
      } else {
        ++at.column;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || src.substr(i, 2) == "//") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const Span start = at;
    if (identStart(c)) {
      std::size_t j = i + 1;
      // A hyphen joins an identifier only when a name character follows.
      while (j < src.size() && (identChar(src[j]) || (src[j] == '-' && j + 1 < src.size() && identChar(src[j + 1])))) {
        ++j;
      }
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::string text;
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') {
        if (src[j] == '\\' && j + 1 < src.size()) ++j;
        text += src[j++];
      }
      if (j >= src.size() || src[j] != '"') throw SyntaxError(start, "unterminated string");
      out.push_back({Tok::String, std::move(text), start});
      advance(j + 1 - i);
      continue;
    }
    bool matched = false;
    for (auto p : kTwoChar) {
      if (src.substr(i, 2) == p) {
        out.push_back({Tok::Punct, std::string(p), start});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (kOneChar.find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), start});
      advance(1);
      continue;
    }
    throw SyntaxError(start, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", at});
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::String: return "string \"" + t.text + "\"";
    default: return "'" + t.text + "'";
  }
}

const Token& TokenStream::peek(std::size_t ahead) const {
  return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

const Token& TokenStream::next() {
  const Token& t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

bool TokenStream::isPunct(std::string_view p, std::size_t ahead) const {
  const auto& t = peek(ahead);
  return t.kind == Tok::Punct && t.text == p;
}

bool TokenStream::isWord(std::string_view w, std::size_t ahead) const {
  const auto& t = peek(ahead);
  return t.kind == Tok::Ident && t.text == w;
}

bool TokenStream::acceptPunct(std::string_view p) {
  if (!isPunct(p)) return false;
  next();
  return true;
}

bool TokenStream::acceptWord(std::string_view w) {
  if (!isWord(w)) return false;
  next();
  return true;
}

void TokenStream::expectPunct(std::string_view p) {
  if (!acceptPunct(p)) fail("expected '" + std::string(p) + "' but found " + describe(peek()));
}

void TokenStream::expectWord(std::string_view w) {
  if (!acceptWord(w)) fail("expected '" + std::string(w) + "' but found " + describe(peek()));
}

std::string TokenStream::expectIdent(std::string_view what) {
  if (peek().kind != Tok::Ident) fail("expected " + std::string(what) + " but found " + describe(peek()));
  return next().text;
}

std::string TokenStream::expectString(std::string_view what) {
  if (peek().kind != Tok::String) fail("expected " + std::string(what) + " but found " + describe(peek()));
  return next().text;
}

Int TokenStream::expectInt(std::string_view what) {
  const bool negative = isPunct("-") && peek(1).kind == Tok::Int;
  if (negative) next();
  if (peek().kind != Tok::Int) fail("expected " + std::string(what) + " but found " + describe(peek()));
  Int v(next().text);
  return negative ? Int(-v) : v;
}

void TokenStream::fail(const std::string& message) const { fail(peek(), message); }

void TokenStream::fail(const Token& at, const std::string& message) const { throw SyntaxError(at.at, message); }

// ---------------------------------------------------------------------------
// expressions: or < and < not < relation < + - < * < unary minus

namespace {

bool reserved(std::string_view w) {
  return w == "not" || w == "and" || w == "or" || w == "true" || w == "false";
}

}  // namespace

Expr TokenStream::expression() {
  const Token& start = peek();
  try {
    return disjunction();
  } catch (const ExprError& e) {
    fail(start, e.what());
  }
}

Expr TokenStream::disjunction() {
  std::vector<Expr> parts{conjunction()};
  while (acceptWord("or")) parts.push_back(conjunction());
  return parts.size() == 1 ? parts[0] : Expr::lor(std::move(parts));
}

Expr TokenStream::conjunction() {
  std::vector<Expr> parts{negation()};
  while (acceptWord("and")) parts.push_back(negation());
  return parts.size() == 1 ? parts[0] : Expr::land(std::move(parts));
}

Expr TokenStream::negation() {
  if (acceptWord("not")) return Expr::lnot(negation());
  return relation();
}

Expr TokenStream::relation() {
  Expr lhs = additive();
  static const std::pair<std::string_view, RelOp> ops[] = {
      {"=", RelOp::Eq}, {"==", RelOp::Eq}, {"!=", RelOp::Ne}, {"<", RelOp::Lt},
      {"<=", RelOp::Le}, {">", RelOp::Gt}, {">=", RelOp::Ge}};
  for (const auto& [spelling, op] : ops) {
    if (acceptPunct(spelling)) return Expr::rel(op, lhs, additive());
  }
  return lhs;
}

Expr TokenStream::additive() {
  Expr lhs = multiplicative();
  while (true) {
    if (isPunct("+")) {
      std::vector<Expr> terms{lhs};
      while (acceptPunct("+")) terms.push_back(multiplicative());
      lhs = Expr::add(std::move(terms));
    } else if (acceptPunct("-")) {
      lhs = Expr::sub(lhs, multiplicative());
    } else {
      return lhs;
    }
  }
}

Expr TokenStream::multiplicative() {
  std::vector<Expr> factors{unary()};
  while (acceptPunct("*")) factors.push_back(unary());
  return factors.size() == 1 ? factors[0] : Expr::mul(std::move(factors));
}

Expr TokenStream::unary() {
  if (isPunct("-")) {
    if (peek(1).kind == Tok::Int) return Expr::integer(expectInt("integer"));
    next();
    return Expr::neg(unary());
  }
  return primary();
}

Expr TokenStream::primary() {
  const Token& t = peek();
  if (t.kind == Tok::Int) return Expr::integer(Int(next().text));
  if (acceptPunct("(")) {
    Expr e = disjunction();
    expectPunct(")");
    return e;
  }
  if (t.kind != Tok::Ident) fail("expected an expression but found " + describe(t));
  if (acceptWord("true")) return Expr::boolean(true);
  if (acceptWord("false")) return Expr::boolean(false);
  if (reserved(t.text)) fail("'" + t.text + "' cannot start an operand");
  std::string name = next().text;
  if (!acceptPunct("(")) return Expr::var(std::move(name));
  std::vector<Expr> args;
  if (!acceptPunct(")")) {
    do {
      args.push_back(disjunction());
    } while (acceptPunct(","));
    expectPunct(")");
  }
  return Expr::apply(std::move(name), std::move(args));
}

}  // namespace detail
}  // namespace presto
