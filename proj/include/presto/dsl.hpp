#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "presto/expr.hpp"
#include "presto/fsmd.hpp"
#include "presto/pres.hpp"

namespace presto {

struct Span {
  int line = 1;
  int column = 1;
};

std::string toString(const Span& s);

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public ParseError {
 public:
  SyntaxError(Span at, const std::string& message)
      : ParseError(toString(at) + ": " + message), at_(at), message_(message) {}
  Span at() const { return at_; }
  const std::string& message() const { return message_; }

 private:
  Span at_;
  std::string message_;
};

struct Diagnostic {
  std::string rule;
  std::string element;
  std::string detail;
  Span at;
};

class SemanticError : public ParseError {
 public:
  explicit SemanticError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  bool has(std::string_view rule) const;

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Where each named declaration starts; used to attach spans to violations.
using SpanTable = std::map<std::string, Span, std::less<>>;

struct NetDocument {
  PresNet net;
  SpanTable spans;
};

struct FsmdDocument {
  Fsmd fsmd;
  SpanTable spans;
};

Expr parseExpr(std::string_view text);

/// Parses and validates. Throws SyntaxError or SemanticError.
NetDocument parseNetDocument(std::string_view text);
PresNet parsePres(std::string_view text);
FsmdDocument parseFsmdDocument(std::string_view text);
Fsmd parseFsmd(std::string_view text);

std::string printPres(const PresNet& net);
std::string printFsmd(const Fsmd& m);

enum class ModelKind { Net, Machine };

/// Decided by the first keyword of the source.
ModelKind sniffModel(std::string_view text);

std::string exportDot(const PresNet& net);
std::string exportDot(const Fsmd& m);

}  // namespace presto
