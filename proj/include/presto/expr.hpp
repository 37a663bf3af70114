#pragma once

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace presto {

/// Unbounded token integer. Arithmetic never wraps.
using Int = boost::multiprecision::cpp_int;

enum class Sort { Int, Bool };

enum class ExprKind {
  IntConst,
  BoolConst,
  Var,
  Apply,
  Neg,
  Add,
  Mul,
  Sub,
  Rel,
  Not,
  And,
  Or,
};

enum class RelOp { Eq, Ne, Gt, Ge, Lt, Le };

RelOp complement(RelOp op);
std::string_view spelling(RelOp op);

class ExprError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnboundVariable : public ExprError {
 public:
  explicit UnboundVariable(std::string name);
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class UninterpretedSymbol : public ExprError {
 public:
  explicit UninterpretedSymbol(std::string name);
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class SortMismatch : public ExprError {
 public:
  using ExprError::ExprError;
};

/// Immutable symbolic term over integer-valued variables.
///
/// Nodes are shared and never mutated, so copies are cheap and an Expr can be
/// handed to any number of threads. Every factory checks sorts, which means a
/// constructed Expr is always well-sorted.
class Expr {
 public:
  static Expr integer(Int value);
  static Expr boolean(bool value);
  static Expr var(std::string name);
  static Expr apply(std::string symbol, std::vector<Expr> args);
  static Expr neg(Expr operand);
  static Expr add(std::vector<Expr> operands);
  static Expr mul(std::vector<Expr> operands);
  static Expr sub(Expr lhs, Expr rhs);
  static Expr rel(RelOp op, Expr lhs, Expr rhs);
  static Expr lnot(Expr operand);
  static Expr land(std::vector<Expr> operands);
  static Expr lor(std::vector<Expr> operands);

  ExprKind kind() const;
  Sort sort() const;
  bool isConst() const;

  const Int& intValue() const;
  bool boolValue() const;
  // Variable or function symbol name.
  const std::string& name() const;
  RelOp relOp() const;
  std::span<const Expr> args() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

using Value = std::variant<Int, bool>;
using Function = std::function<Int(std::span<const Int>)>;
using Interpretation = std::map<std::string, Function, std::less<>>;

struct Environment {
  std::map<std::string, Int, std::less<>> vars;
  Interpretation functions;
};

Value evaluate(const Expr& e, const Environment& env);
Int evaluateInt(const Expr& e, const Environment& env);
bool evaluateBool(const Expr& e, const Environment& env);

using Bindings = std::map<std::string, Expr, std::less<>>;

/// Simultaneous substitution: every replacement is read from `bindings`, never
/// from the result of another replacement.
Expr substitute(const Expr& e, const Bindings& bindings);

struct NormalizeOptions {
  // x + -x -> 0, 2*x + x -> 3*x
  bool collectLikeTerms = false;
};

/// Canonical form: constants folded, + * and/or flattened and sorted,
/// subtraction turned into addition of a negation, negations pushed into
/// sums and products, double negation removed, negated relations
/// complemented. Equal normal forms imply equal values under every
/// environment; the converse does not hold for nonlinear or uninterpreted
/// terms.
Expr normalize(const Expr& e, NormalizeOptions options = {});

bool structurallyEquivalent(const Expr& a, const Expr& b);

/// normalize(not e). A single relation is complemented in place.
Expr negateGuard(const Expr& e);

std::set<std::string> freeVariables(const Expr& e);

/// Every applied function symbol, one entry per application, pre-order.
std::vector<std::string> appliedSymbols(const Expr& e);

/// Declared facts about otherwise uninterpreted symbols: spelling aliases
/// and unary symbols that pass their argument through unchanged.
struct SymbolTheory {
  std::map<std::string, std::string, std::less<>> aliases;
  std::set<std::string, std::less<>> identities;

  bool empty() const { return aliases.empty() && identities.empty(); }
};

Expr applyTheory(const Expr& e, const SymbolTheory& theory);

/// Infix rendering accepted back by the expression parser.
std::string toString(const Expr& e);

}  // namespace presto
