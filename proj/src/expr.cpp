#include "presto/expr.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace presto {

struct Expr::Node {
  ExprKind kind;
  Int value;
  bool flag = false;
  std::string name;
  RelOp op = RelOp::Eq;
  std::vector<Expr> args;
};

RelOp complement(RelOp op) {
  switch (op) {
    case RelOp::Eq: return RelOp::Ne;
    case RelOp::Ne: return RelOp::Eq;
    case RelOp::Gt: return RelOp::Le;
    case RelOp::Ge: return RelOp::Lt;
    case RelOp::Lt: return RelOp::Ge;
    case RelOp::Le: return RelOp::Gt;
  }
  return op;
}

std::string_view spelling(RelOp op) {
  switch (op) {
    case RelOp::Eq: return "=";
    case RelOp::Ne: return "!=";
    case RelOp::Gt: return ">";
    case RelOp::Ge: return ">=";
    case RelOp::Lt: return "<";
    case RelOp::Le: return "<=";
  }
  return "?";
}

UnboundVariable::UnboundVariable(std::string name)
    : ExprError("unbound variable '" + name + "'"), name_(std::move(name)) {}

UninterpretedSymbol::UninterpretedSymbol(std::string name)
    : ExprError("no interpretation for symbol '" + name + "'"), name_(std::move(name)) {}

namespace {

void requireSort(const Expr& e, Sort expected, std::string_view context) {
  if (e.sort() != expected) {
    throw SortMismatch(std::string(context) + ": expected " +
                       (expected == Sort::Int ? "integer" : "boolean") + " operand, got " +
                       toString(e));
  }
}

}  // namespace

Expr Expr::integer(Int value) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::IntConst;
  n->value = std::move(value);
  return Expr(std::move(n));
}

Expr Expr::boolean(bool value) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::BoolConst;
  n->flag = value;
  return Expr(std::move(n));
}

Expr Expr::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Var;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::apply(std::string symbol, std::vector<Expr> args) {
  for (const auto& a : args) requireSort(a, Sort::Int, symbol);
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Apply;
  n->name = std::move(symbol);
  n->args = std::move(args);
  return Expr(std::move(n));
}

Expr Expr::neg(Expr operand) {
  requireSort(operand, Sort::Int, "unary -");
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Neg;
  n->args.push_back(std::move(operand));
  return Expr(std::move(n));
}

Expr Expr::add(std::vector<Expr> operands) {
  if (operands.size() < 2) throw SortMismatch("+ needs at least two operands");
  for (const auto& a : operands) requireSort(a, Sort::Int, "+");
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Add;
  n->args = std::move(operands);
  return Expr(std::move(n));
}

Expr Expr::mul(std::vector<Expr> operands) {
  if (operands.size() < 2) throw SortMismatch("* needs at least two operands");
  for (const auto& a : operands) requireSort(a, Sort::Int, "*");
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Mul;
  n->args = std::move(operands);
  return Expr(std::move(n));
}

Expr Expr::sub(Expr lhs, Expr rhs) {
  requireSort(lhs, Sort::Int, "-");
  requireSort(rhs, Sort::Int, "-");
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Sub;
  n->args = {std::move(lhs), std::move(rhs)};
  return Expr(std::move(n));
}

Expr Expr::rel(RelOp op, Expr lhs, Expr rhs) {
  requireSort(lhs, Sort::Int, spelling(op));
  requireSort(rhs, Sort::Int, spelling(op));
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Rel;
  n->op = op;
  n->args = {std::move(lhs), std::move(rhs)};
  return Expr(std::move(n));
}

Expr Expr::lnot(Expr operand) {
  requireSort(operand, Sort::Bool, "not");
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Not;
  n->args.push_back(std::move(operand));
  return Expr(std::move(n));
}

Expr Expr::land(std::vector<Expr> operands) {
  if (operands.size() < 2) throw SortMismatch("and needs at least two operands");
  for (const auto& a : operands) requireSort(a, Sort::Bool, "and");
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::And;
  n->args = std::move(operands);
  return Expr(std::move(n));
}

Expr Expr::lor(std::vector<Expr> operands) {
  if (operands.size() < 2) throw SortMismatch("or needs at least two operands");
  for (const auto& a : operands) requireSort(a, Sort::Bool, "or");
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Or;
  n->args = std::move(operands);
  return Expr(std::move(n));
}

ExprKind Expr::kind() const { return node_->kind; }

Sort Expr::sort() const {
  switch (node_->kind) {
    case ExprKind::IntConst:
    case ExprKind::Var:
    case ExprKind::Apply:
    case ExprKind::Neg:
    case ExprKind::Add:
    case ExprKind::Mul:
    case ExprKind::Sub:
      return Sort::Int;
    default:
      return Sort::Bool;
  }
}

bool Expr::isConst() const {
  return node_->kind == ExprKind::IntConst || node_->kind == ExprKind::BoolConst;
}

const Int& Expr::intValue() const { return node_->value; }
bool Expr::boolValue() const { return node_->flag; }
const std::string& Expr::name() const { return node_->name; }
RelOp Expr::relOp() const { return node_->op; }
std::span<const Expr> Expr::args() const { return node_->args; }

bool operator==(const Expr& a, const Expr& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return x.kind <=> y.kind;
  switch (x.kind) {
    case ExprKind::IntConst:
      if (x.value < y.value) return std::strong_ordering::less;
      if (x.value > y.value) return std::strong_ordering::greater;
      return std::strong_ordering::equal;
    case ExprKind::BoolConst:
      return x.flag <=> y.flag;
    case ExprKind::Var:
      return x.name <=> y.name;
    case ExprKind::Apply:
      if (auto c = x.name <=> y.name; c != 0) return c;
      break;
    case ExprKind::Rel:
      if (auto c = x.op <=> y.op; c != 0) return c;
      break;
    default:
      break;
  }
  if (auto c = x.args.size() <=> y.args.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.args.size(); ++i) {
    if (auto c = x.args[i] <=> y.args[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::add({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sub(a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::mul({a, b}); }
Expr operator-(const Expr& a) { return Expr::neg(a); }

// ---------------------------------------------------------------------------
// evaluation

Value evaluate(const Expr& e, const Environment& env) {
  switch (e.kind()) {
    case ExprKind::IntConst:
      return e.intValue();
    case ExprKind::BoolConst:
      return e.boolValue();
    case ExprKind::Var: {
      auto it = env.vars.find(e.name());
      if (it == env.vars.end()) throw UnboundVariable(e.name());
      return it->second;
    }
    case ExprKind::Apply: {
      auto it = env.functions.find(e.name());
      if (it == env.functions.end()) throw UninterpretedSymbol(e.name());
      std::vector<Int> values;
      values.reserve(e.args().size());
      for (const auto& a : e.args()) values.push_back(evaluateInt(a, env));
      return it->second(values);
    }
    case ExprKind::Neg:
      return Int(-evaluateInt(e.args()[0], env));
    case ExprKind::Add: {
      Int sum = 0;
      for (const auto& a : e.args()) sum += evaluateInt(a, env);
      return sum;
    }
    case ExprKind::Mul: {
      Int product = 1;
      for (const auto& a : e.args()) product *= evaluateInt(a, env);
      return product;
    }
    case ExprKind::Sub:
      return Int(evaluateInt(e.args()[0], env) - evaluateInt(e.args()[1], env));
    case ExprKind::Rel: {
      Int l = evaluateInt(e.args()[0], env);
      Int r = evaluateInt(e.args()[1], env);
      switch (e.relOp()) {
        case RelOp::Eq: return l == r;
        case RelOp::Ne: return l != r;
        case RelOp::Gt: return l > r;
        case RelOp::Ge: return l >= r;
        case RelOp::Lt: return l < r;
        case RelOp::Le: return l <= r;
      }
      return false;
    }
    case ExprKind::Not:
      return !evaluateBool(e.args()[0], env);
    case ExprKind::And:
      for (const auto& a : e.args()) {
        if (!evaluateBool(a, env)) return false;
      }
      return true;
    case ExprKind::Or:
      for (const auto& a : e.args()) {
        if (evaluateBool(a, env)) return true;
      }
      return false;
  }
  throw SortMismatch("unknown expression kind");
}

Int evaluateInt(const Expr& e, const Environment& env) {
  auto v = evaluate(e, env);
  if (auto* i = std::get_if<Int>(&v)) return *i;
  throw SortMismatch("expected integer value from " + toString(e));
}

bool evaluateBool(const Expr& e, const Environment& env) {
  auto v = evaluate(e, env);
  if (auto* b = std::get_if<bool>(&v)) return *b;
  throw SortMismatch("expected boolean value from " + toString(e));
}

// ---------------------------------------------------------------------------
// structural rewriting

namespace {

template <typename F>
Expr rebuild(const Expr& e, std::vector<Expr> args, F&& leaf) {
  switch (e.kind()) {
    case ExprKind::Apply: return Expr::apply(e.name(), std::move(args));
    case ExprKind::Neg: return Expr::neg(std::move(args[0]));
    case ExprKind::Add: return Expr::add(std::move(args));
    case ExprKind::Mul: return Expr::mul(std::move(args));
    case ExprKind::Sub: return Expr::sub(std::move(args[0]), std::move(args[1]));
    case ExprKind::Rel: return Expr::rel(e.relOp(), std::move(args[0]), std::move(args[1]));
    case ExprKind::Not: return Expr::lnot(std::move(args[0]));
    case ExprKind::And: return Expr::land(std::move(args));
    case ExprKind::Or: return Expr::lor(std::move(args));
    default: return leaf(e);
  }
}

}  // namespace

Expr substitute(const Expr& e, const Bindings& bindings) {
  if (bindings.empty()) return e;
  if (e.kind() == ExprKind::Var) {
    auto it = bindings.find(e.name());
    if (it == bindings.end()) return e;
    if (it->second.sort() != Sort::Int) {
      throw SortMismatch("cannot substitute boolean term for variable " + e.name());
    }
    return it->second;
  }
  if (e.args().empty()) return e;
  std::vector<Expr> args;
  args.reserve(e.args().size());
  for (const auto& a : e.args()) args.push_back(substitute(a, bindings));
  return rebuild(e, std::move(args), [](const Expr& x) { return x; });
}

Expr applyTheory(const Expr& e, const SymbolTheory& theory) {
  if (theory.empty() || e.args().empty()) return e;
  std::vector<Expr> args;
  args.reserve(e.args().size());
  for (const auto& a : e.args()) args.push_back(applyTheory(a, theory));
  if (e.kind() == ExprKind::Apply) {
    std::string symbol = e.name();
    if (auto it = theory.aliases.find(symbol); it != theory.aliases.end()) symbol = it->second;
    if (args.size() == 1 && theory.identities.contains(symbol)) return args[0];
    return Expr::apply(std::move(symbol), std::move(args));
  }
  return rebuild(e, std::move(args), [](const Expr& x) { return x; });
}

namespace {

void collectFree(const Expr& e, std::set<std::string>& out) {
  if (e.kind() == ExprKind::Var) {
    out.insert(e.name());
    return;
  }
  for (const auto& a : e.args()) collectFree(a, out);
}

}  // namespace

std::set<std::string> freeVariables(const Expr& e) {
  std::set<std::string> out;
  collectFree(e, out);
  return out;
}

namespace {

void collectSymbols(const Expr& e, std::vector<std::string>& out) {
  if (e.kind() == ExprKind::Apply) out.push_back(e.name());
  for (const auto& a : e.args()) collectSymbols(a, out);
}

}  // namespace

std::vector<std::string> appliedSymbols(const Expr& e) {
  std::vector<std::string> out;
  collectSymbols(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// normalization

namespace {

class Normalizer {
 public:
  explicit Normalizer(NormalizeOptions options) : options_(options) {}

  Expr run(const Expr& e) {
    switch (e.kind()) {
      case ExprKind::IntConst:
      case ExprKind::BoolConst:
      case ExprKind::Var:
        return e;
      case ExprKind::Apply: {
        std::vector<Expr> args;
        for (const auto& a : e.args()) args.push_back(run(a));
        return Expr::apply(e.name(), std::move(args));
      }
      case ExprKind::Neg:
        return negated(run(e.args()[0]));
      case ExprKind::Sub:
        return sum({run(e.args()[0]), negated(run(e.args()[1]))});
      case ExprKind::Add: {
        std::vector<Expr> parts;
        for (const auto& a : e.args()) parts.push_back(run(a));
        return sum(std::move(parts));
      }
      case ExprKind::Mul: {
        std::vector<Expr> parts;
        for (const auto& a : e.args()) parts.push_back(run(a));
        return product(std::move(parts));
      }
      case ExprKind::Rel:
        return relation(e.relOp(), run(e.args()[0]), run(e.args()[1]));
      case ExprKind::Not:
        return inverted(run(e.args()[0]));
      case ExprKind::And:
      case ExprKind::Or: {
        std::vector<Expr> parts;
        for (const auto& a : e.args()) parts.push_back(run(a));
        return junction(e.kind(), std::move(parts));
      }
    }
    return e;
  }

 private:
  // Negation of an already normal integer term.
  Expr negated(const Expr& n) {
    switch (n.kind()) {
      case ExprKind::IntConst:
        return Expr::integer(-n.intValue());
      case ExprKind::Neg:
        return n.args()[0];
      case ExprKind::Add: {
        std::vector<Expr> parts;
        for (const auto& a : n.args()) parts.push_back(negated(a));
        return sum(std::move(parts));
      }
      case ExprKind::Mul: {
        std::vector<Expr> parts(n.args().begin(), n.args().end());
        parts.push_back(Expr::integer(-1));
        return product(std::move(parts));
      }
      default:
        return Expr::neg(n);
    }
  }

  // Operands are normal.
  Expr sum(std::vector<Expr> operands) {
    Int constant = 0;
    std::vector<Expr> terms;
    for (auto& op : operands) {
      if (op.kind() == ExprKind::Add) {
        for (const auto& inner : op.args()) {
          if (inner.kind() == ExprKind::IntConst)
            constant += inner.intValue();
          else
            terms.push_back(inner);
        }
      } else if (op.kind() == ExprKind::IntConst) {
        constant += op.intValue();
      } else {
        terms.push_back(std::move(op));
      }
    }
    if (options_.collectLikeTerms) terms = collect(std::move(terms));
    std::sort(terms.begin(), terms.end());
    if (constant != 0 || terms.empty()) terms.insert(terms.begin(), Expr::integer(constant));
    if (terms.size() == 1) return terms.front();
    return Expr::add(std::move(terms));
  }

  std::vector<Expr> collect(std::vector<Expr> terms) {
    std::vector<std::pair<Expr, Int>> groups;
    for (const auto& t : terms) {
      auto [base, coefficient] = split(t);
      auto it = std::find_if(groups.begin(), groups.end(),
                             [&](const auto& g) { return g.first == base; });
      if (it == groups.end())
        groups.emplace_back(base, coefficient);
      else
        it->second += coefficient;
    }
    std::vector<Expr> out;
    for (auto& [base, coefficient] : groups) {
      if (coefficient == 0) continue;
      out.push_back(product({Expr::integer(coefficient), base}));
    }
    return out;
  }

  static std::pair<Expr, Int> split(const Expr& t) {
    if (t.kind() == ExprKind::Neg) return {t.args()[0], Int(-1)};
    if (t.kind() == ExprKind::Mul && t.args()[0].kind() == ExprKind::IntConst) {
      std::vector<Expr> rest(t.args().begin() + 1, t.args().end());
      Expr base = rest.size() == 1 ? rest.front() : Expr::mul(std::move(rest));
      return {base, t.args()[0].intValue()};
    }
    return {t, Int(1)};
  }

  Expr product(std::vector<Expr> operands) {
    Int constant = 1;
    std::vector<Expr> factors;
    auto absorb = [&](const Expr& f) {
      if (f.kind() == ExprKind::IntConst) {
        constant *= f.intValue();
      } else if (f.kind() == ExprKind::Neg) {
        constant = -constant;
        factors.push_back(f.args()[0]);
      } else {
        factors.push_back(f);
      }
    };
    for (const auto& op : operands) {
      if (op.kind() == ExprKind::Mul) {
        for (const auto& inner : op.args()) absorb(inner);
      } else {
        absorb(op);
      }
    }
    if (constant == 0 || factors.empty()) return Expr::integer(constant);
    std::sort(factors.begin(), factors.end());
    if (factors.size() == 1) {
      if (constant == 1) return factors.front();
      if (constant == -1) return negated(factors.front());
    }
    if (constant != 1) factors.insert(factors.begin(), Expr::integer(constant));
    return Expr::mul(std::move(factors));
  }

  Expr relation(RelOp op, Expr lhs, Expr rhs) {
    if (lhs.kind() == ExprKind::IntConst && rhs.kind() == ExprKind::IntConst) {
      Environment none;
      return Expr::boolean(evaluateBool(Expr::rel(op, lhs, rhs), none));
    }
    if ((op == RelOp::Eq || op == RelOp::Ne) && rhs < lhs) std::swap(lhs, rhs);
    return Expr::rel(op, std::move(lhs), std::move(rhs));
  }

  Expr inverted(const Expr& n) {
    switch (n.kind()) {
      case ExprKind::BoolConst:
        return Expr::boolean(!n.boolValue());
      case ExprKind::Not:
        return n.args()[0];
      case ExprKind::Rel:
        return relation(complement(n.relOp()), n.args()[0], n.args()[1]);
      default:
        return Expr::lnot(n);
    }
  }

  Expr junction(ExprKind kind, std::vector<Expr> operands) {
    const bool absorbing = kind == ExprKind::Or;  // value that decides the result
    std::vector<Expr> parts;
    for (auto& op : operands) {
      if (op.kind() == kind) {
        for (const auto& inner : op.args()) parts.push_back(inner);
      } else {
        parts.push_back(std::move(op));
      }
    }
    std::vector<Expr> kept;
    for (auto& p : parts) {
      if (p.kind() == ExprKind::BoolConst) {
        if (p.boolValue() == absorbing) return Expr::boolean(absorbing);
        continue;
      }
      kept.push_back(std::move(p));
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.empty()) return Expr::boolean(!absorbing);
    if (kept.size() == 1) return kept.front();
    return kind == ExprKind::And ? Expr::land(std::move(kept)) : Expr::lor(std::move(kept));
  }

  NormalizeOptions options_;
};

}  // namespace

Expr normalize(const Expr& e, NormalizeOptions options) { return Normalizer(options).run(e); }

bool structurallyEquivalent(const Expr& a, const Expr& b) {
  if (a.sort() != b.sort()) {
    throw SortMismatch("cannot compare " + toString(a) + " with " + toString(b) +
                       ": different sorts");
  }
  return normalize(a) == normalize(b);
}

Expr negateGuard(const Expr& e) { return normalize(Expr::lnot(e)); }

// ---------------------------------------------------------------------------
// printing

namespace {

int precedence(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Or: return 1;
    case ExprKind::And: return 2;
    case ExprKind::Not: return 3;
    case ExprKind::Rel: return 4;
    case ExprKind::Add:
    case ExprKind::Sub: return 5;
    case ExprKind::Mul: return 6;
    case ExprKind::Neg: return 7;
    case ExprKind::IntConst: return e.intValue() < 0 ? 7 : 8;
    default: return 8;
  }
}

void print(const Expr& e, std::ostream& os);

void printOperand(const Expr& child, int minPrecedence, std::ostream& os) {
  if (precedence(child) < minPrecedence) {
    os << '(';
    print(child, os);
    os << ')';
  } else {
    print(child, os);
  }
}

void printJoined(const Expr& e, std::string_view sep, std::ostream& os) {
  // Same-precedence children are parenthesized so that nesting round-trips.
  const int p = precedence(e) + 1;
  bool first = true;
  for (const auto& a : e.args()) {
    if (!first) os << sep;
    first = false;
    printOperand(a, p, os);
  }
}

void print(const Expr& e, std::ostream& os) {
  switch (e.kind()) {
    case ExprKind::IntConst:
      os << e.intValue();
      break;
    case ExprKind::BoolConst:
      os << (e.boolValue() ? "true" : "false");
      break;
    case ExprKind::Var:
      os << e.name();
      break;
    case ExprKind::Apply: {
      os << e.name() << '(';
      bool first = true;
      for (const auto& a : e.args()) {
        if (!first) os << ", ";
        first = false;
        print(a, os);
      }
      os << ')';
      break;
    }
    case ExprKind::Neg: {
      const auto& a = e.args()[0];
      os << '-';
      if (a.kind() == ExprKind::Var || a.kind() == ExprKind::Apply) {
        print(a, os);
      } else {
        os << '(';
        print(a, os);
        os << ')';
      }
      break;
    }
    case ExprKind::Add: printJoined(e, " + ", os); break;
    case ExprKind::Mul: printJoined(e, " * ", os); break;
    case ExprKind::Sub: printJoined(e, " - ", os); break;
    case ExprKind::Rel:
      printOperand(e.args()[0], 5, os);
      os << ' ' << spelling(e.relOp()) << ' ';
      printOperand(e.args()[1], 5, os);
      break;
    case ExprKind::Not:
      os << "not ";
      printOperand(e.args()[0], 4, os);
      break;
    case ExprKind::And: printJoined(e, " and ", os); break;
    case ExprKind::Or: printJoined(e, " or ", os); break;
  }
}

}  // namespace

std::string toString(const Expr& e) {
  std::ostringstream os;
  print(e, os);
  return os.str();
}

}  // namespace presto
