#include <catch_amalgamated.hpp>

#include "generators.hpp"
#include "presto/dsl.hpp"
#include "presto/expr.hpp"

using namespace presto;

namespace {

Environment envOf(std::initializer_list<std::pair<const std::string, int>> vars) {
  Environment env;
  for (const auto& [k, v] : vars) env.vars[k] = v;
  return env;
}

Function addConst(int c) {
  return [c](std::span<const Int> x) { return x[0] + c; };
}

Function scale(int k) {
  return [k](std::span<const Int> x) { return x[0] * k; };
}

}  // namespace

TEST_CASE("evaluate folds a zero addend away", "[expr]") {
  auto e = Expr::integer(0) + Expr::var("x");
  CHECK(evaluateInt(e, envOf({{"x", 7}})) == 7);
}

TEST_CASE("evaluate adds a constant", "[expr]") {
  CHECK(evaluateInt(parseExpr("x + 3"), envOf({{"x", 2}})) == 5);
}

TEST_CASE("evaluate compares a product", "[expr]") {
  auto e = Expr::rel(RelOp::Gt, Expr::var("a") * Expr::var("b"), Expr::integer(10));
  CHECK(evaluateBool(e, envOf({{"a", 3}, {"b", 4}})));
  CHECK_FALSE(evaluateBool(e, envOf({{"a", 2}, {"b", 5}})));
}

TEST_CASE("evaluate reports unbound variables and missing symbols", "[expr]") {
  CHECK_THROWS_AS(evaluate(parseExpr("x + y"), envOf({{"x", 1}})), UnboundVariable);
  try {
    evaluate(parseExpr("f(1)"), {});
    FAIL("expected UninterpretedSymbol");
  } catch (const UninterpretedSymbol& e) {
    CHECK(e.name() == "f");
  }
}

TEST_CASE("factories reject ill-sorted terms", "[expr]") {
  CHECK_THROWS_AS(Expr::add({Expr::var("x"), Expr::boolean(true)}), SortMismatch);
  CHECK_THROWS_AS(Expr::lnot(Expr::var("x")), SortMismatch);
  CHECK_THROWS_AS(Expr::rel(RelOp::Eq, Expr::boolean(true), Expr::integer(1)), SortMismatch);
  CHECK_THROWS_AS(Expr::apply("f", {Expr::boolean(false)}), SortMismatch);
  CHECK_THROWS_AS(evaluateInt(parseExpr("x > 1"), envOf({{"x", 1}})), SortMismatch);
}

TEST_CASE("integer arithmetic never wraps", "[expr]") {
  Environment env;
  env.vars["x"] = Int(1) << 64;
  auto value = evaluateInt(parseExpr("x * x + 1"), env);
  CHECK(value == (Int(1) << 128) + 1);
  CHECK(evaluateInt(parseExpr("-9223372036854775808 - 1"), {}) == Int("-9223372036854775809"));
}

TEST_CASE("substitute with no bindings is the identity", "[expr]") {
  auto e = parseExpr("x + y");
  CHECK(substitute(e, {}) == e);
}

TEST_CASE("substitute composes applications", "[expr]") {
  auto e = substitute(parseExpr("f(x)"), {{"x", parseExpr("g(y)")}});
  CHECK(e == parseExpr("f(g(y))"));
}

TEST_CASE("substitute replaces simultaneously", "[expr]") {
  auto swapped = substitute(parseExpr("x + y"), {{"x", Expr::var("y")}, {"y", Expr::var("x")}});
  CHECK(swapped == parseExpr("y + x"));
  // A sequential reading would give y + y.
  CHECK_FALSE(swapped == parseExpr("y + y"));
  presto::testing::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    auto env = presto::testing::randomEnvironment(rng, {"x", "y"});
    CHECK(evaluateInt(swapped, env) == env.vars["y"] + env.vars["x"]);
  }
}

TEST_CASE("normalize is insensitive to operand order", "[expr]") {
  CHECK(normalize(parseExpr("a + b")) == normalize(parseExpr("b + a")));
  CHECK(normalize(parseExpr("a * (b * c)")) == normalize(parseExpr("(c * a) * b")));
  CHECK(normalize(parseExpr("a > 0 and (b > 0 and c > 0)")) == normalize(parseExpr("c > 0 and b > 0 and a > 0")));
}

TEST_CASE("normalize folds constants", "[expr]") {
  auto n = normalize(parseExpr("2 + 3"));
  REQUIRE(n.kind() == ExprKind::IntConst);
  CHECK(n.intValue() == 5);
  CHECK(normalize(parseExpr("2 * x * 3 + 1 + 4")) == normalize(parseExpr("6 * x + 5")));
  CHECK(normalize(parseExpr("1 > 2 or x > 0")) == normalize(parseExpr("x > 0")));
  CHECK(normalize(parseExpr("x * 0 + f(y) * 1")) == normalize(parseExpr("f(y)")));
}

TEST_CASE("like-term collection is opt-in", "[expr]") {
  auto e = parseExpr("x - x");
  auto kept = normalize(e);
  CHECK(kept.kind() == ExprKind::Add);
  auto collected = normalize(e, {.collectLikeTerms = true});
  REQUIRE(collected.kind() == ExprKind::IntConst);
  CHECK(collected.intValue() == 0);
  CHECK(normalize(parseExpr("2 * x + x"), {.collectLikeTerms = true}) == normalize(parseExpr("3 * x")));
  for (int x = -5; x <= 5; ++x) {
    auto env = envOf({{"x", x}});
    CHECK(evaluateInt(kept, env) == 0);
    CHECK(evaluateInt(collected, env) == 0);
  }
}

TEST_CASE("normalize removes double negation and pushes negation inward", "[expr]") {
  CHECK(normalize(parseExpr("-(-x)")) == normalize(parseExpr("x")));
  CHECK(normalize(parseExpr("not not (x > 1)")) == normalize(parseExpr("x > 1")));
  CHECK(normalize(parseExpr("-(a + b)")) == normalize(parseExpr("-a - b")));
  CHECK(normalize(parseExpr("a - (b - c)")) == normalize(parseExpr("a + c - b")));
}

TEST_CASE("structural equivalence", "[expr]") {
  CHECK(structurallyEquivalent(parseExpr("a + b"), parseExpr("b + a")));
  CHECK(structurallyEquivalent(parseExpr("f(x) + g(y)"), parseExpr("g(y) + f(x)")));
  CHECK_FALSE(structurallyEquivalent(parseExpr("f(g(x))"), parseExpr("g(f(x))")));
  CHECK_THROWS_AS(structurallyEquivalent(parseExpr("x"), parseExpr("x > 0")), SortMismatch);
}

TEST_CASE("f(g(x)) and g(f(x)) differ under f = +1 and g = *2", "[expr]") {
  Environment env = envOf({{"x", 1}});
  env.functions["f"] = addConst(1);
  env.functions["g"] = scale(2);
  CHECK(evaluateInt(parseExpr("f(g(x))"), env) == 3);
  CHECK(evaluateInt(parseExpr("g(f(x))"), env) == 4);
}

TEST_CASE("negating a single relation complements it", "[expr]") {
  CHECK(negateGuard(parseExpr("v_p3 > 0")) == normalize(parseExpr("v_p3 <= 0")));
  CHECK(negateGuard(parseExpr("a = b")) == normalize(parseExpr("a != b")));
  CHECK(negateGuard(parseExpr("a < b")) == normalize(parseExpr("a >= b")));
  CHECK(negateGuard(negateGuard(parseExpr("x >= 4"))) == normalize(parseExpr("x >= 4")));
}

TEST_CASE("negating a compound guard keeps its meaning", "[expr]") {
  auto g = parseExpr("a > 0 and b < 3");
  auto n = negateGuard(g);
  for (int a = -2; a <= 2; ++a) {
    for (int b = 1; b <= 5; ++b) {
      auto env = envOf({{"a", a}, {"b", b}});
      CHECK(evaluateBool(n, env) == !evaluateBool(g, env));
    }
  }
}

TEST_CASE("free variables and applied symbols", "[expr]") {
  auto e = parseExpr("f(g(x), y) + f(z, 2)");
  CHECK(freeVariables(e) == std::set<std::string>{"x", "y", "z"});
  CHECK(appliedSymbols(e) == std::vector<std::string>{"f", "g", "f"});
}

TEST_CASE("a theory removes identities and resolves aliases", "[expr]") {
  SymbolTheory theory;
  theory.identities = {"copy", "keep"};
  theory.aliases = {{"pwPriCnt", "pwPricnt"}};
  auto e = applyTheory(parseExpr("detect(copy(keep(x)), pwPriCnt(copy(y)))"), theory);
  CHECK(e == parseExpr("detect(x, pwPricnt(y))"));
  CHECK_FALSE(theory.empty());
  CHECK(SymbolTheory{}.empty());
}

TEST_CASE("printing round-trips through the parser", "[expr]") {
  for (const auto* text : {"a - b", "a - (b - c)", "-(a + b)", "-3 * x", "f(x, -2) >= g(y)",
                           "not (a > 0 or b > 0)", "in-Copy(v_in) + x", "(a + b) * c",
                           "a > 0 and (b > 0 or c = 1)"}) {
    auto e = parseExpr(text);
    CHECK(parseExpr(toString(e)) == e);
  }
  CHECK(toString(parseExpr("a == b")) == "a = b");
  CHECK(toString(Expr::sub(Expr::var("a"), Expr::var("b"))) == "a - b");
}

TEST_CASE("hyphenated identifiers are single names", "[expr]") {
  auto e = parseExpr("in-Copy(x)");
  REQUIRE(e.kind() == ExprKind::Apply);
  CHECK(e.name() == "in-Copy");
  auto d = parseExpr("a-b");
  CHECK(d.kind() == ExprKind::Var);
  CHECK(parseExpr("a - b").kind() == ExprKind::Sub);
  CHECK(parseExpr("a -1").kind() == ExprKind::Sub);
}

TEST_CASE("malformed expressions are syntax errors", "[expr]") {
  CHECK_THROWS_AS(parseExpr(""), SyntaxError);
  CHECK_THROWS_AS(parseExpr("a +"), SyntaxError);
  CHECK_THROWS_AS(parseExpr("f(a"), SyntaxError);
  CHECK_THROWS_AS(parseExpr("a > b > c"), SyntaxError);
  CHECK_THROWS_AS(parseExpr("x + (y > 1)"), SyntaxError);
}
