#include "presto/interp.hpp"

#include <random>

namespace presto {

Int SymbolSpec::operator()(std::span<const Int> args) const {
  if (!table.empty()) {
    std::vector<Int> key(args.begin(), args.end());
    if (auto it = table.find(key); it != table.end()) return it->second;
  }
  if (!body) throw ExprError("no table entry and no default for these arguments");
  Environment env;
  for (std::size_t i = 0; i < args.size(); ++i) env.vars.emplace("x" + std::to_string(i), args[i]);
  return evaluateInt(*body, env);
}

std::string SymbolSpec::describe() const {
  if (table.empty()) return body ? toString(*body) : "";
  std::string out = "table {";
  for (const auto& [key, value] : table) {
    out += " ";
    if (key.size() == 1) {
      out += key[0].str();
    } else {
      out += "(";
      for (std::size_t i = 0; i < key.size(); ++i) out += (i ? ", " : "") + key[i].str();
      out += ")";
    }
    out += " -> " + value.str() + ";";
  }
  out += " }";
  if (body) out += " default " + toString(*body);
  return out;
}

SymbolSpec affineSpec(const std::vector<Int>& coefficients, const Int& constant) {
  std::vector<Expr> terms;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] == 0) continue;
    auto x = Expr::var("x" + std::to_string(i));
    terms.push_back(coefficients[i] == 1 ? x : Expr::integer(coefficients[i]) * x);
  }
  if (constant != 0 || terms.empty()) terms.push_back(Expr::integer(constant));
  return {terms.size() == 1 ? terms[0] : Expr::add(std::move(terms)), {}};
}

Interpretation realize(const InterpretationSpec& spec) {
  Interpretation out;
  for (const auto& [name, s] : spec) {
    out.emplace(name, [s](std::span<const Int> args) { return s(args); });
  }
  return out;
}

void collectArities(const Expr& e, std::map<std::string, std::size_t, std::less<>>& out) {
  if (e.kind() == ExprKind::Apply) {
    auto [it, fresh] = out.emplace(e.name(), e.args().size());
    if (!fresh && it->second != e.args().size()) {
      throw ExprError("symbol '" + e.name() + "' is applied with " + std::to_string(it->second) + " and " +
                      std::to_string(e.args().size()) + " arguments");
    }
  }
  for (const auto& a : e.args()) collectArities(a, out);
}

InterpretationSpec completeInterpretation(InterpretationSpec given,
                                          const std::map<std::string, std::size_t, std::less<>>& arities,
                                          const SymbolTheory& theory, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&](int lo, int hi) { return Int(lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1))); };

  auto resolve = [&](const std::string& name, std::size_t arity) {
    std::string target = name;
    if (auto it = theory.aliases.find(name); it != theory.aliases.end()) target = it->second;
    if (!given.contains(target)) {
      if (arity == 1 && theory.identities.contains(target)) {
        given.emplace(target, affineSpec({1}, 0));
      } else {
        std::vector<Int> coefficients;
        for (std::size_t i = 0; i < arity; ++i) coefficients.push_back(draw(1, 7));
        given.emplace(target, affineSpec(coefficients, draw(-9, 9)));
      }
    }
    if (target != name && !given.contains(name)) given.emplace(name, given.at(target));
  };
  // Identities and alias targets first so the random draws do not depend on
  // which spelling happens to sort first.
  for (const auto& [name, arity] : arities) {
    if (!theory.aliases.contains(name)) resolve(name, arity);
  }
  for (const auto& [name, arity] : arities) {
    if (theory.aliases.contains(name)) resolve(name, arity);
  }
  return given;
}

}  // namespace presto
