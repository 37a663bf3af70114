#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "presto/expr.hpp"

namespace presto {

/// Concrete meaning of one function symbol: a lookup table over argument
/// tuples with a fallback body written over x0, x1, ...
struct SymbolSpec {
  std::optional<Expr> body;
  std::map<std::vector<Int>, Int> table;

  Int operator()(std::span<const Int> args) const;
  std::string describe() const;
};

using InterpretationSpec = std::map<std::string, SymbolSpec, std::less<>>;

/// x0 + ... scaled by coefficients, plus a constant.
SymbolSpec affineSpec(const std::vector<Int>& coefficients, const Int& constant);

Interpretation realize(const InterpretationSpec& spec);

/// Arity of every applied symbol. Throws ExprError when a symbol is used with
/// two arities.
void collectArities(const Expr& e, std::map<std::string, std::size_t, std::less<>>& out);

/// Adds a meaning for every symbol in `arities` that `given` lacks: identity
/// symbols pass their argument through, an alias shares its target's meaning,
/// and anything else becomes a seeded random affine function.
InterpretationSpec completeInterpretation(InterpretationSpec given,
                                          const std::map<std::string, std::size_t, std::less<>>& arities,
                                          const SymbolTheory& theory, std::uint64_t seed);

}  // namespace presto
