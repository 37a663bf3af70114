#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "presto/fsmd.hpp"
#include "presto/interp.hpp"
#include "presto/outcome.hpp"
#include "presto/pres.hpp"

namespace presto {

using NameMap = std::map<std::string, std::string>;

/// Correspondence of in-ports and of out-ports between two nets.
struct PortMap {
  NameMap inMap;
  NameMap outMap;

  PortMap inverse() const;
  static PortMap identity(const PresNet& net);
};

class InvalidPortMap : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws InvalidPortMap unless both maps are bijections over the structural
/// port sets.
void validatePortMap(const PresNet& left, const PresNet& right, const PortMap& pm);

enum class Strategy { Symbolic, Sampled };

std::string_view toString(Strategy s);

struct CheckOptions {
  // Keyed by the left net's initially marked places. Empty means draw
  // `samples` random vectors.
  std::vector<TokenState> inputs;
  InterpretationSpec interp;
  SymbolTheory theory;
  std::size_t maxSteps = 10000;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
};

/// One value per variable, shared by places that carry the same variable.
TokenState randomInputs(const PresNet& net, std::mt19937_64& rng);

/// Left-net inputs carried over to the right net through the in-port map.
TokenState mapInputs(const TokenState& inputs, const PortMap& pm);

/// Every symbol of both nets bound: given specs first, then the theory, then
/// seeded random affine functions.
InterpretationSpec interpretationFor(const PresNet& left, const PresNet& right, const CheckOptions& options);

Verdict checkCardinality(const PresNet& left, const PresNet& right, const PortMap& pm, const CheckOptions& options);

Verdict checkFunctional(const PresNet& left, const PresNet& right, const PortMap& pm, Strategy strategy,
                        const CheckOptions& options);

/// Path-based equivalence of two loop-free machines. `outputMap` pairs output
/// variables; `inputMap` renames the right machine's inputs to the left's
/// (identity where absent).
Verdict checkFsmdEquivalence(const Fsmd& left, const Fsmd& right, const NameMap& outputMap,
                             const SymbolTheory& theory = {}, const NameMap& inputMap = {});

}  // namespace presto
