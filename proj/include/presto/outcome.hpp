#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "presto/convert.hpp"

namespace presto {

/// Concrete value of every marked place.
using TokenState = std::map<std::string, Int>;

std::string toString(const TokenState& ts);

enum class RunStatus { Quiescent, StepBoundExceeded, Deadlock };

std::string_view toString(RunStatus status);

struct TraceEntry {
  FiringSet fired;
  TokenState state;  // after the step

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct RunOutcome {
  RunStatus status = RunStatus::Quiescent;
  TokenState finalState;
  std::vector<TraceEntry> trace;
  std::size_t steps = 0;

  friend bool operator==(const RunOutcome&, const RunOutcome&) = default;
};

enum class VerdictStatus { Equivalent, NotEquivalent, Inconclusive };

std::string_view toString(VerdictStatus status);

/// One corresponding pair of out-ports after a run (or a pair of output
/// variables after a symbolic comparison).
struct PortObservation {
  std::string left;
  std::string right;
  std::optional<Int> leftValue;   // nullopt: no token
  std::optional<Int> rightValue;
};

struct Witness {
  std::string summary;
  // Concrete inputs that reproduce the difference (left net's places).
  TokenState inputs;
  std::vector<PortObservation> ports;
  // Symbolic witness: differing variable with both normal forms, or an
  // unmatched path condition.
  std::string variable;
  std::string leftForm;
  std::string rightForm;
  std::vector<RunOutcome> runs;
  // Symbol meanings the runs used, as `name -> spec` text.
  std::map<std::string, std::string> interpretation;
};

/// Normal forms of one corresponding output pair on one matched path.
struct FormObservation {
  std::string condition;
  std::string leftVariable;
  std::string rightVariable;
  std::string leftForm;
  std::string rightForm;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  std::string method;
  std::string reason;  // why Inconclusive
  std::optional<Witness> witness;
  // Out-port values of the runs that backed the verdict, first input vector.
  std::vector<PortObservation> observations;
  std::vector<FormObservation> forms;

  static Verdict equivalent(std::string method);
  static Verdict notEquivalent(std::string method, Witness witness);
  static Verdict inconclusive(std::string method, std::string reason);
};

}  // namespace presto
