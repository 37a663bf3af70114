#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "presto/fsmd.hpp"
#include "presto/pres.hpp"

namespace presto {

/// Transitions fired together in one maximal step, plus the guard decisions
/// that select this set among the alternatives at the same marking.
struct FiringSet {
  std::vector<std::string> transitions;  // sorted
  std::vector<Expr> guards;              // guardKey form

  friend bool operator==(const FiringSet&, const FiringSet&) = default;
};

std::string toString(const FiringSet& fs);

enum class UnsafePolicy { Error, RejectFiringSet };

struct ConversionConfig {
  std::size_t stateBound = 10000;
  UnsafePolicy onUnsafe = UnsafePolicy::Error;
};

class ConversionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotEnabled : public ConversionError {
 public:
  using ConversionError::ConversionError;
};

class UnsafeMarking : public ConversionError {
 public:
  UnsafeMarking(std::string place, const std::string& detail)
      : ConversionError("unsafe marking at place '" + place + "': " + detail), place_(std::move(place)) {}
  const std::string& place() const { return place_; }

 private:
  std::string place_;
};

class StateBoundExceeded : public ConversionError {
 public:
  explicit StateBoundExceeded(std::size_t bound)
      : ConversionError("conversion exceeded the state bound of " + std::to_string(bound)) {}
};

struct FiringSetChoice {
  std::vector<FiringSet> sets;
  std::vector<std::string> warnings;
};

/// Enumerates the maximal firing sets available at `m`.
///
/// Enabled transitions whose pre-sets overlap form a conflict group. Inside a
/// group every conflict-free subset is a candidate; it is kept when each
/// transition it leaves out that could still fire alongside it has a guard,
/// which is then recorded negated. An unguarded transition whose only rival
/// is guarded by g inherits the guard not g. Sets whose guard decisions
/// contain some g together with not g are dropped.
FiringSetChoice constructSetOfTransitions(const PresNet& net, const Marking& m);

/// (m \ consumed) ∪ produced. Throws NotEnabled or UnsafeMarking.
Marking fireSet(const PresNet& net, const Marking& m, const FiringSet& fs);

/// Variable written by a transition: the shared variable of its post-set.
const std::string& outputVariable(const PresNet& net, const std::string& transition);

struct ConvertedState {
  std::string name;
  Marking marking;
  std::size_t firingSets = 0;
};

struct ConversionReport {
  std::vector<ConvertedState> states;
  std::vector<std::string> warnings;
};

struct Conversion {
  Fsmd fsmd;
  ConversionReport report;
};

/// Symbolic simulation from M_0: one FSMD state per reachable marking (named
/// q0, q1, ... in discovery order), one FSMD transition per firing set.
Conversion presToFsmd(const PresNet& net, const ConversionConfig& config = {});

}  // namespace presto
