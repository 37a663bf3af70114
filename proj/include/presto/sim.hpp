#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "presto/outcome.hpp"
#include "presto/pres.hpp"

namespace presto {

/// Which firing set to take when several are concretely enabled.
class Schedule {
 public:
  // Always the first set in canonical order.
  static Schedule maximalStep();
  // Uniform choice driven by a seeded mt19937_64.
  static Schedule randomMaximal(std::uint64_t seed);

  bool isRandom() const { return random_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t choose(std::size_t count);

 private:
  Schedule(bool random, std::uint64_t seed) : random_(random), seed_(seed), rng_(seed) {}
  bool random_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoEnabledSet : public SimulationError {
 public:
  explicit NoEnabledSet(bool structurallyEnabled)
      : SimulationError(structurallyEnabled ? "every enabled transition has a false guard"
                                            : "no transition is enabled"),
        structurallyEnabled_(structurallyEnabled) {}
  bool structurallyEnabled() const { return structurallyEnabled_; }

 private:
  bool structurallyEnabled_;
};

struct StepResult {
  FiringSet fired;
  TokenState next;
};

/// Variable bindings of the marked places.
Environment environmentOf(const PresNet& net, const TokenState& ts, const Interpretation& interp);

/// Fires one firing set whose guard decisions all hold. Every fired function
/// reads the state from before the step.
StepResult simulateStep(const PresNet& net, const TokenState& ts, const Interpretation& interp,
                        Schedule& schedule);

/// Steps from `inputs` (exactly the initially marked places) until nothing
/// can fire or `maxSteps` steps were taken.
RunOutcome simulateRun(const PresNet& net, const TokenState& inputs, const Interpretation& interp,
                       Schedule schedule, std::size_t maxSteps);

/// Tokens sitting on out-ports.
TokenState outPortTokens(const PresNet& net, const TokenState& ts);

/// Runs `schedules` random schedules with seeds seed, seed+1, ... and checks
/// that all of them leave the same out-port tokens.
Verdict confluenceCheck(const PresNet& net, const TokenState& inputs, const Interpretation& interp,
                        std::size_t schedules, std::uint64_t seed, std::size_t maxSteps = 10000);

}  // namespace presto
