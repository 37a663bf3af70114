#include "presto/sim.hpp"

#include <future>
#include <vector>

namespace presto {

Schedule Schedule::maximalStep() { return Schedule(false, 0); }

Schedule Schedule::randomMaximal(std::uint64_t seed) { return Schedule(true, seed); }

std::size_t Schedule::choose(std::size_t count) {
  if (count == 0) throw std::invalid_argument("nothing to choose from");
  if (!random_) return 0;
  // Plain modulo keeps runs bit-reproducible across standard libraries.
  return static_cast<std::size_t>(rng_() % count);
}

Environment environmentOf(const PresNet& net, const TokenState& ts, const Interpretation& interp) {
  Environment env;
  env.functions = interp;
  for (const auto& [place, value] : ts) {
    const auto& var = net.varOf(place);
    auto [it, fresh] = env.vars.emplace(var, value);
    if (!fresh && it->second != value) {
      throw SimulationError("places sharing variable '" + var + "' hold different values");
    }
  }
  return env;
}

namespace {

Marking markingOf(const TokenState& ts) {
  Marking m;
  for (const auto& [place, value] : ts) m.insert(place);
  return m;
}

std::vector<const FiringSet*> concretelyEnabled(const FiringSetChoice& choice, const Environment& env) {
  std::vector<const FiringSet*> out;
  for (const auto& fs : choice.sets) {
    bool holds = true;
    for (const auto& g : fs.guards) {
      if (!evaluateBool(g, env)) {
        holds = false;
        break;
      }
    }
    if (holds) out.push_back(&fs);
  }
  return out;
}

}  // namespace

StepResult simulateStep(const PresNet& net, const TokenState& ts, const Interpretation& interp,
                        Schedule& schedule) {
  const Marking m = markingOf(ts);
  const Environment env = environmentOf(net, ts, interp);
  const auto choice = constructSetOfTransitions(net, m);
  const auto candidates = concretelyEnabled(choice, env);
  if (candidates.empty()) throw NoEnabledSet(!enabledTransitions(net, m).empty());

  const FiringSet& fired = *candidates[schedule.choose(candidates.size())];
  const Marking nextMarking = fireSet(net, m, fired);

  TokenState next;
  for (const auto& [place, value] : ts) {
    if (nextMarking.contains(place)) next.emplace(place, value);
  }
  for (const auto& t : fired.transitions) {
    const Int value = evaluateInt(net.findTransition(t)->fn, env);
    for (const auto& p : net.postset(t)) next.insert_or_assign(p, value);
  }
  return {fired, std::move(next)};
}

RunOutcome simulateRun(const PresNet& net, const TokenState& inputs, const Interpretation& interp,
                       Schedule schedule, std::size_t maxSteps) {
  if (maxSteps < 1) throw std::invalid_argument("maxSteps must be at least 1");
  if (markingOf(inputs) != net.initialMarking()) {
    throw SimulationError("inputs must give a value to exactly the initially marked places " +
                          toString(net.initialMarking()));
  }
  RunOutcome out;
  out.finalState = inputs;
  while (true) {
    if (out.steps == maxSteps) {
      // Only a bound hit if something could still fire.
      const Environment env = environmentOf(net, out.finalState, interp);
      const auto choice = constructSetOfTransitions(net, markingOf(out.finalState));
      if (!concretelyEnabled(choice, env).empty()) {
        out.status = RunStatus::StepBoundExceeded;
        return out;
      }
    }
    try {
      auto step = simulateStep(net, out.finalState, interp, schedule);
      out.finalState = step.next;
      out.trace.push_back({std::move(step.fired), std::move(step.next)});
      ++out.steps;
    } catch (const NoEnabledSet& e) {
      out.status = e.structurallyEnabled() ? RunStatus::Deadlock : RunStatus::Quiescent;
      return out;
    }
  }
}

TokenState outPortTokens(const PresNet& net, const TokenState& ts) {
  TokenState out;
  for (const auto& [place, value] : ts) {
    if (net.consumers(place).empty()) out.emplace(place, value);
  }
  return out;
}

Verdict confluenceCheck(const PresNet& net, const TokenState& inputs, const Interpretation& interp,
                        std::size_t schedules, std::uint64_t seed, std::size_t maxSteps) {
  if (schedules < 2) throw std::invalid_argument("confluence needs at least two schedules");
  const std::string method = "confluence over " + std::to_string(schedules) + " random maximal schedules";

  std::vector<std::future<RunOutcome>> pending;
  for (std::size_t i = 0; i < schedules; ++i) {
    pending.push_back(std::async(std::launch::async, [&, i] {
      return simulateRun(net, inputs, interp, Schedule::randomMaximal(seed + i), maxSteps);
    }));
  }
  std::vector<RunOutcome> runs;
  for (auto& f : pending) runs.push_back(f.get());

  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].status != RunStatus::Quiescent) {
      return Verdict::inconclusive(method, "run with seed " + std::to_string(seed + i) + " ended " +
                                               std::string(toString(runs[i].status)));
    }
  }
  const TokenState reference = outPortTokens(net, runs[0].finalState);
  for (std::size_t i = 1; i < runs.size(); ++i) {
    const TokenState other = outPortTokens(net, runs[i].finalState);
    if (other == reference) continue;
    Witness w;
    w.summary = "seeds " + std::to_string(seed) + " and " + std::to_string(seed + i) +
                " leave different out-port tokens";
    w.inputs = inputs;
    std::set<std::string> ports;
    for (const auto& [p, v] : reference) ports.insert(p);
    for (const auto& [p, v] : other) ports.insert(p);
    for (const auto& p : ports) {
      PortObservation obs{p, p, std::nullopt, std::nullopt};
      if (auto it = reference.find(p); it != reference.end()) obs.leftValue = it->second;
      if (auto it = other.find(p); it != other.end()) obs.rightValue = it->second;
      w.ports.push_back(obs);
    }
    w.runs = {runs[0], runs[i]};
    return Verdict::notEquivalent(method, std::move(w));
  }
  Verdict v = Verdict::equivalent(method);
  for (const auto& [p, value] : reference) v.observations.push_back({p, p, value, value});
  return v;
}

}  // namespace presto
