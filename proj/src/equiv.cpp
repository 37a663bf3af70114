#include "presto/equiv.hpp"

#include <optional>
#include <set>

#include "presto/convert.hpp"
#include "presto/sim.hpp"

namespace presto {

PortMap PortMap::inverse() const {
  PortMap out;
  for (const auto& [a, b] : inMap) out.inMap.emplace(b, a);
  for (const auto& [a, b] : outMap) out.outMap.emplace(b, a);
  return out;
}

namespace {

// Places that receive a value from outside: structural in-ports plus any
// place marked at the start, such as a self-loop's state.
std::set<std::string> inputPlaces(const Ports& ports) {
  auto out = ports.inPorts;
  out.insert(ports.initiallyMarked.begin(), ports.initiallyMarked.end());
  return out;
}

}  // namespace

PortMap PortMap::identity(const PresNet& net) {
  PortMap out;
  const auto ports = classifyPorts(net);
  for (const auto& p : inputPlaces(ports)) out.inMap.emplace(p, p);
  for (const auto& p : ports.outPorts) out.outMap.emplace(p, p);
  return out;
}

namespace {

void checkBijection(const NameMap& map, const std::set<std::string>& from, const std::set<std::string>& to,
                    const std::string& what) {
  std::set<std::string> image;
  for (const auto& [a, b] : map) {
    if (!from.contains(a)) throw InvalidPortMap(what + " map: '" + a + "' is not a left " + what);
    if (!to.contains(b)) throw InvalidPortMap(what + " map: '" + b + "' is not a right " + what);
    if (!image.insert(b).second) throw InvalidPortMap(what + " map: '" + b + "' is the image of two ports");
  }
  for (const auto& a : from) {
    if (!map.contains(a)) throw InvalidPortMap(what + " map: left " + what + " '" + a + "' is not mapped");
  }
  for (const auto& b : to) {
    if (!image.contains(b)) throw InvalidPortMap(what + " map: right " + what + " '" + b + "' is not mapped");
  }
}

std::map<std::string, std::string> describe(const InterpretationSpec& spec) {
  std::map<std::string, std::string> out;
  for (const auto& [name, s] : spec) out.emplace(name, s.describe());
  return out;
}

std::optional<Int> valueAt(const TokenState& ts, const std::string& place) {
  if (auto it = ts.find(place); it != ts.end()) return it->second;
  return std::nullopt;
}

std::vector<PortObservation> observe(const NameMap& outMap, const RunOutcome& l, const RunOutcome& r) {
  std::vector<PortObservation> out;
  for (const auto& [p, q] : outMap) out.push_back({p, q, valueAt(l.finalState, p), valueAt(r.finalState, q)});
  return out;
}

std::string show(const std::optional<Int>& v) { return v ? v->str() : "no token"; }

struct RunPair {
  TokenState inputs;
  RunOutcome left;
  RunOutcome right;
};

struct Sampling {
  std::vector<RunPair> runs;
  std::optional<std::string> failure;
};

std::vector<TokenState> inputVectors(const PresNet& left, const CheckOptions& options) {
  if (!options.inputs.empty()) return options.inputs;
  std::mt19937_64 rng(options.seed);
  std::vector<TokenState> out;
  for (std::size_t i = 0; i < std::max<std::size_t>(options.samples, 1); ++i) out.push_back(randomInputs(left, rng));
  return out;
}

Sampling runBoth(const PresNet& left, const PresNet& right, const PortMap& pm, const Interpretation& interp,
                 const std::vector<TokenState>& vectors, std::size_t maxSteps) {
  Sampling s;
  for (const auto& in : vectors) {
    try {
      auto l = simulateRun(left, in, interp, Schedule::maximalStep(), maxSteps);
      auto r = simulateRun(right, mapInputs(in, pm), interp, Schedule::maximalStep(), maxSteps);
      s.runs.push_back({in, std::move(l), std::move(r)});
    } catch (const SimulationError& e) {
      s.failure = std::string("simulation failed on ") + toString(in) + ": " + e.what();
    } catch (const ConversionError& e) {
      s.failure = std::string("simulation failed on ") + toString(in) + ": " + e.what();
    } catch (const ExprError& e) {
      s.failure = std::string("evaluation failed on ") + toString(in) + ": " + e.what();
    }
    if (s.failure) break;
  }
  return s;
}

Witness runWitness(std::string summary, const RunPair& run, const PortMap& pm, const InterpretationSpec& spec) {
  Witness w;
  w.summary = std::move(summary);
  w.inputs = run.inputs;
  w.ports = observe(pm.outMap, run.left, run.right);
  w.runs = {run.left, run.right};
  w.interpretation = describe(spec);
  return w;
}

// First out-port pair whose token presence differs.
std::optional<std::string> markingMismatch(const RunPair& run, const PortMap& pm) {
  for (const auto& [p, q] : pm.outMap) {
    const bool l = run.left.finalState.contains(p);
    const bool r = run.right.finalState.contains(q);
    if (l != r) {
      return l ? p + " holds a token but " + q + " does not" : q + " holds a token but " + p + " does not";
    }
  }
  return std::nullopt;
}

std::optional<std::string> valueMismatch(const RunPair& run, const PortMap& pm) {
  for (const auto& [p, q] : pm.outMap) {
    const auto l = valueAt(run.left.finalState, p);
    const auto r = valueAt(run.right.finalState, q);
    if (l != r) return p + " holds " + show(l) + " but " + q + " holds " + show(r);
  }
  return std::nullopt;
}

Verdict withMethod(Verdict v, const std::string& method) {
  v.method = method + "; " + v.method;
  return v;
}

std::optional<PathTransformation> singlePath(const Fsmd& m) {
  if (m.hasReachableCycle()) return std::nullopt;
  const auto e = pathEnumerate(m, m.reset, m.terminalStates(), m.states.size());
  if (e.truncated || e.paths.size() != 1) return std::nullopt;
  return pathTransformation(m, e.paths.front());
}

Expr canonical(const Expr& e, const SymbolTheory& theory, const Bindings& rename = {}) {
  return normalize(applyTheory(rename.empty() ? e : substitute(e, rename), theory));
}

}  // namespace

void validatePortMap(const PresNet& left, const PresNet& right, const PortMap& pm) {
  const auto l = classifyPorts(left);
  const auto r = classifyPorts(right);
  checkBijection(pm.inMap, inputPlaces(l), inputPlaces(r), "in-port");
  checkBijection(pm.outMap, l.outPorts, r.outPorts, "out-port");
}

std::string_view toString(Strategy s) { return s == Strategy::Symbolic ? "symbolic" : "sampled"; }

TokenState randomInputs(const PresNet& net, std::mt19937_64& rng) {
  std::map<std::string, Int> byVariable;
  TokenState out;
  for (const auto& p : net.places) {
    if (!p.marked) continue;
    auto it = byVariable.find(p.var);
    if (it == byVariable.end()) it = byVariable.emplace(p.var, Int(static_cast<long long>(rng() % 41) - 20)).first;
    out.emplace(p.id, it->second);
  }
  return out;
}

TokenState mapInputs(const TokenState& inputs, const PortMap& pm) {
  TokenState out;
  for (const auto& [place, value] : inputs) {
    auto it = pm.inMap.find(place);
    if (it == pm.inMap.end()) throw SimulationError("initially marked place '" + place + "' is not a mapped in-port");
    out.emplace(it->second, value);
  }
  return out;
}

InterpretationSpec interpretationFor(const PresNet& left, const PresNet& right, const CheckOptions& options) {
  std::map<std::string, std::size_t, std::less<>> arities;
  for (const auto* net : {&left, &right}) {
    for (const auto& t : net->transitions) {
      collectArities(t.fn, arities);
      if (t.guard) collectArities(*t.guard, arities);
    }
  }
  return completeInterpretation(options.interp, arities, options.theory, options.seed);
}

Verdict checkCardinality(const PresNet& left, const PresNet& right, const PortMap& pm, const CheckOptions& options) {
  const std::string method = "cardinality (in-port markings compared through the in-port map)";
  const auto lp = classifyPorts(left);
  const auto rp = classifyPorts(right);
  if (lp.inPorts.size() != rp.inPorts.size() || lp.outPorts.size() != rp.outPorts.size()) {
    Witness w;
    w.summary = "left has " + std::to_string(lp.inPorts.size()) + " in-ports and " +
                std::to_string(lp.outPorts.size()) + " out-ports, right has " + std::to_string(rp.inPorts.size()) +
                " and " + std::to_string(rp.outPorts.size());
    return Verdict::notEquivalent(method, std::move(w));
  }
  validatePortMap(left, right, pm);

  for (const auto& [p, q] : pm.inMap) {
    const bool l = lp.initiallyMarked.contains(p);
    if (l != rp.initiallyMarked.contains(q)) {
      Witness w;
      w.summary = "in-port " + (l ? p : q) + " is initially marked but " + (l ? q : p) + " is not";
      return Verdict::notEquivalent(method, std::move(w));
    }
  }

  const auto spec = interpretationFor(left, right, options);
  const auto sampling = runBoth(left, right, pm, realize(spec), inputVectors(left, options), options.maxSteps);
  if (sampling.failure) return Verdict::inconclusive(method, *sampling.failure);

  for (const auto& run : sampling.runs) {
    for (const auto* r : {&run.left, &run.right}) {
      if (r->status == RunStatus::StepBoundExceeded) {
        return Verdict::inconclusive(method, "a run on " + toString(run.inputs) + " hit the step bound of " +
                                                 std::to_string(options.maxSteps));
      }
    }
    if (auto mismatch = markingMismatch(run, pm)) {
      return Verdict::notEquivalent(method, runWitness(*mismatch, run, pm, spec));
    }
    for (const auto* r : {&run.left, &run.right}) {
      if (r->status == RunStatus::Deadlock) {
        return Verdict::inconclusive(method, "a run on " + toString(run.inputs) +
                                                 " deadlocked with matching out-port markings");
      }
    }
  }
  Verdict v = Verdict::equivalent(method);
  v.observations = observe(pm.outMap, sampling.runs.front().left, sampling.runs.front().right);
  return v;
}

Verdict checkFunctional(const PresNet& left, const PresNet& right, const PortMap& pm, Strategy strategy,
                        const CheckOptions& options) {
  const auto vectors = inputVectors(left, options);
  const std::string sampledMethod =
      "functional, sampled over " + std::to_string(vectors.size()) +
      (vectors.size() == 1 ? " input vector" : " input vectors") + " (evidence, not proof)";
  const std::string method = strategy == Strategy::Sampled ? sampledMethod : "functional, symbolic";

  Verdict cardinality = checkCardinality(left, right, pm, options);
  if (cardinality.status != VerdictStatus::Equivalent) return withMethod(std::move(cardinality), method);

  const auto spec = interpretationFor(left, right, options);
  auto sample = [&](const std::vector<TokenState>& ins) -> std::optional<Verdict> {
    const auto sampling = runBoth(left, right, pm, realize(spec), ins, options.maxSteps);
    if (sampling.failure) return Verdict::inconclusive(method, *sampling.failure);
    for (const auto& run : sampling.runs) {
      if (auto mismatch = valueMismatch(run, pm)) {
        return Verdict::notEquivalent(method, runWitness(*mismatch, run, pm, spec));
      }
    }
    return std::nullopt;
  };

  if (strategy == Strategy::Sampled) {
    if (auto v = sample(vectors)) return *v;
    Verdict v = Verdict::equivalent(method);
    v.observations = cardinality.observations;
    return v;
  }

  std::optional<PathTransformation> lt, rt;
  try {
    lt = singlePath(presToFsmd(left).fsmd);
    rt = singlePath(presToFsmd(right).fsmd);
  } catch (const ConversionError& e) {
    return Verdict::inconclusive(method, std::string("conversion failed: ") + e.what());
  }
  if (!lt || !rt) {
    return Verdict::inconclusive(method, "multipath: symbolic comparison needs exactly one reset-to-terminal path");
  }

  Bindings rename;
  for (const auto& [p, q] : pm.inMap) rename.insert_or_assign(right.varOf(q), Expr::var(left.varOf(p)));

  Verdict v = Verdict::equivalent(method);
  std::optional<FormObservation> differing;
  const auto lc = canonical(lt->condition, options.theory);
  const auto rc = canonical(rt->condition, options.theory, rename);
  if (!structurallyEquivalent(lc, rc)) differing = FormObservation{"", "condition", "condition", toString(lc), toString(rc)};
  for (const auto& [p, q] : pm.outMap) {
    const auto& lv = left.varOf(p);
    const auto& rv = right.varOf(q);
    const auto lf = canonical(lt->transform.at(lv), options.theory);
    const auto rf = canonical(rt->transform.at(rv), options.theory, rename);
    FormObservation form{toString(lc), lv, rv, toString(lf), toString(rf)};
    if (!differing && !structurallyEquivalent(lf, rf)) differing = form;
    v.forms.push_back(std::move(form));
  }
  if (!differing) {
    v.observations = cardinality.observations;
    return v;
  }

  // Normal forms disagree; only a concrete run can settle it.
  auto search = vectors;
  std::mt19937_64 rng(options.seed ^ 0x5eedULL);
  for (std::size_t i = 0; i < options.samples; ++i) search.push_back(randomInputs(left, rng));
  if (auto found = sample(search)) {
    if (found->witness) {
      found->witness->variable = differing->leftVariable;
      found->witness->leftForm = differing->leftForm;
      found->witness->rightForm = differing->rightForm;
    }
    found->forms = std::move(v.forms);
    return *found;
  }
  return Verdict::inconclusive(method, "normal forms differ at " + differing->leftVariable + " (" +
                                           differing->leftForm + " vs " + differing->rightForm +
                                           ") and no counterexample turned up in " +
                                           std::to_string(search.size()) + " samples");
}

Verdict checkFsmdEquivalence(const Fsmd& left, const Fsmd& right, const NameMap& outputMap,
                             const SymbolTheory& theory, const NameMap& inputMap) {
  const std::string method = "path-based (paths matched on normalized conditions)";
  {
    std::set<std::string> image;
    for (const auto& [a, b] : outputMap) {
      if (!left.outputs.contains(a)) throw InvalidPortMap("output map: '" + a + "' is not a left output");
      if (!right.outputs.contains(b)) throw InvalidPortMap("output map: '" + b + "' is not a right output");
      if (!image.insert(b).second) throw InvalidPortMap("output map: '" + b + "' is the image of two outputs");
    }
    if (outputMap.size() != left.outputs.size() || image.size() != right.outputs.size()) {
      throw InvalidPortMap("output map must pair every output of both machines");
    }
  }

  struct Entry {
    Path path;
    Expr condition;
    SymbolicStore store;
  };
  Bindings rename;
  for (const auto& [l, r] : inputMap) rename.insert_or_assign(r, Expr::var(l));

  auto collect = [&](const Fsmd& m, const Bindings& names, std::string& problem) {
    std::vector<Entry> out;
    if (m.hasReachableCycle()) {
      problem = m.name + " has a loop reachable from " + m.reset;
      return out;
    }
    const auto e = pathEnumerate(m, m.reset, m.terminalStates(), m.states.size());
    if (e.truncated) {
      problem = "path enumeration of " + m.name + " was cut at " + std::to_string(m.states.size()) + " steps";
      return out;
    }
    for (const auto& p : e.paths) {
      auto t = pathTransformation(m, p);
      SymbolicStore store;
      for (const auto& [v, value] : t.transform) store.emplace(v, canonical(value, theory, names));
      out.push_back({p, canonical(t.condition, theory, names), std::move(store)});
    }
    return out;
  };
  std::string problem;
  const auto lp = collect(left, {}, problem);
  if (!problem.empty()) return Verdict::inconclusive(method, problem);
  const auto rp = collect(right, rename, problem);
  if (!problem.empty()) return Verdict::inconclusive(method, problem);

  auto orphan = [&](bool onLeft, const Entry& e, std::size_t matches) {
    Witness w;
    w.summary = std::string("a path of the ") + (onLeft ? "left" : "right") + " machine under " + toString(e.condition) + " matches " + std::to_string(matches) +
                " paths of the other machine";
    w.variable = "condition";
    (onLeft ? w.leftForm : w.rightForm) = toString(e.condition);
    return Verdict::notEquivalent(method, std::move(w));
  };

  Verdict v = Verdict::equivalent(method);
  for (const auto& l : lp) {
    const Entry* match = nullptr;
    std::size_t matches = 0;
    for (const auto& r : rp) {
      if (structurallyEquivalent(l.condition, r.condition)) {
        match = &r;
        ++matches;
      }
    }
    if (matches != 1) return orphan(true, l, matches);
    for (const auto& [lv, rv] : outputMap) {
      const auto& lf = l.store.at(lv);
      const auto& rf = match->store.at(rv);
      if (!structurallyEquivalent(lf, rf)) {
        Witness w;
        w.summary = lv + " and " + rv + " differ on the path under " + toString(l.condition);
        w.variable = lv;
        w.leftForm = toString(lf);
        w.rightForm = toString(rf);
        return Verdict::notEquivalent(method, std::move(w));
      }
      v.forms.push_back({toString(l.condition), lv, rv, toString(lf), toString(rf)});
    }
  }
  for (const auto& r : rp) {
    std::size_t matches = 0;
    for (const auto& l : lp) matches += structurallyEquivalent(l.condition, r.condition);
    if (matches != 1) return orphan(false, r, matches);
  }
  return v;
}

}  // namespace presto
