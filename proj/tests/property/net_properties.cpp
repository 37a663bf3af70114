#include <catch_amalgamated.hpp>

#include "generators.hpp"
#include "presto/convert.hpp"
#include "presto/dsl.hpp"
#include "presto/sim.hpp"

using namespace presto;
using namespace presto::testing;

namespace {

constexpr int kCases = 1000;

// (m \ pre-sets) ∪ post-sets, computed straight from the arc lists.
Marking expectedMarking(const PresNet& net, const Marking& m, const FiringSet& fs) {
  Marking out = m;
  for (const auto& [p, t] : net.inputArcs) {
    if (std::find(fs.transitions.begin(), fs.transitions.end(), t) != fs.transitions.end()) out.erase(p);
  }
  for (const auto& [t, p] : net.outputArcs) {
    if (std::find(fs.transitions.begin(), fs.transitions.end(), t) != fs.transitions.end()) out.insert(p);
  }
  return out;
}

Marking markingOf(const TokenState& ts) {
  Marking m;
  for (const auto& [p, v] : ts) m.insert(p);
  return m;
}

NetShape shapeFor(Rng& rng) {
  NetShape s;
  s.inputs = uniform(rng, 1, 4);
  s.transitions = uniform(rng, 1, 8);
  return s;
}

}  // namespace

TEST_CASE("firing conserves tokens", "[property][net]") {
  Rng rng(2101);
  for (int i = 0; i < kCases; ++i) {
    auto net = randomNet(rng, shapeFor(rng));
    REQUIRE(validateNet(net).empty());
    Marking m = net.initialMarking();
    for (int step = 0; step < 20; ++step) {
      auto choice = constructSetOfTransitions(net, m);
      if (choice.sets.empty()) break;
      for (const auto& fs : choice.sets) REQUIRE(fireSet(net, m, fs) == expectedMarking(net, m, fs));
      const auto& fs = pick(rng, choice.sets);
      if (fs.transitions.empty()) break;
      m = fireSet(net, m, fs);
    }
  }
}

TEST_CASE("simulation steps conserve tokens", "[property][net]") {
  Rng rng(2202);
  for (int i = 0; i < kCases; ++i) {
    auto net = randomNet(rng, shapeFor(rng));
    auto fns = randomNetFunctions(rng);
    auto ts = randomTokens(rng, net);
    auto schedule = Schedule::randomMaximal(static_cast<std::uint64_t>(i));
    for (int step = 0; step < 20; ++step) {
      StepResult r;
      try {
        r = simulateStep(net, ts, fns, schedule);
      } catch (const NoEnabledSet&) {
        break;
      }
      REQUIRE(markingOf(r.next) == expectedMarking(net, markingOf(ts), r.fired));
      ts = r.next;
    }
  }
}

TEST_CASE("seeded runs are reproducible", "[property][net]") {
  Rng rng(2303);
  for (int i = 0; i < kCases; ++i) {
    auto net = randomNet(rng, shapeFor(rng));
    auto fns = randomNetFunctions(rng);
    auto ts = randomTokens(rng, net);
    const auto seed = rng();
    auto a = simulateRun(net, ts, fns, Schedule::randomMaximal(seed), 100);
    auto b = simulateRun(net, ts, fns, Schedule::randomMaximal(seed), 100);
    REQUIRE(a == b);
    REQUIRE(a.steps == a.trace.size());
  }
}

TEST_CASE("converted machines agree with concrete runs", "[property][net]") {
  Rng rng(2404);
  for (int i = 0; i < kCases; ++i) {
    auto net = randomNet(rng, shapeFor(rng));
    auto fns = randomNetFunctions(rng);
    auto ts = randomTokens(rng, net);
    auto run = simulateRun(net, ts, fns, Schedule::maximalStep(), 100);
    REQUIRE(run.status != RunStatus::StepBoundExceeded);

    const auto m = presToFsmd(net).fsmd;
    REQUIRE(validateFsmd(m).empty());
    Environment entry;
    entry.functions = fns;
    for (const auto& [p, v] : ts) entry.vars[net.varOf(p)] = v;

    // Walk the machine, taking the one transition whose guards hold.
    Environment cur = entry;
    std::string state = m.reset;
    Path path;
    while (true) {
      std::optional<std::size_t> next;
      for (auto k : m.outgoing(state)) {
        bool holds = true;
        for (const auto& g : m.transitions[k].guards) holds = holds && evaluateBool(g, cur);
        if (!holds) continue;
        REQUIRE_FALSE(next);
        next = k;
      }
      if (!next) break;
      const auto& t = m.transitions[*next];
      Environment after = cur;
      for (const auto& a : t.updates) after.vars[a.target] = evaluateInt(a.value, cur);
      cur = std::move(after);
      path.push_back(*next);
      state = t.target;
    }
    REQUIRE(path.size() == run.steps);

    const auto pt = pathTransformation(m, path);
    REQUIRE(evaluateBool(pt.condition, entry));
    for (const auto& [place, value] : outPortTokens(net, run.finalState)) {
      const auto& var = net.varOf(place);
      REQUIRE(cur.vars.at(var) == value);
      REQUIRE(evaluateInt(pt.transform.at(var), entry) == value);
    }
  }
}

TEST_CASE("conversion is deterministic on random nets", "[property][net]") {
  Rng rng(2505);
  for (int i = 0; i < kCases; ++i) {
    auto net = randomNet(rng, shapeFor(rng));
    REQUIRE(presToFsmd(net).fsmd == presToFsmd(net).fsmd);
  }
}

TEST_CASE("random nets survive printing and parsing", "[property][net]") {
  Rng rng(2606);
  for (int i = 0; i < kCases; ++i) {
    auto net = randomNet(rng, shapeFor(rng));
    auto back = parsePres(printPres(net));
    REQUIRE(back.places == net.places);
    REQUIRE(back.inputArcs == net.inputArcs);
    REQUIRE(back.outputArcs == net.outputArcs);
    REQUIRE(back.transitions.size() == net.transitions.size());
    for (std::size_t k = 0; k < net.transitions.size(); ++k) {
      REQUIRE(normalize(back.transitions[k].fn) == normalize(net.transitions[k].fn));
      REQUIRE(back.transitions[k].guard.has_value() == net.transitions[k].guard.has_value());
      if (net.transitions[k].guard) {
        REQUIRE(normalize(*back.transitions[k].guard) == normalize(*net.transitions[k].guard));
      }
    }
  }
}
