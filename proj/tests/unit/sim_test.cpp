#include <catch_amalgamated.hpp>

#include "corpus.hpp"
#include "presto/dsl.hpp"
#include "presto/equiv.hpp"
#include "presto/interp.hpp"
#include "presto/sim.hpp"

using namespace presto;
using presto::testing::corpusNet;

namespace {

Interpretation affineAll(const PresNet& net, std::uint64_t seed = 3) {
  std::map<std::string, std::size_t, std::less<>> arities;
  for (const auto& t : net.transitions) collectArities(t.fn, arities);
  return realize(completeInterpretation({}, arities, {}, seed));
}

Interpretation identityFor(std::initializer_list<const char*> names) {
  Interpretation fns;
  for (const auto* n : names) fns[n] = [](std::span<const Int> x) { return x[0]; };
  return fns;
}

}  // namespace

TEST_CASE("one step adds three", "[sim]") {
  auto net = parsePres(R"(net plus {
    place a marked; place b;
    transition t { pre a; post b; fn v_a + 3; }
  })");
  auto schedule = Schedule::maximalStep();
  auto step = simulateStep(net, {{"a", 2}}, {}, schedule);
  CHECK(step.next == TokenState{{"b", 5}});
  CHECK(step.fired.transitions == std::vector<std::string>{"t"});
}

TEST_CASE("a self-loop with an identity function keeps its value", "[sim]") {
  auto net = corpusNet("selfloop.pres");
  auto schedule = Schedule::maximalStep();
  auto step = simulateStep(net, {{"p7", 41}}, identityFor({"f_t3"}), schedule);
  CHECK(step.next == TokenState{{"p7", 41}});
}

TEST_CASE("a false guard selects the other branch", "[sim]") {
  auto net = corpusNet("branching.pres");
  auto schedule = Schedule::maximalStep();
  auto step = simulateStep(net, {{"p1", 1}, {"p2", 2}, {"p3", -4}, {"p7", 8}}, affineAll(net), schedule);
  CHECK(step.fired.transitions == std::vector<std::string>{"t1", "t3"});
  CHECK(step.next.contains("p7"));
  CHECK_FALSE(step.next.contains("p6"));
  auto other = simulateStep(net, {{"p1", 1}, {"p2", 2}, {"p3", 5}, {"p7", 8}}, affineAll(net), schedule);
  CHECK(other.fired.transitions == std::vector<std::string>{"t1", "t2"});
}

TEST_CASE("all functions of a step read the old state", "[sim]") {
  auto net = parsePres(R"(net swap {
    place a marked; place b marked; place c; place d;
    transition s { pre a; post c; fn v_a * 10; }
    transition t { pre b; post d; fn v_b + 1; }
  })");
  auto run = simulateRun(net, {{"a", 2}, {"b", 5}}, {}, Schedule::maximalStep(), 10);
  CHECK(run.finalState == TokenState{{"c", 20}, {"d", 6}});
  CHECK(run.steps == 1);
}

TEST_CASE("the two-step chain yields five from two", "[sim]") {
  auto net = corpusNet("chain_left.pres");
  auto run = simulateRun(net, {{"Pa", 2}}, {}, Schedule::maximalStep(), 100);
  CHECK(run.status == RunStatus::Quiescent);
  CHECK(outPortTokens(net, run.finalState) == TokenState{{"Pc", 5}});
  CHECK(run.trace.size() == 2);
}

TEST_CASE("a net whose only guard is false deadlocks at once", "[sim]") {
  auto net = parsePres(R"(net stuck {
    place a marked; place b;
    transition t { pre a; post b; fn v_a; guard v_a > 100; }
  })");
  auto run = simulateRun(net, {{"a", 1}}, {}, Schedule::maximalStep(), 100);
  CHECK(run.status == RunStatus::Deadlock);
  CHECK(run.steps == 0);
  CHECK(run.finalState == TokenState{{"a", 1}});
  auto schedule = Schedule::maximalStep();
  try {
    simulateStep(net, {{"a", 1}}, {}, schedule);
    FAIL("expected NoEnabledSet");
  } catch (const NoEnabledSet& e) {
    CHECK(e.structurallyEnabled());
  }
}

TEST_CASE("the non-pipelined jammer quiesces after fifteen steps", "[sim]") {
  auto net = corpusNet("jammer_nonpipelined.pres");
  TokenState inputs{{"in", 3}, {"thr", 1}, {"ts", -2}, {"om", 4}, {"mpl", 7}, {"dpl", 0}};
  auto run = simulateRun(net, inputs, affineAll(net), Schedule::randomMaximal(9), 1000);
  CHECK(run.status == RunStatus::Quiescent);
  CHECK(run.steps == 15);
  CHECK(run.finalState.size() == 1);
  CHECK(run.finalState.contains("out"));
}

TEST_CASE("runs must start from the initial marking", "[sim]") {
  auto net = corpusNet("chain_left.pres");
  CHECK_THROWS_AS(simulateRun(net, {}, {}, Schedule::maximalStep(), 10), SimulationError);
  CHECK_THROWS_AS(simulateRun(net, {{"Pb", 1}}, {}, Schedule::maximalStep(), 10), SimulationError);
}

TEST_CASE("missing symbol meanings surface as errors", "[sim]") {
  auto net = corpusNet("branching.pres");
  CHECK_THROWS_AS(simulateRun(net, {{"p1", 1}, {"p2", 2}, {"p3", 3}, {"p7", 4}}, {}, Schedule::maximalStep(), 10),
                  UninterpretedSymbol);
}

TEST_CASE("a run that can still fire at the bound is cut", "[sim]") {
  auto net = corpusNet("selfloop.pres");
  auto run = simulateRun(net, {{"p7", 1}}, identityFor({"f_t3"}), Schedule::maximalStep(), 5);
  CHECK(run.status == RunStatus::StepBoundExceeded);
  CHECK(run.steps == 5);
  auto done = simulateRun(corpusNet("chain_left.pres"), {{"Pa", 0}}, {}, Schedule::maximalStep(), 2);
  CHECK(done.status == RunStatus::Quiescent);
}

TEST_CASE("environments bind each marked place's variable", "[sim]") {
  auto net = corpusNet("ports_left.pres");
  auto env = environmentOf(net, {{"Pc", 4}, {"Pd", 4}}, {});
  CHECK(env.vars.at("v_sum") == 4);
  CHECK_THROWS_AS(environmentOf(net, {{"Pc", 4}, {"Pd", 5}}, {}), SimulationError);
}

TEST_CASE("seeded schedules repeat", "[sim]") {
  auto net = corpusNet("racy.pres");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto a = simulateRun(net, {{"x", 3}}, {}, Schedule::randomMaximal(seed), 50);
    auto b = simulateRun(net, {{"x", 3}}, {}, Schedule::randomMaximal(seed), 50);
    CHECK(a == b);
  }
}

TEST_CASE("confluence of the jammer nets", "[sim]") {
  for (const auto* name : {"jammer_nonpipelined.pres", "jammer_pipelined.pres"}) {
    auto net = corpusNet(name);
    std::mt19937_64 rng(5);
    auto inputs = randomInputs(net, rng);
    auto v = confluenceCheck(net, inputs, affineAll(net), 10, 1);
    CHECK(v.status == VerdictStatus::Equivalent);
  }
}

TEST_CASE("a single-transition net is trivially confluent", "[sim]") {
  auto net = corpusNet("chain_left.pres");
  CHECK(confluenceCheck(net, {{"Pa", 2}}, {}, 2, 0).status == VerdictStatus::Equivalent);
}

TEST_CASE("the racy net depends on the schedule", "[sim]") {
  auto net = corpusNet("racy.pres");
  auto v = confluenceCheck(net, {{"x", 3}}, {}, 10, 1);
  REQUIRE(v.status == VerdictStatus::NotEquivalent);
  REQUIRE(v.witness);
  REQUIRE(v.witness->runs.size() == 2);
  const auto& a = v.witness->runs[0];
  const auto& b = v.witness->runs[1];
  CHECK(a.trace != b.trace);
  CHECK(outPortTokens(net, a.finalState) != outPortTokens(net, b.finalState));
  std::set<Int> outs{outPortTokens(net, a.finalState).at("out"), outPortTokens(net, b.finalState).at("out")};
  CHECK(outs == std::set<Int>{4, 6});
}

TEST_CASE("a schedule that never quiesces is inconclusive", "[sim]") {
  auto net = corpusNet("selfloop.pres");
  auto v = confluenceCheck(net, {{"p7", 1}}, identityFor({"f_t3"}), 3, 0, 20);
  CHECK(v.status == VerdictStatus::Inconclusive);
  CHECK_FALSE(v.reason.empty());
}

TEST_CASE("confluence needs at least two schedules", "[sim]") {
  CHECK_THROWS_AS(confluenceCheck(corpusNet("racy.pres"), {{"x", 3}}, {}, 1, 0), std::invalid_argument);
}
