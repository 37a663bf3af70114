#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "presto/cli.hpp"
#include "presto/convert.hpp"
#include "presto/dsl.hpp"
#include "presto/equiv.hpp"
#include "presto/interp.hpp"
#include "presto/sim.hpp"

using namespace presto;
using presto::testing::corpusNet;
using presto::testing::corpusPath;
using presto::testing::corpusScenario;

namespace {

using Clock = std::chrono::steady_clock;
using Labels = std::vector<std::string>;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

double secondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  return runCommand(args, out, err);
}

Labels sorted(Labels v) {
  std::ranges::sort(v);
  return v;
}

// Label multisets of consecutive steps along the machine's only path.
std::vector<Labels> stepLabels(const Fsmd& m) {
  const auto e = pathEnumerate(m, m.reset, m.terminalStates(), m.states.size());
  expect(e.paths.size() == 1, m.name + " has " + std::to_string(e.paths.size()) + " reset-to-terminal paths");
  std::vector<Labels> out;
  for (auto i : e.paths.front()) out.push_back(sorted(updateLabels(m.transitions[i])));
  return out;
}

void compareSteps(const std::string& name, const std::vector<Labels>& got, const std::vector<Labels>& want) {
  expect(got.size() == want.size(),
         name + ": " + std::to_string(got.size()) + " steps, expected " + std::to_string(want.size()));
  for (std::size_t i = 0; i < want.size(); ++i) {
    expect(got[i] == sorted(want[i]), name + ": labels of step " + std::to_string(i + 1) + " differ");
  }
}

const PresNet& netOf(const Model& m) {
  expect(m.net.has_value(), m.path.string() + " is not a net");
  return *m.net;
}

std::string branchingNet() {
  const auto start = Clock::now();
  const auto net = corpusNet("branching.pres");
  const auto conv = presToFsmd(net);
  const auto& m = conv.fsmd;
  const auto out = m.outgoing(m.reset);
  expect(out.size() == 2, "expected two transitions out of the reset state");

  const auto g = parseExpr("v_p3 > 0");
  const auto marking = [&](const std::string& state) {
    auto it = std::ranges::find(conv.report.states, state, &ConvertedState::name);
    expect(it != conv.report.states.end(), "no record for state " + state);
    return it->marking;
  };
  bool sawTrue = false, sawFalse = false;
  for (auto i : out) {
    const auto& t = m.transitions[i];
    if (t.guards == guardKey({g})) {
      sawTrue = true;
      expect(marking(t.target) == Marking{"p4", "p5", "p6"}, "g branch reaches " + toString(marking(t.target)));
      expect(t.updates == UpdateSet{{"v_p4", parseExpr("f_t1(v_p1, v_p2)")}, {"v_p6", parseExpr("f_t2(v_p3)")}},
             "g branch updates differ: " + describe(t));
    } else if (t.guards == guardKey({negateGuard(g)})) {
      sawFalse = true;
      expect(marking(t.target) == Marking{"p4", "p7"}, "not-g branch reaches " + toString(marking(t.target)));
      expect(t.updates == UpdateSet{{"v_p4", parseExpr("f_t1(v_p1, v_p2)")}, {"v_p7", parseExpr("f_t3(v_p7)")}},
             "not-g branch updates differ: " + describe(t));
    }
  }
  expect(sawTrue && sawFalse, "guard sets are not {g} and {not g}");
  const auto took = secondsSince(start);
  expect(took < 1.0, "took " + std::to_string(took) + " s");
  return "two branches from q0 with guards {v_p3 > 0} and {v_p3 <= 0}";
}

std::string jammerTables() {
  const std::vector<Labels> flat{
      {"in-Copy", "Thresold-copy", "trigerselect-Copy", "opMode-Copy", "modParLib-Copy", "delayPerLib-copy"},
      {"detectEnv"},
      {"detectAmp"},
      {"thresold-keepVal", "copy"},
      {"getAmp", "pwPricnt"},
      {"getT"},
      {"head"},
      {"f"},
      {"getKPS", "FFT", "getPer"},
      {"getType"},
      {"trigSelect-keepVal", "getScenario"},
      {"trigSelect-copy", "opMode-keepVal", "extractN", "extractN"},
      {"opmode-copy", "delayPerLib-keepVal", "modPerLib-keepVal", "adjustdelay"},
      {"delayPerLib-copy", "modPerLib-copy", "doMod"},
      {"sumsig"},
  };
  const std::vector<Labels> piped{
      {"in-Copy", "detectEnv"},
      {"Thresold-copy", "keepVal", "detectAmp"},
      {"in-Copy", "getAmp"},
      {"pwPriCnt", "getT", "head"},
      {"f", "getKPS", "FFT", "getPer"},
      {"trigerselect-Copy", "keepVal", "getType", "opMode-Copy", "keepVal", "getScenario"},
      {"modParLib-Copy", "keepVal", "extractN", "delayParLibCopy", "keepVal", "extranctN", "adjustDelay"},
      {"doMod", "sumsig"},
      {"emit"},
  };
  const auto a = presToFsmd(corpusNet("jammer_nonpipelined.pres")).fsmd;
  const auto b = presToFsmd(corpusNet("jammer_pipelined.pres")).fsmd;
  expect(a.states.size() == 16, "non-pipelined machine has " + std::to_string(a.states.size()) + " states");
  expect(b.states.size() == 10, "pipelined machine has " + std::to_string(b.states.size()) + " states");
  compareSteps("non-pipelined", stepLabels(a), flat);
  compareSteps("pipelined", stepLabels(b), piped);
  return "16 states over 15 steps and 10 states over 9 steps, labels match";
}

std::string jammerEquivalence() {
  const auto scn = corpusScenario("jammer.scn");
  const auto v = checkFsmdEquivalence(machineOf(scn.left), machineOf(*scn.right), scn.outputMap,
                                      scn.options.theory, scn.inputMap);
  expect(v.status == VerdictStatus::Equivalent, "verdict is " + std::string(toString(v.status)));
  expect(!v.forms.empty(), "no composed forms reported");
  for (const auto& f : v.forms) {
    expect(f.leftForm == f.rightForm, f.leftVariable + ": " + f.leftForm + " vs " + f.rightForm);
  }
  expect(cli({"check-fsmd", corpusPath("jammer.scn").string()}) == 0, "check-fsmd did not exit with 0");
  return "Equivalent, " + std::to_string(v.forms.size()) + " identical composed form(s)";
}

std::string portChecks() {
  const auto start = Clock::now();
  const auto card = corpusScenario("ports.scn");
  const auto left = netOf(card.left), right = netOf(*card.right);
  const auto c = checkCardinality(left, right, card.ports, card.options);
  expect(c.status == VerdictStatus::Equivalent, "cardinality verdict is " + std::string(toString(c.status)));
  expect(cli({"check-pres", corpusPath("ports.scn").string()}) == 0, "check-pres on ports.scn did not exit with 0");

  const auto fn = corpusScenario("chain.scn");
  const auto n1 = netOf(fn.left), n2 = netOf(*fn.right);
  for (auto strategy : {Strategy::Symbolic, Strategy::Sampled}) {
    const auto v = checkFunctional(n1, n2, fn.ports, strategy, fn.options);
    const std::string name(toString(strategy));
    expect(v.status == VerdictStatus::Equivalent, name + " verdict is " + std::string(toString(v.status)));
    if (strategy == Strategy::Sampled) {
      expect(v.observations.size() == 1 && v.observations[0].leftValue == Int(5) &&
                 v.observations[0].rightValue == Int(5),
             "sampled out-port values are not 5 and 5");
    }
  }
  const auto took = secondsSince(start);
  expect(took < 1.0, "took " + std::to_string(took) + " s");
  return "cardinality Equivalent; symbolic and sampled Equivalent with out-ports 5 and 5";
}

template <typename F>
std::string semanticRule(F&& f) {
  try {
    f();
  } catch (const SemanticError& e) {
    return e.diagnostics().empty() ? "" : e.diagnostics()[0].rule;
  }
  return "none";
}

std::string mutations() {
  std::vector<std::string> seen;

  const auto dropped = semanticRule([] { corpusNet("ports_right_dropped_arc.pres"); });
  expect(dropped == "FunctionScopeViolation", "dropped arc gives " + dropped);
  seen.push_back("dropped arc: SemanticError");

  const auto swapped = corpusScenario("jammer_swapped.scn");
  const auto s = checkFsmdEquivalence(machineOf(swapped.left), machineOf(*swapped.right), swapped.outputMap,
                                      swapped.options.theory, swapped.inputMap);
  expect(s.status == VerdictStatus::NotEquivalent, "swapped stage is " + std::string(toString(s.status)));
  seen.push_back("swapped stage: NotEquivalent");

  const auto plus = corpusScenario("chain_plus4.scn");
  const auto p = checkFunctional(netOf(plus.left), netOf(*plus.right), plus.ports, Strategy::Sampled,
                                 plus.options);
  expect(p.status == VerdictStatus::NotEquivalent && p.witness && p.witness->ports.size() == 1 &&
             p.witness->ports[0].leftValue == Int(5) && p.witness->ports[0].rightValue == Int(6),
         "plus-four mutant is not NotEquivalent with 5 vs 6");
  seen.push_back("plus four: NotEquivalent 5 vs 6");

  const auto dup = semanticRule([] { testing::corpusFsmd("branching_duplicate_guard.fsmd"); });
  expect(dup == "NondeterministicF", "duplicate guard gives " + dup);
  seen.push_back("duplicate guard: NondeterministicF");

  const auto unmarked = corpusScenario("ports_unmarked.scn");
  const auto u = checkCardinality(netOf(unmarked.left), netOf(*unmarked.right), unmarked.ports,
                                  unmarked.options);
  expect(u.status == VerdictStatus::NotEquivalent, "unmarked out-port is " + std::string(toString(u.status)));
  seen.push_back("unmarked out-port: NotEquivalent");

  std::string out;
  for (const auto& x : seen) out += (out.empty() ? "" : "; ") + x;
  return out;
}

std::string propertySuites(const char* binary) {
  expect(binary != nullptr, "path to the property test binary was not given");
  const auto start = Clock::now();
  const auto status = std::system((std::string("\"") + binary + "\" > /dev/null 2>&1").c_str());
  const auto took = secondsSince(start);
  expect(status == 0, "property suites failed");
  expect(took < 60.0, "took " + std::to_string(took) + " s");
  std::ostringstream msg;
  msg.precision(2);
  msg << std::fixed << "all property suites pass in " << took << " s";
  return msg.str();
}

std::string confluence() {
  for (const auto* name : {"jammer_nonpipelined.pres", "jammer_pipelined.pres"}) {
    const auto net = corpusNet(name);
    const auto interp = realize(interpretationFor(net, net, {}));
    std::mt19937_64 rng(11);
    const auto v = confluenceCheck(net, randomInputs(net, rng), interp, 10, 1);
    expect(v.status == VerdictStatus::Equivalent, std::string(name) + " is " + std::string(toString(v.status)));
  }
  const auto racy = corpusScenario("racy.scn");
  const auto net = netOf(racy.left);
  const auto v = confluenceCheck(net, racy.options.inputs.at(0), realize(interpretationFor(net, net, racy.options)),
                                 10, racy.options.seed);
  expect(v.status == VerdictStatus::NotEquivalent, "racy net is " + std::string(toString(v.status)));
  expect(v.witness && v.witness->runs.size() == 2, "racy witness lacks two runs");
  expect(v.witness->runs[0].trace != v.witness->runs[1].trace, "racy witness traces are identical");
  return "both jammer nets confluent over 10 schedules; racy net gives two differing traces";
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria{
      {"branching net conversion", branchingNet},
      {"jammer step tables", jammerTables},
      {"jammer machine equivalence", jammerEquivalence},
      {"port-level checks", portChecks},
      {"mutations flip the verdict", mutations},
      {"property suites", [&] { return propertySuites(argc > 1 ? argv[1] : nullptr); }},
      {"schedule confluence", confluence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [name, check] = criteria[i];
    std::string detail;
    bool ok = false;
    try {
      detail = check();
      ok = true;
    } catch (const std::exception& e) {
      detail = e.what();
    }
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << name << ": " << detail << "\n";
  }
  return failed == 0 ? 0 : 1;
}
