#include "presto/cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <optional>

#include "lexer.hpp"
#include "presto/equiv.hpp"
#include "presto/report.hpp"
#include "presto/scenario.hpp"
#include "presto/sim.hpp"

namespace presto {

using nlohmann::json;

int exitCodeFor(const Verdict& v) {
  switch (v.status) {
    case VerdictStatus::Equivalent: return kExitOk;
    case VerdictStatus::NotEquivalent: return kExitNotEquivalent;
    case VerdictStatus::Inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

namespace {

class Style {
 public:
  Style() {
    if (const char* env = std::getenv("PRESTO_COLOR")) {
      enabled_ = std::string_view(env) != "0";
    } else {
      enabled_ = !std::getenv("NO_COLOR") && isatty(STDOUT_FILENO);
    }
  }
  std::string paint(std::string_view text, std::string_view code) const {
    if (!enabled_) return std::string(text);
    return "\x1b[" + std::string(code) + "m" + std::string(text) + "\x1b[0m";
  }
  std::string status(VerdictStatus s) const {
    switch (s) {
      case VerdictStatus::Equivalent: return paint(toString(s), "32");
      case VerdictStatus::NotEquivalent: return paint(toString(s), "31");
      case VerdictStatus::Inconclusive: return paint(toString(s), "33");
    }
    return "";
  }

 private:
  bool enabled_ = true;
};

std::string show(const std::optional<Int>& v) { return v ? v->str() : "-"; }

void printRun(std::ostream& out, const RunOutcome& run, std::string_view indent) {
  for (std::size_t i = 0; i < run.trace.size(); ++i) {
    out << indent << "step " << i + 1 << ": " << toString(run.trace[i].fired) << "\n";
  }
  out << indent << toString(run.status) << " after " << run.steps << " steps: " << toString(run.finalState) << "\n";
}

void printVerdict(std::ostream& out, const Verdict& v, const Style& style) {
  out << style.status(v.status) << "  [" << v.method << "]\n";
  if (!v.reason.empty()) out << "reason: " << v.reason << "\n";
  for (const auto& o : v.observations) {
    out << "  " << o.left << " = " << show(o.leftValue) << ", " << o.right << " = " << show(o.rightValue) << "\n";
  }
  for (const auto& f : v.forms) {
    out << "  " << f.leftVariable << " = " << f.leftForm << "\n";
    if (f.rightForm != f.leftForm || f.rightVariable != f.leftVariable) {
      out << "  " << f.rightVariable << " = " << f.rightForm << "\n";
    }
  }
  if (!v.witness) return;
  const auto& w = *v.witness;
  out << "witness: " << w.summary << "\n";
  if (!w.inputs.empty()) out << "  inputs " << toString(w.inputs) << "\n";
  for (const auto& o : w.ports) {
    out << "  " << o.left << " = " << show(o.leftValue) << ", " << o.right << " = " << show(o.rightValue) << "\n";
  }
  if (!w.variable.empty()) {
    out << "  " << w.variable << ": left " << (w.leftForm.empty() ? "-" : w.leftForm) << "\n";
    out << "  " << std::string(w.variable.size(), ' ') << "  right " << (w.rightForm.empty() ? "-" : w.rightForm)
        << "\n";
  }
  for (std::size_t i = 0; i < w.runs.size(); ++i) {
    out << "  run " << i + 1 << ":\n";
    printRun(out, w.runs[i], "    ");
  }
}

void writeJson(const std::string& path, json report) {
  report["schemaVersion"] = kReportSchemaVersion;
  std::ofstream f(path);
  if (!f) throw ParseError(path + ": cannot write report");
  f << report.dump(2) << "\n";
}

void writeText(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ParseError(path + ": cannot write file");
  f << text;
}

const PresNet& requireNet(const Model& m, std::string_view side) {
  if (!m.net) throw ParseError(m.path.string() + ": the " + std::string(side) + " model must be a net");
  return *m.net;
}

const Model& requireRight(const Scenario& s) {
  if (!s.right) throw ParseError("scenario '" + s.name + "' names no right model");
  return *s.right;
}

NameMap identityOver(const std::set<std::string>& names) {
  NameMap out;
  for (const auto& n : names) out.emplace(n, n);
  return out;
}

}  // namespace

int runCommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const Style style;
  CLI::App app{"Translation validation for PRES+ nets and FSMDs", "presto"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string jsonPath;
  app.add_option("--json", jsonPath, "Write a structured report to this file");

  std::string file, output, strategyName, unsafeName = "error";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> maxSteps, schedules;
  std::size_t stateBound = ConversionConfig{}.stateBound;

  auto* validate = app.add_subcommand("validate", "Check a net, machine or scenario file");
  validate->add_option("file", file, "Model or scenario file")->required();

  auto* simulate = app.add_subcommand("simulate", "Run the left net of a scenario");
  simulate->add_option("scenario", file, "Scenario file")->required();
  simulate->add_option("--seed", seed, "Pick firing sets at random with this seed");
  simulate->add_option("--max-steps", maxSteps, "Step bound");
  simulate->add_option("--schedules", schedules, "Compare this many random schedules (at least 2)");

  auto* convert = app.add_subcommand("convert", "Translate a net into an FSMD");
  convert->add_option("net", file, "Net file")->required();
  convert->add_option("-o,--output", output, "Machine file to write (standard output if omitted)");
  convert->add_option("--state-bound", stateBound, "Maximum number of states");
  convert->add_option("--on-unsafe", unsafeName, "What to do with a firing set that breaks safeness")
      ->check(CLI::IsMember({"error", "reject"}));

  auto* checkFsmd = app.add_subcommand("check-fsmd", "Path-based equivalence of the scenario's machines");
  checkFsmd->add_option("scenario", file, "Scenario file")->required();

  auto* checkPres = app.add_subcommand("check-pres", "Cardinality or functional equivalence of two nets");
  checkPres->add_option("scenario", file, "Scenario file")->required();
  checkPres->add_option("--strategy", strategyName, "Functional strategy")
      ->check(CLI::IsMember({"symbolic", "sampled"}));

  auto* dot = app.add_subcommand("export-dot", "Render a net or machine as a DOT graph");
  dot->add_option("file", file, "Model file")->required();
  dot->add_option("-o,--output", output, "DOT file to write (standard output if omitted)");

  std::vector<std::string> argv{"presto"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<const char*> cargs;
  for (const auto& a : argv) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  json report = {{"command", app.get_subcommands().front()->get_name()}};
  int code = kExitOk;
  try {
    if (validate->parsed()) {
      const std::string text = readFile(file);
      json info;
      if (const auto first = detail::tokenize(text).front(); first.kind == detail::Tok::Ident && first.text == "scenario") {
        const auto s = loadScenario(file);
        out << "ok: scenario " << s.name << "\n";
        info = {{"kind", "scenario"}, {"name", s.name}};
      } else if (sniffModel(text) == ModelKind::Net) {
        const auto net = parsePres(text);
        out << "ok: net " << net.name << ", " << net.places.size() << " places, " << net.transitions.size()
            << " transitions\n";
        info = {{"kind", "net"}, {"name", net.name}};
      } else {
        const auto m = parseFsmd(text);
        out << "ok: machine " << m.name << ", " << m.states.size() << " states, " << m.transitions.size()
            << " transitions\n";
        info = {{"kind", "fsmd"}, {"name", m.name}};
      }
      report["model"] = info;
      report["violations"] = json::array();
    } else if (simulate->parsed()) {
      const auto s = loadScenario(file);
      const PresNet& net = requireNet(s.left, "left");
      const std::size_t bound = maxSteps.value_or(s.options.maxSteps);
      std::map<std::string, std::size_t, std::less<>> arities;
      for (const auto& t : net.transitions) {
        collectArities(t.fn, arities);
        if (t.guard) collectArities(*t.guard, arities);
      }
      const auto interp = realize(completeInterpretation(s.options.interp, arities, s.options.theory, s.options.seed));
      TokenState inputs;
      if (!s.options.inputs.empty()) {
        inputs = s.options.inputs.front();
      } else {
        std::mt19937_64 rng(s.options.seed);
        inputs = randomInputs(net, rng);
      }
      report["inputs"] = toJson(inputs);
      const std::size_t runs = schedules.value_or(s.schedules);
      if (runs >= 2) {
        const Verdict v = confluenceCheck(net, inputs, interp, runs, seed.value_or(s.options.seed), bound);
        printVerdict(out, v, style);
        report["verdict"] = toJson(v);
        code = exitCodeFor(v);
      } else {
        const auto run =
            simulateRun(net, inputs, interp, seed ? Schedule::randomMaximal(*seed) : Schedule::maximalStep(), bound);
        out << net.name << " on " << toString(inputs) << "\n";
        printRun(out, run, "  ");
        out << "out-ports " << toString(outPortTokens(net, run.finalState)) << "\n";
        report["run"] = toJson(run);
      }
    } else if (convert->parsed()) {
      const auto net = parsePres(readFile(file));
      ConversionConfig config;
      config.stateBound = stateBound;
      config.onUnsafe = unsafeName == "reject" ? UnsafePolicy::RejectFiringSet : UnsafePolicy::Error;
      const auto conversion = presToFsmd(net, config);
      writeText(output, printFsmd(conversion.fsmd), out);
      std::ostream& info = output.empty() ? err : out;
      info << "converted " << net.name << ": " << conversion.fsmd.states.size() << " states, "
           << conversion.fsmd.transitions.size() << " transitions\n";
      for (const auto& w : conversion.report.warnings) info << "warning: " << w << "\n";
      report["conversion"] = toJson(conversion.report);
    } else if (checkFsmd->parsed()) {
      const auto s = loadScenario(file);
      const Fsmd left = machineOf(s.left);
      const Fsmd right = machineOf(requireRight(s));
      const NameMap outputs = s.outputMap.empty() ? identityOver(left.outputs) : s.outputMap;
      const Verdict v = checkFsmdEquivalence(left, right, outputs, s.options.theory, s.inputMap);
      printVerdict(out, v, style);
      report["verdict"] = toJson(v);
      code = exitCodeFor(v);
    } else if (checkPres->parsed()) {
      const auto s = loadScenario(file);
      const PresNet& left = requireNet(s.left, "left");
      const PresNet& right = requireNet(requireRight(s), "right");
      const PortMap ports = s.ports.inMap.empty() && s.ports.outMap.empty() ? PortMap::identity(left) : s.ports;
      Strategy strategy = s.strategy;
      if (!strategyName.empty()) strategy = strategyName == "sampled" ? Strategy::Sampled : Strategy::Symbolic;
      const Verdict v = s.check == PresCheck::Cardinality ? checkCardinality(left, right, ports, s.options)
                                                          : checkFunctional(left, right, ports, strategy, s.options);
      printVerdict(out, v, style);
      report["verdict"] = toJson(v);
      code = exitCodeFor(v);
    } else if (dot->parsed()) {
      const auto model = loadModel(file);
      writeText(output, model.net ? exportDot(*model.net) : exportDot(*model.machine), out);
    }
  } catch (const SemanticError& e) {
    err << "error: " << file << ": semantic errors\n";
    json violations = json::array();
    for (const auto& d : e.diagnostics()) {
      err << "  " << toString(d.at) << ": " << d.rule << " at '" << d.element << "': " << d.detail << "\n";
      violations.push_back(toJson(d));
    }
    report["violations"] = violations;
    report["error"] = "semantic";
    code = kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    report["error"] = e.what();
    code = kExitUsage;
  }

  if (!jsonPath.empty()) {
    try {
      report["exitCode"] = code;
      writeJson(jsonPath, report);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  return code;
}

}  // namespace presto
