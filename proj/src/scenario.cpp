#include "presto/scenario.hpp"

#include <fstream>
#include <sstream>

#include "lexer.hpp"
#include "presto/convert.hpp"

namespace presto {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

std::string readFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Model loadModel(const std::filesystem::path& path) {
  const std::string text = readFile(path);
  Model m;
  m.path = path;
  try {
    if (sniffModel(text) == ModelKind::Net) {
      m.net = parsePres(text);
    } else {
      m.machine = parseFsmd(text);
    }
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.at(), path.string() + ": " + e.message());
  }
  return m;
}

Fsmd machineOf(const Model& m) {
  if (m.machine) return *m.machine;
  return presToFsmd(*m.net).fsmd;
}

namespace {

void pairs(TokenStream& ts, NameMap& into, std::string_view what, SpanTable& spans) {
  do {
    const Span at = ts.peek().at;
    std::string a = ts.expectIdent(what);
    ts.expectPunct("->");
    std::string b = ts.expectIdent(what);
    spans.emplace(a, at);
    spans.emplace(b, at);
    if (!into.emplace(a, b).second) ts.fail("'" + a + "' is mapped twice");
  } while (ts.acceptPunct(","));
  ts.expectPunct(";");
}

std::size_t count(TokenStream& ts, std::string_view what) {
  const Int v = ts.expectInt(what);
  if (v < 0) ts.fail(std::string(what) + " must not be negative");
  return static_cast<std::size_t>(v);
}

SymbolSpec tableSpec(TokenStream& ts) {
  SymbolSpec spec;
  ts.expectPunct("{");
  while (!ts.acceptPunct("}")) {
    std::vector<Int> key;
    if (ts.acceptPunct("(")) {
      do {
        key.push_back(ts.expectInt("integer"));
      } while (ts.acceptPunct(","));
      ts.expectPunct(")");
    } else {
      key.push_back(ts.expectInt("integer"));
    }
    ts.expectPunct("->");
    spec.table[key] = ts.expectInt("integer");
    ts.expectPunct(";");
  }
  if (ts.acceptWord("default")) spec.body = ts.expression();
  return spec;
}

void checkNames(const Scenario& s) {
  std::vector<Diagnostic> diags;
  auto unknown = [&](const std::string& name, const std::string& detail) {
    auto it = s.spans.find(name);
    diags.push_back({"UnknownName", name, detail, it != s.spans.end() ? it->second : Span{}});
  };
  const PresNet* l = s.left.net ? &*s.left.net : nullptr;
  const PresNet* r = s.right && s.right->net ? &*s.right->net : nullptr;
  auto place = [&](const PresNet* net, const std::string& p, const char* side) {
    if (net && !net->findPlace(p)) unknown(p, std::string("no place '") + p + "' in the " + side + " net");
  };
  for (const auto* map : {&s.ports.inMap, &s.ports.outMap}) {
    for (const auto& [a, b] : *map) {
      place(l, a, "left");
      place(r, b, "right");
    }
  }
  for (const auto& vector : s.options.inputs) {
    for (const auto& [p, v] : vector) {
      place(l, p, "left");
      if (l && l->findPlace(p) && !l->findPlace(p)->marked) {
        unknown(p, "input place '" + p + "' is not initially marked");
      }
    }
  }
  const Fsmd* lm = s.left.machine ? &*s.left.machine : nullptr;
  const Fsmd* rm = s.right && s.right->machine ? &*s.right->machine : nullptr;
  for (const auto& [a, b] : s.outputMap) {
    if (lm && !lm->outputs.contains(a)) unknown(a, "no output '" + a + "' in the left machine");
    if (rm && !rm->outputs.contains(b)) unknown(b, "no output '" + b + "' in the right machine");
  }
  if (!diags.empty()) throw SemanticError(std::move(diags));
}

}  // namespace

Scenario parseScenario(std::string_view text, const std::filesystem::path& baseDir) {
  TokenStream ts(detail::tokenize(text));
  Scenario s;
  if (ts.atEnd()) ts.fail("empty input: expected 'scenario'");
  ts.expectWord("scenario");
  s.name = ts.expectIdent("scenario name");
  ts.expectPunct("{");

  std::optional<std::filesystem::path> left, right;
  while (!ts.acceptPunct("}")) {
    const Token& head = ts.peek();
    if (head.kind != Tok::Ident) ts.fail("expected a scenario entry but found " + detail::describe(head));
    const std::string word = ts.next().text;
    if (word == "left" || word == "right") {
      auto path = baseDir / ts.expectString("model path");
      (word == "left" ? left : right) = path.lexically_normal();
      ts.expectPunct(";");
    } else if (word == "inport") {
      pairs(ts, s.ports.inMap, "place name", s.spans);
    } else if (word == "outport") {
      pairs(ts, s.ports.outMap, "place name", s.spans);
    } else if (word == "map") {
      pairs(ts, s.outputMap, "variable name", s.spans);
    } else if (word == "inputmap") {
      pairs(ts, s.inputMap, "variable name", s.spans);
    } else if (word == "input") {
      TokenState vector;
      do {
        const Span at = ts.peek().at;
        std::string place = ts.expectIdent("place name");
        ts.expectPunct("=");
        s.spans.emplace(place, at);
        vector.insert_or_assign(place, ts.expectInt("integer"));
      } while (ts.acceptPunct(","));
      ts.expectPunct(";");
      s.options.inputs.push_back(std::move(vector));
    } else if (word == "interp") {
      std::string symbol = ts.expectIdent("symbol name");
      SymbolSpec spec;
      if (ts.acceptWord("table")) {
        spec = tableSpec(ts);
      } else {
        ts.expectPunct("=");
        spec.body = ts.expression();
      }
      ts.expectPunct(";");
      s.options.interp.insert_or_assign(std::move(symbol), std::move(spec));
    } else if (word == "identity") {
      do {
        s.options.theory.identities.insert(ts.expectIdent("symbol name"));
      } while (ts.acceptPunct(","));
      ts.expectPunct(";");
    } else if (word == "alias") {
      std::string from = ts.expectIdent("symbol name");
      ts.expectPunct("=");
      s.options.theory.aliases.insert_or_assign(std::move(from), ts.expectIdent("symbol name"));
      ts.expectPunct(";");
    } else if (word == "strategy") {
      if (ts.acceptWord("symbolic")) {
        s.strategy = Strategy::Symbolic;
      } else if (ts.acceptWord("sampled")) {
        s.strategy = Strategy::Sampled;
      } else {
        ts.fail("expected 'symbolic' or 'sampled'");
      }
      ts.expectPunct(";");
    } else if (word == "check") {
      if (ts.acceptWord("cardinality")) {
        s.check = PresCheck::Cardinality;
      } else if (ts.acceptWord("functional")) {
        s.check = PresCheck::Functional;
      } else {
        ts.fail("expected 'cardinality' or 'functional'");
      }
      ts.expectPunct(";");
    } else if (word == "max-steps") {
      s.options.maxSteps = count(ts, "step bound");
      ts.expectPunct(";");
    } else if (word == "seed") {
      s.options.seed = count(ts, "seed");
      ts.expectPunct(";");
    } else if (word == "samples") {
      s.options.samples = count(ts, "sample count");
      ts.expectPunct(";");
    } else if (word == "schedules") {
      s.schedules = count(ts, "schedule count");
      ts.expectPunct(";");
    } else {
      ts.fail(head, "unknown scenario entry '" + word + "'");
    }
  }
  if (!ts.atEnd()) ts.fail("unexpected " + detail::describe(ts.peek()) + " after the scenario");
  if (!left) throw SyntaxError({}, "scenario '" + s.name + "' names no left model");

  s.left = loadModel(*left);
  if (right) s.right = loadModel(*right);
  checkNames(s);
  return s;
}

Scenario loadScenario(const std::filesystem::path& path) {
  return parseScenario(readFile(path), path.parent_path());
}

}  // namespace presto
