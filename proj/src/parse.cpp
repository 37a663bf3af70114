#include <algorithm>

#include "lexer.hpp"

namespace presto {

using detail::Tok;
using detail::TokenStream;

SemanticError::SemanticError(std::vector<Diagnostic> diagnostics)
    : ParseError([&] {
        std::string msg = std::to_string(diagnostics.size()) + " semantic error(s)";
        for (const auto& d : diagnostics) {
          msg += "\n  " + toString(d.at) + ": " + d.rule + " at '" + d.element + "': " + d.detail;
        }
        return msg;
      }()),
      diagnostics_(std::move(diagnostics)) {}

bool SemanticError::has(std::string_view rule) const {
  return std::any_of(diagnostics_.begin(), diagnostics_.end(), [&](const Diagnostic& d) { return d.rule == rule; });
}

Expr parseExpr(std::string_view text) {
  TokenStream ts(detail::tokenize(text));
  Expr e = ts.expression();
  if (!ts.atEnd()) ts.fail("unexpected " + detail::describe(ts.peek()) + " after expression");
  return e;
}

namespace {

// Span of an element named in a violation. Arc labels "a -> b" fall back to
// either endpoint.
Span locate(const SpanTable& spans, const std::string& element) {
  if (auto it = spans.find(element); it != spans.end()) return it->second;
  if (auto arrow = element.find(" -> "); arrow != std::string::npos) {
    for (auto part : {element.substr(0, arrow), element.substr(arrow + 4)}) {
      if (auto it = spans.find(part); it != spans.end()) return it->second;
    }
  }
  return {};
}

std::vector<std::string> identList(TokenStream& ts, std::string_view what) {
  std::vector<std::string> out;
  if (ts.isPunct(";")) return out;
  do {
    out.push_back(ts.expectIdent(what));
  } while (ts.acceptPunct(","));
  return out;
}

struct PendingTransition {
  Transition t;
  std::optional<std::string> var;
  std::vector<std::string> pre;
  std::vector<std::string> post;
};

}  // namespace

NetDocument parseNetDocument(std::string_view text) {
  TokenStream ts(detail::tokenize(text));
  NetDocument doc;
  PresNet& net = doc.net;
  if (ts.atEnd()) ts.fail("empty input: expected 'net'");
  ts.expectWord("net");
  net.name = ts.expectIdent("net name");
  doc.spans.emplace(net.name, Span{});
  ts.expectPunct("{");

  std::map<std::string, bool> explicitVar;
  std::vector<PendingTransition> pending;
  while (!ts.acceptPunct("}")) {
    const Span at = ts.peek().at;
    if (ts.acceptWord("place")) {
      Place p;
      p.id = ts.expectIdent("place name");
      bool hasVar = false;
      while (!ts.acceptPunct(";")) {
        if (ts.acceptWord("var")) {
          p.var = ts.expectIdent("variable name");
          hasVar = true;
        } else if (ts.acceptWord("type")) {
          p.tokenType = ts.expectIdent("token type");
        } else if (ts.acceptWord("marked")) {
          p.marked = true;
        } else {
          ts.fail("expected 'var', 'type', 'marked' or ';' but found " + detail::describe(ts.peek()));
        }
      }
      explicitVar[p.id] = explicitVar[p.id] || hasVar;
      doc.spans.emplace(p.id, at);
      net.places.push_back(std::move(p));
    } else if (ts.acceptWord("transition")) {
      PendingTransition pt{{ts.expectIdent("transition name"), Expr::integer(0), std::nullopt}, {}, {}, {}};
      doc.spans.emplace(pt.t.id, at);
      ts.expectPunct("{");
      bool hasFn = false;
      while (!ts.acceptPunct("}")) {
        if (ts.acceptWord("pre")) {
          pt.pre = identList(ts, "place name");
        } else if (ts.acceptWord("post")) {
          pt.post = identList(ts, "place name");
        } else if (ts.acceptWord("var")) {
          pt.var = ts.expectIdent("variable name");
        } else if (ts.acceptWord("fn")) {
          pt.t.fn = ts.expression();
          hasFn = true;
        } else if (ts.acceptWord("guard")) {
          pt.t.guard = ts.expression();
        } else {
          ts.fail("expected 'pre', 'post', 'var', 'fn' or 'guard' but found " + detail::describe(ts.peek()));
        }
        ts.expectPunct(";");
      }
      if (!hasFn) throw SyntaxError(at, "transition '" + pt.t.id + "' has no 'fn'");
      pending.push_back(std::move(pt));
    } else {
      ts.fail("expected 'place', 'transition' or '}' but found " + detail::describe(ts.peek()));
    }
  }
  if (!ts.atEnd()) ts.fail("unexpected " + detail::describe(ts.peek()) + " after the net");

  // Each post-set shares one variable: the transition's override, else a
  // place's explicit variable, else v_<first post place>.
  std::map<std::string, std::string> assigned;
  for (const auto& p : net.places) {
    if (explicitVar[p.id]) assigned.emplace(p.id, p.var);
  }
  for (const auto& pt : pending) {
    if (pt.post.empty()) continue;
    std::string shared;
    if (pt.var) {
      shared = *pt.var;
    } else {
      for (const auto& p : pt.post) {
        if (auto it = assigned.find(p); it != assigned.end()) {
          shared = it->second;
          break;
        }
      }
      if (shared.empty()) shared = "v_" + pt.post.front();
    }
    for (const auto& p : pt.post) assigned.emplace(p, shared);
  }
  for (auto& p : net.places) {
    auto it = assigned.find(p.id);
    p.var = it != assigned.end() ? it->second : "v_" + p.id;
  }
  for (auto& pt : pending) {
    for (const auto& p : pt.pre) net.inputArcs.emplace_back(p, pt.t.id);
    for (const auto& p : pt.post) net.outputArcs.emplace_back(pt.t.id, p);
    net.transitions.push_back(std::move(pt.t));
  }

  auto violations = validateNet(net);
  if (!violations.empty()) {
    std::vector<Diagnostic> diags;
    for (const auto& v : violations) {
      diags.push_back({std::string(ruleName(v.rule)), v.element, v.detail, locate(doc.spans, v.element)});
    }
    throw SemanticError(std::move(diags));
  }
  return doc;
}

PresNet parsePres(std::string_view text) { return parseNetDocument(text).net; }

FsmdDocument parseFsmdDocument(std::string_view text) {
  TokenStream ts(detail::tokenize(text));
  FsmdDocument doc;
  Fsmd& m = doc.fsmd;
  if (ts.atEnd()) ts.fail("empty input: expected 'fsmd' or 'states'");
  const bool wrapped = ts.acceptWord("fsmd");
  if (wrapped) {
    m.name = ts.expectIdent("machine name");
    ts.expectPunct("{");
  }
  doc.spans.emplace(m.name, Span{});

  while (!(wrapped ? ts.acceptPunct("}") : ts.atEnd())) {
    const Span at = ts.peek().at;
    auto names = [&](std::set<std::string>& into) {
      for (auto& v : identList(ts, "variable name")) {
        doc.spans.emplace(v, at);
        into.insert(std::move(v));
      }
      ts.expectPunct(";");
    };
    if (ts.acceptWord("states")) {
      for (auto& q : identList(ts, "state name")) {
        doc.spans.emplace(q, at);
        m.states.push_back(std::move(q));
      }
      ts.expectPunct(";");
    } else if (ts.acceptWord("reset")) {
      m.reset = ts.expectIdent("state name");
      ts.expectPunct(";");
    } else if (ts.acceptWord("inputs")) {
      names(m.inputs);
    } else if (ts.acceptWord("storage")) {
      names(m.storage);
    } else if (ts.acceptWord("outputs")) {
      names(m.outputs);
    } else if (ts.peek().kind == Tok::Ident && ts.isPunct("->", 1)) {
      FsmdTransition t;
      t.source = ts.next().text;
      ts.expectPunct("->");
      t.target = ts.expectIdent("state name");
      if (ts.acceptWord("when")) {
        do {
          t.guards.push_back(ts.expression());
        } while (ts.acceptPunct(","));
      }
      if (ts.acceptPunct("{")) {
        while (!ts.acceptPunct("}")) {
          std::string target = ts.expectIdent("variable name");
          ts.expectPunct("<=");
          t.updates.push_back({std::move(target), ts.expression()});
          ts.expectPunct(";");
        }
      } else {
        ts.expectPunct(";");
      }
      // A repeated row overwrites the span, so violations point at the repeat.
      doc.spans.insert_or_assign(describe(t), at);
      m.transitions.push_back(std::move(t));
    } else {
      ts.fail("expected a declaration or 'STATE -> STATE' but found " + detail::describe(ts.peek()));
    }
  }
  if (!ts.atEnd()) ts.fail("unexpected " + detail::describe(ts.peek()) + " after the machine");

  auto violations = validateFsmd(m);
  if (!violations.empty()) {
    std::vector<Diagnostic> diags;
    for (const auto& v : violations) {
      diags.push_back({std::string(ruleName(v.rule)), v.element, v.detail, locate(doc.spans, v.element)});
    }
    throw SemanticError(std::move(diags));
  }
  return doc;
}

Fsmd parseFsmd(std::string_view text) { return parseFsmdDocument(text).fsmd; }

ModelKind sniffModel(std::string_view text) {
  const auto tokens = detail::tokenize(text);
  const auto& first = tokens.front();
  if (first.kind == Tok::Ident && first.text == "net") return ModelKind::Net;
  if (first.kind == Tok::Ident && (first.text == "fsmd" || first.text == "states")) return ModelKind::Machine;
  throw SyntaxError(first.at, "expected 'net', 'fsmd' or 'states' but found " + detail::describe(first));
}

}  // namespace presto
