#include "presto/fsmd.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace presto {

std::set<std::string> Fsmd::variables() const {
  std::set<std::string> out = inputs;
  out.insert(storage.begin(), storage.end());
  out.insert(outputs.begin(), outputs.end());
  return out;
}

std::vector<std::size_t> Fsmd::outgoing(std::string_view state) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    if (transitions[i].source == state) out.push_back(i);
  }
  return out;
}

std::set<std::string> Fsmd::terminalStates() const {
  std::set<std::string> out(states.begin(), states.end());
  for (const auto& t : transitions) out.erase(t.source);
  return out;
}

bool Fsmd::hasReachableCycle() const {
  enum class Mark { White, Grey, Black };
  std::map<std::string, Mark> mark;
  std::function<bool(const std::string&)> visit = [&](const std::string& s) {
    mark[s] = Mark::Grey;
    for (auto i : outgoing(s)) {
      const auto& next = transitions[i].target;
      auto m = mark.contains(next) ? mark[next] : Mark::White;
      if (m == Mark::Grey) return true;
      if (m == Mark::White && visit(next)) return true;
    }
    mark[s] = Mark::Black;
    return false;
  };
  return visit(reset);
}

std::vector<Expr> guardKey(const std::vector<Expr>& guards) {
  std::vector<Expr> key;
  for (const auto& g : guards) {
    Expr n = normalize(g);
    if (n.kind() == ExprKind::BoolConst && n.boolValue()) continue;
    key.push_back(n);
  }
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  return key;
}

SymbolicStore freshStore(const Fsmd& m) {
  SymbolicStore store;
  for (const auto& v : m.variables()) store.emplace(v, Expr::var(v));
  return store;
}

SymbolicStore applyUpdateSet(const UpdateSet& updates, const SymbolicStore& store) {
  Bindings bindings(store.begin(), store.end());
  SymbolicStore next = store;
  std::set<std::string> assigned;
  for (const auto& a : updates) {
    if (!store.contains(a.target)) throw UnknownVariable(a.target);
    if (!assigned.insert(a.target).second) throw DuplicateTarget(a.target);
    for (const auto& v : freeVariables(a.value)) {
      if (!store.contains(v)) throw UnknownVariable(v);
    }
    next.insert_or_assign(a.target, substitute(a.value, bindings));
  }
  return next;
}

PathEnumeration pathEnumerate(const Fsmd& m, std::string_view from, const std::set<std::string>& to,
                              std::size_t bound) {
  if (bound < 1) throw std::invalid_argument("path bound must be at least 1");
  PathEnumeration result;
  Path current;
  std::set<std::string> onPath;

  std::function<void(const std::string&)> walk = [&](const std::string& state) {
    if (to.contains(state)) result.paths.push_back(current);
    onPath.insert(state);
    for (auto i : m.outgoing(state)) {
      const auto& next = m.transitions[i].target;
      if (onPath.contains(next)) continue;
      if (current.size() == bound) {
        result.truncated = true;
        continue;
      }
      current.push_back(i);
      walk(next);
      current.pop_back();
    }
    onPath.erase(state);
  };
  walk(std::string(from));
  return result;
}

PathTransformation pathTransformation(const Fsmd& m, const Path& path) {
  SymbolicStore store = freshStore(m);
  std::vector<Expr> conditions;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (path[k] >= m.transitions.size()) throw BrokenPath("transition index out of range");
    const auto& t = m.transitions[path[k]];
    if (k > 0 && m.transitions[path[k - 1]].target != t.source) {
      throw BrokenPath("step " + std::to_string(k) + " starts at " + t.source + " but the previous step ends at " +
                       m.transitions[path[k - 1]].target);
    }
    Bindings bindings(store.begin(), store.end());
    for (const auto& g : t.guards) conditions.push_back(substitute(g, bindings));
    store = applyUpdateSet(t.updates, store);
  }
  Expr condition = conditions.empty()     ? Expr::boolean(true)
                   : conditions.size() == 1 ? conditions.front()
                                            : Expr::land(conditions);
  return {normalize(condition), std::move(store)};
}

std::string_view ruleName(FsmdRule rule) {
  switch (rule) {
    case FsmdRule::DuplicateState: return "DuplicateState";
    case FsmdRule::MissingReset: return "MissingReset";
    case FsmdRule::UnknownState: return "UnknownState";
    case FsmdRule::NondeterministicF: return "NondeterministicF";
    case FsmdRule::IllegalTarget: return "IllegalTarget";
    case FsmdRule::DuplicateTarget: return "DuplicateTarget";
    case FsmdRule::UnknownVariable: return "UnknownVariable";
    case FsmdRule::GuardSort: return "GuardSort";
    case FsmdRule::UpdateSort: return "UpdateSort";
    case FsmdRule::OutputNotVariable: return "OutputNotVariable";
  }
  return "?";
}

std::vector<FsmdViolation> validateFsmd(const Fsmd& m) {
  std::vector<FsmdViolation> out;
  auto report = [&](FsmdRule rule, std::string element, std::string detail) {
    out.push_back({rule, std::move(element), std::move(detail)});
  };

  std::set<std::string> states;
  for (const auto& s : m.states) {
    if (!states.insert(s).second) report(FsmdRule::DuplicateState, s, "state declared twice");
  }
  if (!states.contains(m.reset)) report(FsmdRule::MissingReset, m.reset, "reset state is not a declared state");

  for (const auto& o : m.outputs) {
    if (!m.inputs.contains(o) && !m.storage.contains(o)) {
      report(FsmdRule::OutputNotVariable, o, "output is neither an input nor a storage variable");
    }
  }

  const auto readable = m.variables();
  std::set<std::string> writable = m.storage;
  writable.insert(m.outputs.begin(), m.outputs.end());

  std::map<std::pair<std::string, std::vector<Expr>>, std::size_t> keys;
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const auto& t = m.transitions[i];
    const std::string label = describe(t);
    if (!states.contains(t.source)) report(FsmdRule::UnknownState, label, "unknown source " + t.source);
    if (!states.contains(t.target)) report(FsmdRule::UnknownState, label, "unknown target " + t.target);

    auto [it, fresh] = keys.emplace(std::make_pair(t.source, guardKey(t.guards)), i);
    if (!fresh) {
      report(FsmdRule::NondeterministicF, label,
             "same state and guard set as transition #" + std::to_string(it->second));
    }

    for (const auto& g : t.guards) {
      if (g.sort() != Sort::Bool) report(FsmdRule::GuardSort, label, "guard " + toString(g) + " is not boolean");
      for (const auto& v : freeVariables(g)) {
        if (!readable.contains(v)) report(FsmdRule::UnknownVariable, label, "guard reads unknown '" + v + "'");
      }
    }
    std::set<std::string> assigned;
    for (const auto& a : t.updates) {
      if (!writable.contains(a.target)) {
        report(FsmdRule::IllegalTarget, label, "'" + a.target + "' is not a storage or output variable");
      }
      if (!assigned.insert(a.target).second) {
        report(FsmdRule::DuplicateTarget, label, "'" + a.target + "' assigned twice");
      }
      if (a.value.sort() != Sort::Int) {
        report(FsmdRule::UpdateSort, label, "'" + a.target + "' is assigned a boolean");
      }
      for (const auto& v : freeVariables(a.value)) {
        if (!readable.contains(v)) report(FsmdRule::UnknownVariable, label, "update reads unknown '" + v + "'");
      }
    }
  }
  return out;
}

std::vector<std::string> updateLabels(const FsmdTransition& t) {
  std::vector<std::string> out;
  for (const auto& a : t.updates) {
    auto symbols = appliedSymbols(a.value);
    out.insert(out.end(), symbols.begin(), symbols.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string describe(const FsmdTransition& t) {
  std::string out = t.source + " -> " + t.target;
  if (!t.guards.empty()) {
    out += " when ";
    for (std::size_t i = 0; i < t.guards.size(); ++i) {
      if (i) out += ", ";
      out += toString(t.guards[i]);
    }
  }
  return out;
}

}  // namespace presto
