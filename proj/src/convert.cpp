#include "presto/convert.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>

namespace presto {

std::string toString(const FiringSet& fs) {
  std::string out = "{";
  for (std::size_t i = 0; i < fs.transitions.size(); ++i) {
    if (i) out += ",";
    out += fs.transitions[i];
  }
  out += "}";
  if (!fs.guards.empty()) {
    out += " when ";
    for (std::size_t i = 0; i < fs.guards.size(); ++i) {
      if (i) out += ", ";
      out += toString(fs.guards[i]);
    }
  }
  return out;
}

namespace {

bool disjoint(const std::set<std::string>& a, const std::set<std::string>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return true;
}

bool consistent(const std::vector<Expr>& key) {
  for (const auto& g : key) {
    if (g.kind() == ExprKind::BoolConst && !g.boolValue()) return false;
    if (std::binary_search(key.begin(), key.end(), negateGuard(g))) return false;
  }
  return true;
}

struct Alternative {
  std::vector<std::string> transitions;
  std::vector<Expr> conditions;
};

constexpr std::size_t kMaxGroup = 20;

}  // namespace

FiringSetChoice constructSetOfTransitions(const PresNet& net, const Marking& m) {
  FiringSetChoice result;
  const auto enabledSet = enabledTransitions(net, m);
  const std::vector<std::string> enabled(enabledSet.begin(), enabledSet.end());
  if (enabled.empty()) return result;

  const std::size_t n = enabled.size();
  std::vector<std::set<std::string>> pre(n);
  for (std::size_t i = 0; i < n; ++i) pre[i] = net.preset(enabled[i]);

  // Conflict groups: connected components of "pre-sets intersect".
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!disjoint(pre[i], pre[j])) parent[find(i)] = find(j);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);

  std::vector<std::optional<Expr>> guard(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (const auto& g = net.findTransition(enabled[i])->guard) guard[i] = normalize(*g);
  }
  for (const auto& [root, members] : groups) {
    if (members.size() != 2) continue;
    const auto a = members[0];
    const auto b = members[1];
    if (guard[a] && !guard[b]) guard[b] = negateGuard(*guard[a]);
    else if (guard[b] && !guard[a]) guard[a] = negateGuard(*guard[b]);
  }

  std::vector<std::vector<Alternative>> perGroup;
  for (const auto& [root, members] : groups) {
    if (members.size() > kMaxGroup) {
      throw ConversionError("conflict group of " + std::to_string(members.size()) + " transitions at " +
                            toString(m) + " is too large to enumerate");
    }
    std::vector<Alternative> alternatives;
    const std::size_t k = members.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      bool independent = true;
      for (std::size_t i = 0; i < k && independent; ++i) {
        if (!(mask >> i & 1)) continue;
        for (std::size_t j = i + 1; j < k; ++j) {
          if ((mask >> j & 1) && !disjoint(pre[members[i]], pre[members[j]])) {
            independent = false;
            break;
          }
        }
      }
      if (!independent) continue;

      Alternative alt;
      bool valid = true;
      for (std::size_t i = 0; i < k && valid; ++i) {
        const auto t = members[i];
        if (mask >> i & 1) {
          alt.transitions.push_back(enabled[t]);
          if (guard[t]) alt.conditions.push_back(*guard[t]);
          continue;
        }
        bool addable = true;
        for (std::size_t j = 0; j < k; ++j) {
          if ((mask >> j & 1) && !disjoint(pre[t], pre[members[j]])) {
            addable = false;
            break;
          }
        }
        if (!addable) continue;
        // Left out although it could fire: only sound if its guard is false.
        if (!guard[t]) {
          valid = false;
        } else {
          alt.conditions.push_back(negateGuard(*guard[t]));
        }
      }
      if (!valid) continue;
      alt.conditions = guardKey(alt.conditions);
      if (!consistent(alt.conditions)) continue;
      alternatives.push_back(std::move(alt));
    }
    if (alternatives.empty()) {
      std::string names;
      for (auto t : members) names += (names.empty() ? "" : ",") + enabled[t];
      result.warnings.push_back("InconsistentGuards: no consistent choice in conflict group {" + names + "} at " +
                                toString(m));
      continue;
    }
    perGroup.push_back(std::move(alternatives));
  }
  if (perGroup.empty()) return result;

  std::vector<FiringSet> combined{FiringSet{}};
  for (const auto& alternatives : perGroup) {
    std::vector<FiringSet> next;
    for (const auto& partial : combined) {
      for (const auto& alt : alternatives) {
        FiringSet fs = partial;
        fs.transitions.insert(fs.transitions.end(), alt.transitions.begin(), alt.transitions.end());
        fs.guards.insert(fs.guards.end(), alt.conditions.begin(), alt.conditions.end());
        next.push_back(std::move(fs));
      }
    }
    combined = std::move(next);
  }

  for (auto& fs : combined) {
    if (fs.transitions.empty()) continue;
    std::sort(fs.transitions.begin(), fs.transitions.end());
    fs.guards = guardKey(fs.guards);
    if (!consistent(fs.guards)) {
      result.warnings.push_back("InconsistentGuards: dropped " + toString(fs) + " at " + toString(m));
      continue;
    }
    result.sets.push_back(std::move(fs));
  }
  std::sort(result.sets.begin(), result.sets.end(), [](const FiringSet& a, const FiringSet& b) {
    if (a.transitions != b.transitions) return a.transitions < b.transitions;
    return a.guards < b.guards;
  });
  return result;
}

Marking fireSet(const PresNet& net, const Marking& m, const FiringSet& fs) {
  std::vector<std::set<std::string>> pres;
  for (const auto& t : fs.transitions) {
    if (!net.findTransition(t)) throw UnknownElement(t);
    auto pre = net.preset(t);
    if (pre.empty() || !std::includes(m.begin(), m.end(), pre.begin(), pre.end())) {
      throw NotEnabled("transition '" + t + "' is not enabled at " + toString(m));
    }
    for (const auto& other : pres) {
      if (!disjoint(other, pre)) throw NotEnabled("transition '" + t + "' conflicts with another member of the set");
    }
    pres.push_back(std::move(pre));
  }
  Marking next = m;
  for (const auto& pre : pres) {
    for (const auto& p : pre) next.erase(p);
  }
  Marking produced;
  for (const auto& t : fs.transitions) {
    for (const auto& p : net.postset(t)) {
      if (next.contains(p)) throw UnsafeMarking(p, "already holds a token when '" + t + "' fires");
      if (!produced.insert(p).second) throw UnsafeMarking(p, "produced twice in one step");
    }
  }
  next.insert(produced.begin(), produced.end());
  return next;
}

const std::string& outputVariable(const PresNet& net, const std::string& transition) {
  const auto post = net.postset(transition);
  if (post.empty()) throw ConversionError("transition '" + transition + "' has no output place");
  return net.varOf(*post.begin());
}

Conversion presToFsmd(const PresNet& net, const ConversionConfig& config) {
  if (config.stateBound < 1) throw std::invalid_argument("state bound must be at least 1");
  Conversion out;
  Fsmd& f = out.fsmd;
  f.name = net.name;

  const Marking initial = net.initialMarking();
  for (const auto& p : net.places) {
    if (p.marked) {
      f.inputs.insert(p.var);
      if (!net.producers(p.id).empty()) f.storage.insert(p.var);
    } else {
      f.storage.insert(p.var);
    }
    if (net.consumers(p.id).empty()) f.outputs.insert(p.var);
  }

  std::map<Marking, std::size_t> index;
  std::deque<Marking> worklist;
  auto intern = [&](const Marking& m) -> const std::string& {
    auto [it, fresh] = index.emplace(m, out.report.states.size());
    if (fresh) {
      if (out.report.states.size() == config.stateBound) throw StateBoundExceeded(config.stateBound);
      out.report.states.push_back({"q" + std::to_string(out.report.states.size()), m, 0});
      f.states.push_back(out.report.states.back().name);
      worklist.push_back(m);
    }
    return out.report.states[it->second].name;
  };
  f.reset = intern(initial);

  while (!worklist.empty()) {
    const Marking q = worklist.front();
    worklist.pop_front();
    const std::size_t qIndex = index.at(q);

    auto choice = constructSetOfTransitions(net, q);
    out.report.warnings.insert(out.report.warnings.end(), choice.warnings.begin(), choice.warnings.end());
    std::size_t emitted = 0;
    for (const auto& fs : choice.sets) {
      Marking next;
      try {
        next = fireSet(net, q, fs);
      } catch (const UnsafeMarking& e) {
        if (config.onUnsafe == UnsafePolicy::Error) throw;
        out.report.warnings.push_back(std::string("rejected ") + toString(fs) + " at " + toString(q) + ": " +
                                      e.what());
        continue;
      }
      FsmdTransition t;
      t.source = out.report.states[qIndex].name;
      t.target = intern(next);
      t.guards = fs.guards;
      for (const auto& id : fs.transitions) {
        t.updates.push_back({outputVariable(net, id), net.findTransition(id)->fn});
      }
      std::sort(t.updates.begin(), t.updates.end(),
                [](const Assignment& a, const Assignment& b) { return a.target < b.target; });
      f.transitions.push_back(std::move(t));
      ++emitted;
    }
    out.report.states[qIndex].firingSets = emitted;
  }
  return out;
}

}  // namespace presto
