#include "presto/pres.hpp"

#include <algorithm>
#include <map>

namespace presto {

std::string toString(const Marking& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& p : m) {
    if (!first) out += ",";
    first = false;
    out += p;
  }
  return out + "}";
}

const Place* PresNet::findPlace(std::string_view id) const {
  auto it = std::find_if(places.begin(), places.end(), [&](const Place& p) { return p.id == id; });
  return it == places.end() ? nullptr : &*it;
}

const Transition* PresNet::findTransition(std::string_view id) const {
  auto it = std::find_if(transitions.begin(), transitions.end(),
                         [&](const Transition& t) { return t.id == id; });
  return it == transitions.end() ? nullptr : &*it;
}

const std::string& PresNet::varOf(std::string_view place) const {
  const Place* p = findPlace(place);
  if (!p) throw UnknownElement(std::string(place));
  return p->var;
}

Marking PresNet::initialMarking() const {
  Marking m;
  for (const auto& p : places) {
    if (p.marked) m.insert(p.id);
  }
  return m;
}

std::set<std::string> PresNet::preset(std::string_view transition) const {
  std::set<std::string> out;
  for (const auto& [p, t] : inputArcs) {
    if (t == transition) out.insert(p);
  }
  return out;
}

std::set<std::string> PresNet::postset(std::string_view transition) const {
  std::set<std::string> out;
  for (const auto& [t, p] : outputArcs) {
    if (t == transition) out.insert(p);
  }
  return out;
}

std::set<std::string> PresNet::producers(std::string_view place) const {
  std::set<std::string> out;
  for (const auto& [t, p] : outputArcs) {
    if (p == place) out.insert(t);
  }
  return out;
}

std::set<std::string> PresNet::consumers(std::string_view place) const {
  std::set<std::string> out;
  for (const auto& [p, t] : inputArcs) {
    if (p == place) out.insert(t);
  }
  return out;
}

std::set<std::string> PresNet::presetVariables(std::string_view transition) const {
  std::set<std::string> out;
  for (const auto& p : preset(transition)) {
    if (const Place* place = findPlace(p)) out.insert(place->var);
  }
  return out;
}

Adjacency adjacency(const PresNet& net, std::string_view element) {
  if (net.findTransition(element)) return {net.preset(element), net.postset(element)};
  if (net.findPlace(element)) return {net.producers(element), net.consumers(element)};
  throw UnknownElement(std::string(element));
}

Ports classifyPorts(const PresNet& net) {
  Ports ports;
  for (const auto& p : net.places) {
    if (net.producers(p.id).empty()) ports.inPorts.insert(p.id);
    if (net.consumers(p.id).empty()) ports.outPorts.insert(p.id);
  }
  ports.initiallyMarked = net.initialMarking();
  return ports;
}

std::set<std::string> enabledTransitions(const PresNet& net, const Marking& m) {
  std::set<std::string> out;
  for (const auto& t : net.transitions) {
    auto pre = net.preset(t.id);
    if (pre.empty()) continue;
    if (std::includes(m.begin(), m.end(), pre.begin(), pre.end())) out.insert(t.id);
  }
  return out;
}

std::string_view ruleName(NetRule rule) {
  switch (rule) {
    case NetRule::DuplicateName: return "DuplicateName";
    case NetRule::NoPlaces: return "NoPlaces";
    case NetRule::NoTransitions: return "NoTransitions";
    case NetRule::NoInputArcs: return "NoInputArcs";
    case NetRule::UnknownArcEndpoint: return "UnknownArcEndpoint";
    case NetRule::DuplicateArc: return "DuplicateArc";
    case NetRule::EmptyPreset: return "EmptyPreset";
    case NetRule::EmptyPostset: return "EmptyPostset";
    case NetRule::PostsetVariableMismatch: return "PostsetVariableMismatch";
    case NetRule::PostsetTypeMismatch: return "PostsetTypeMismatch";
    case NetRule::UnsupportedTokenType: return "UnsupportedTokenType";
    case NetRule::FunctionSort: return "FunctionSort";
    case NetRule::GuardSort: return "GuardSort";
    case NetRule::FunctionScopeViolation: return "FunctionScopeViolation";
    case NetRule::GuardScopeViolation: return "GuardScopeViolation";
  }
  return "?";
}

std::vector<NetViolation> validateNet(const PresNet& net) {
  std::vector<NetViolation> out;
  auto report = [&](NetRule rule, std::string element, std::string detail) {
    out.push_back({rule, std::move(element), std::move(detail)});
  };

  std::map<std::string, int> names;
  for (const auto& p : net.places) ++names[p.id];
  for (const auto& t : net.transitions) ++names[t.id];
  for (const auto& [name, count] : names) {
    if (count > 1) report(NetRule::DuplicateName, name, "declared " + std::to_string(count) + " times");
  }

  if (net.places.empty()) report(NetRule::NoPlaces, net.name, "the net declares no places");
  if (net.transitions.empty()) report(NetRule::NoTransitions, net.name, "the net declares no transitions");
  if (net.inputArcs.empty()) report(NetRule::NoInputArcs, net.name, "the net has no input arcs");

  for (const auto& p : net.places) {
    if (p.tokenType != "int") {
      report(NetRule::UnsupportedTokenType, p.id, "token type '" + p.tokenType + "' (only int)");
    }
  }

  auto checkArcs = [&](const auto& arcs, bool placeFirst) {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& arc : arcs) {
      const auto& place = placeFirst ? arc.first : arc.second;
      const auto& transition = placeFirst ? arc.second : arc.first;
      const std::string label = arc.first + " -> " + arc.second;
      if (!net.findPlace(place)) report(NetRule::UnknownArcEndpoint, label, "no place '" + place + "'");
      if (!net.findTransition(transition)) {
        report(NetRule::UnknownArcEndpoint, label, "no transition '" + transition + "'");
      }
      if (!seen.insert(arc).second) report(NetRule::DuplicateArc, label, "arc declared twice");
    }
  };
  checkArcs(net.inputArcs, true);
  checkArcs(net.outputArcs, false);

  for (const auto& t : net.transitions) {
    const auto pre = net.preset(t.id);
    const auto post = net.postset(t.id);
    if (pre.empty()) report(NetRule::EmptyPreset, t.id, "transition has no input places");
    if (post.empty()) report(NetRule::EmptyPostset, t.id, "transition has no output places");

    std::set<std::string> vars, types;
    for (const auto& p : post) {
      if (const Place* place = net.findPlace(p)) {
        vars.insert(place->var);
        types.insert(place->tokenType);
      }
    }
    if (vars.size() > 1) {
      std::string listed;
      for (const auto& v : vars) listed += (listed.empty() ? "" : ", ") + v;
      report(NetRule::PostsetVariableMismatch, t.id, "output places use variables " + listed);
    }
    if (types.size() > 1) report(NetRule::PostsetTypeMismatch, t.id, "output places differ in token type");

    const auto scope = net.presetVariables(t.id);
    if (t.fn.sort() != Sort::Int) {
      report(NetRule::FunctionSort, t.id, "function must be integer-valued");
    }
    for (const auto& v : freeVariables(t.fn)) {
      if (!scope.contains(v)) {
        report(NetRule::FunctionScopeViolation, t.id, "function reads '" + v + "' outside its input places");
      }
    }
    if (t.guard) {
      if (t.guard->sort() != Sort::Bool) report(NetRule::GuardSort, t.id, "guard must be boolean");
      for (const auto& v : freeVariables(*t.guard)) {
        if (!scope.contains(v)) {
          report(NetRule::GuardScopeViolation, t.id, "guard reads '" + v + "' outside its input places");
        }
      }
    }
  }
  return out;
}

}  // namespace presto
