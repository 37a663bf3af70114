#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "presto/expr.hpp"

namespace presto {

/// Places currently holding a token. std::set keeps the canonical sorted
/// form that doubles as state identity during conversion.
using Marking = std::set<std::string>;

std::string toString(const Marking& m);

struct Place {
  std::string id;
  std::string var;
  std::string tokenType = "int";
  bool marked = false;

  friend bool operator==(const Place&, const Place&) = default;
};

struct Transition {
  std::string id;
  Expr fn;
  std::optional<Expr> guard;

  friend bool operator==(const Transition&, const Transition&) = default;
};

class UnknownElement : public std::runtime_error {
 public:
  explicit UnknownElement(const std::string& id)
      : std::runtime_error("unknown place or transition '" + id + "'") {}
};

/// Untimed PRES+ net N = (P, V_P, K, T, I_P, O, M_0).
///
/// Places carry their variable, token type and initial marking; arcs are kept
/// as declared. Nothing is checked on insertion; validateNet reports every
/// broken rule at once.
struct PresNet {
  std::string name;
  std::vector<Place> places;
  std::vector<Transition> transitions;
  std::vector<std::pair<std::string, std::string>> inputArcs;   // (place, transition)
  std::vector<std::pair<std::string, std::string>> outputArcs;  // (transition, place)

  const Place* findPlace(std::string_view id) const;
  const Transition* findTransition(std::string_view id) const;

  const std::string& varOf(std::string_view place) const;
  Marking initialMarking() const;

  // °t and t°
  std::set<std::string> preset(std::string_view transition) const;
  std::set<std::string> postset(std::string_view transition) const;
  // °p and p°
  std::set<std::string> producers(std::string_view place) const;
  std::set<std::string> consumers(std::string_view place) const;

  // V_°t
  std::set<std::string> presetVariables(std::string_view transition) const;

  friend bool operator==(const PresNet&, const PresNet&) = default;
};

struct Adjacency {
  std::set<std::string> presetOf;
  std::set<std::string> postsetOf;
};

/// Pre- and post-set of a place or transition. Throws UnknownElement.
Adjacency adjacency(const PresNet& net, std::string_view element);

struct Ports {
  std::set<std::string> inPorts;
  std::set<std::string> outPorts;
  Marking initiallyMarked;
};

Ports classifyPorts(const PresNet& net);

/// {t | °t ⊆ m}. Guards are not consulted.
std::set<std::string> enabledTransitions(const PresNet& net, const Marking& m);

enum class NetRule {
  DuplicateName,
  NoPlaces,
  NoTransitions,
  NoInputArcs,
  UnknownArcEndpoint,
  DuplicateArc,
  EmptyPreset,
  EmptyPostset,
  PostsetVariableMismatch,
  PostsetTypeMismatch,
  UnsupportedTokenType,
  FunctionSort,
  GuardSort,
  FunctionScopeViolation,
  GuardScopeViolation,
};

std::string_view ruleName(NetRule rule);

struct NetViolation {
  NetRule rule;
  std::string element;
  std::string detail;
};

std::vector<NetViolation> validateNet(const PresNet& net);

}  // namespace presto
