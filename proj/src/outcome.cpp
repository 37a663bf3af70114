#include "presto/outcome.hpp"

namespace presto {

std::string toString(const TokenState& ts) {
  std::string out = "{";
  bool first = true;
  for (const auto& [place, value] : ts) {
    if (!first) out += ", ";
    first = false;
    out += place + ": " + value.str();
  }
  return out + "}";
}

std::string_view toString(RunStatus status) {
  switch (status) {
    case RunStatus::Quiescent: return "Quiescent";
    case RunStatus::StepBoundExceeded: return "StepBoundExceeded";
    case RunStatus::Deadlock: return "Deadlock";
  }
  return "?";
}

std::string_view toString(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::Equivalent: return "Equivalent";
    case VerdictStatus::NotEquivalent: return "NotEquivalent";
    case VerdictStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Verdict Verdict::equivalent(std::string method) {
  Verdict v;
  v.status = VerdictStatus::Equivalent;
  v.method = std::move(method);
  return v;
}

Verdict Verdict::notEquivalent(std::string method, Witness witness) {
  Verdict v;
  v.status = VerdictStatus::NotEquivalent;
  v.method = std::move(method);
  v.witness = std::move(witness);
  return v;
}

Verdict Verdict::inconclusive(std::string method, std::string reason) {
  Verdict v;
  v.status = VerdictStatus::Inconclusive;
  v.method = std::move(method);
  v.reason = std::move(reason);
  return v;
}

}  // namespace presto
