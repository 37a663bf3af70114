#include "presto/report.hpp"

#include <limits>

namespace presto {

using nlohmann::json;

json toJson(const Int& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
    return static_cast<long long>(v);
  }
  return v.str();
}

json toJson(const TokenState& ts) {
  json out = json::object();
  for (const auto& [place, value] : ts) out[place] = toJson(value);
  return out;
}

json toJson(const FiringSet& fs) {
  json guards = json::array();
  for (const auto& g : fs.guards) guards.push_back(toString(g));
  return {{"transitions", fs.transitions}, {"guards", guards}};
}

json toJson(const RunOutcome& run) {
  json trace = json::array();
  for (const auto& step : run.trace) trace.push_back({{"fired", toJson(step.fired)}, {"state", toJson(step.state)}});
  return {{"status", toString(run.status)}, {"steps", run.steps}, {"finalState", toJson(run.finalState)},
          {"trace", trace}};
}

namespace {

json optionalValue(const std::optional<Int>& v) { return v ? toJson(*v) : json(nullptr); }

}  // namespace

json toJson(const Verdict& v) {
  json out = {{"status", toString(v.status)}, {"method", v.method}};
  if (!v.reason.empty()) out["reason"] = v.reason;
  json observations = json::array();
  for (const auto& o : v.observations) {
    observations.push_back(
        {{"left", o.left}, {"right", o.right}, {"leftValue", optionalValue(o.leftValue)},
         {"rightValue", optionalValue(o.rightValue)}});
  }
  out["observations"] = observations;
  json forms = json::array();
  for (const auto& f : v.forms) {
    forms.push_back({{"condition", f.condition}, {"leftVariable", f.leftVariable},
                     {"rightVariable", f.rightVariable}, {"leftForm", f.leftForm}, {"rightForm", f.rightForm}});
  }
  out["forms"] = forms;
  if (v.witness) {
    const auto& w = *v.witness;
    json ports = json::array();
    for (const auto& o : w.ports) {
      ports.push_back({{"left", o.left}, {"right", o.right}, {"leftValue", optionalValue(o.leftValue)},
                       {"rightValue", optionalValue(o.rightValue)}});
    }
    json runs = json::array();
    for (const auto& r : w.runs) runs.push_back(toJson(r));
    out["witness"] = {{"summary", w.summary},     {"inputs", toJson(w.inputs)},
                      {"ports", ports},           {"variable", w.variable},
                      {"leftForm", w.leftForm},   {"rightForm", w.rightForm},
                      {"runs", runs},             {"interpretation", w.interpretation}};
  }
  return out;
}

json toJson(const ConversionReport& r) {
  json states = json::array();
  for (const auto& s : r.states) {
    states.push_back({{"name", s.name}, {"marking", s.marking}, {"firingSets", s.firingSets}});
  }
  return {{"states", states}, {"warnings", r.warnings}};
}

json toJson(const Diagnostic& d) {
  return {{"rule", d.rule}, {"element", d.element}, {"detail", d.detail}, {"line", d.at.line},
          {"column", d.at.column}};
}

}  // namespace presto
