#pragma once

#include <json.hpp>

#include "presto/convert.hpp"
#include "presto/dsl.hpp"
#include "presto/outcome.hpp"

namespace presto {

inline constexpr int kReportSchemaVersion = 1;

nlohmann::json toJson(const Int& v);
nlohmann::json toJson(const TokenState& ts);
nlohmann::json toJson(const FiringSet& fs);
nlohmann::json toJson(const RunOutcome& run);
nlohmann::json toJson(const Verdict& v);
nlohmann::json toJson(const ConversionReport& r);
nlohmann::json toJson(const Diagnostic& d);

}  // namespace presto
