#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "presto/dsl.hpp"
#include "presto/equiv.hpp"

namespace presto {

/// A model file named by a scenario. Nets keep their source; machines are
/// produced on demand by conversion.
struct Model {
  std::filesystem::path path;
  std::optional<PresNet> net;
  std::optional<Fsmd> machine;
};

/// Reads a .pres or .fsmd file, deciding the kind from its first keyword.
Model loadModel(const std::filesystem::path& path);

/// The machine of a model, converting a net with default settings.
Fsmd machineOf(const Model& m);

enum class PresCheck { Cardinality, Functional };

struct Scenario {
  std::string name;
  Model left;
  std::optional<Model> right;
  PortMap ports;
  NameMap outputMap;  // machine outputs, left -> right
  NameMap inputMap;   // machine inputs, left -> right
  CheckOptions options;
  Strategy strategy = Strategy::Symbolic;
  PresCheck check = PresCheck::Functional;
  std::size_t schedules = 1;
  SpanTable spans;
};

/// Loads the referenced models (relative paths resolve against `baseDir`) and
/// checks that every name in the maps and inputs exists in them.
Scenario parseScenario(std::string_view text, const std::filesystem::path& baseDir);
Scenario loadScenario(const std::filesystem::path& path);

std::string readFile(const std::filesystem::path& path);

}  // namespace presto
