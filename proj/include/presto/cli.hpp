#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "presto/outcome.hpp"

namespace presto {

enum ExitCode : int { kExitOk = 0, kExitNotEquivalent = 1, kExitInconclusive = 2, kExitUsage = 3 };

int exitCodeFor(const Verdict& v);

/// Runs one command line (without the program name). Human-readable output
/// goes to `out`, diagnostics to `err`.
int runCommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace presto
