#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace itm::cli {

inline constexpr const char* kVersion = "itmtool 1.0.0";

enum ExitCode { ok = 0, config_error = 1, budget_exceeded = 2, verification_failure = 3 };

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out names a directory; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace itm::cli
