#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace monty {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name. MONTY_SEED supplies
/// the default simulation seed; --seed overrides it.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace monty
