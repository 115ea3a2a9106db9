#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace rebalance::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

// Runs the command line `args` (args[0] is the program name). The JSON
// report and --help text go to `out`, diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rebalance::cli
