#pragma once

#include <ostream>

namespace mubent::cli {

/// Exit codes: 0 ran (whatever the verdict), 2 input error, 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Entry point for the `mubent` tool. Subcommands: construct-mubs,
/// verify-mubs, evaluate, scan, optimize, sample.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mubent::cli
