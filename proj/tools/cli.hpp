#pragma once

#include <ostream>

namespace bwp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitInfeasible = 4;

/// Parses argv, runs one subcommand and writes CSV or JSON to --output (or
/// `out`). Diagnostics go to `err` as single lines.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bwp::cli
