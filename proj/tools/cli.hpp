#pragma once

#include <iosfwd>

namespace hbl::cli
{

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

/// Parses the command line, runs the subcommand and writes its report.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hbl::cli
