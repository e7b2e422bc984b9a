#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace widthkit::cli {

// Exit codes shared with the tests.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDifferent = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitSat = 10;
inline constexpr int kExitUnsat = 20;

/// Runs the command line `args` (program name first) against the given
/// streams and returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace widthkit::cli
