#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace graphon_dyn::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 2;
inline constexpr int kUnsupportedSize = 3;
inline constexpr int kRuntimeError = 4;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`; files land in the --out directory.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace graphon_dyn::cli
