#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAnalysisError = 1;
inline constexpr int kExitSpecError = 2;
inline constexpr int kExitUndetermined = 3;
inline constexpr int kExitUsage = 64;

/// Runs the command line `args` (program name first). Structured results go
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hc::cli
