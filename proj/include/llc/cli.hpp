#pragma once

#include <string>
#include <vector>

namespace llc::cli {

// Exit codes: scripts depend on these values.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

struct RunResult {
  int exit_code;
  std::string output;
};

/// Parses and dispatches one invocation. `args` excludes the program name.
/// Never throws; every failure is reported in the output envelope and mapped
/// to an exit code.
RunResult run(const std::vector<std::string>& args);

}  // namespace llc::cli
