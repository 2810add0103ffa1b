#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace exqmc {

enum ExitCode : int {
  kExitPass = 0,
  kExitAssertion = 1,
  kExitUsage = 2,
  kExitCap = 3,
};

// Environment variable overriding the default brute-force cap.
inline constexpr const char* kCapEnv = "EXQMC_CAP";

// Parses argv, runs one subcommand and writes its report to --output (or
// `out`). Diagnostics go to `err`. Returns an ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace exqmc
