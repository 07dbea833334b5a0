#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace censim::cli {

// Process exit codes. Config problems, bad parameters, and solver
// breakdowns are distinguishable by status alone.
enum ExitCode : int {
  kOk = 0,
  kConfigUnreadable = 2,
  kInvalidParameter = 3,
  kSolverFailure = 4,
};

// Executes one subcommand driven by a JSON config file. Result CSV and a
// plain-text summary land in out_dir (created if needed); `phi` prints to
// `out` instead. seed_override replaces the config seed where one applies.
// Diagnostics go to `err`; the return value is the exit code.
int run(const std::string& subcommand, const std::string& config_path,
        const std::string& out_dir,
        std::optional<std::uint64_t> seed_override, std::ostream& out,
        std::ostream& err);

}  // namespace censim::cli
