#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

namespace zeno::app {

/// Process exit codes, stable across releases.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitConfig = 2,
  kExitDiverged = 3,
  kExitTarget = 4,
  kExitVerify = 5,
};

struct CommandOptions {
  std::filesystem::path config;
  std::filesystem::path out;
  /// Overrides the sweep worker count when non-zero.
  std::size_t workers = 0;
};

int cmd_simulate(const CommandOptions& opts, std::ostream& log);
int cmd_entropy(const CommandOptions& opts, std::ostream& log);
int cmd_sweep(const CommandOptions& opts, std::ostream& log);
int cmd_target(const CommandOptions& opts, std::ostream& log);
int cmd_verify(const CommandOptions& opts, std::ostream& log);

/// Runs one subcommand by name and maps exceptions onto exit codes.
int run_command(std::string_view name, const CommandOptions& opts, std::ostream& log, std::ostream& err);

}  // namespace zeno::app
