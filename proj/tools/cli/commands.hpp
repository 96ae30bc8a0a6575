#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace actnet::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitRuntime = 3,
};

struct ParseResult {
  std::optional<RunConfig> config;  // set when a run should proceed
  int exit_code = kExitOk;
  std::string message;              // help text or error, for the caller to print
};

/// Parses the command line (argv[0] is the program name), an optional
/// `--config` file and `--manifest`. Returns a resolved, validated config or
/// the exit code and message to report.
ParseResult parse_config(const std::vector<std::string>& args);

/// Runs a validated config. All files land inside `config.out_dir`.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_config followed by dispatch, mapping exceptions to exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace actnet::cli
