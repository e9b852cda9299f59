#pragma once

#include <string>

#include <json.hpp>

#include "halfbloch/cli/config.hpp"

namespace halfbloch::cli {

enum class Format { Json, Csv };

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParse = 2,
  kExitGuard = 3,
  kExitNonConvergence = 4,
};

struct CommandResult {
  int exit_code = kExitOk;
  /// Report in the requested format (may be present on failure too).
  std::string output;
  /// Human-readable reason for a nonzero exit code.
  std::string error;
};

nlohmann::json cmd_classify(const ProblemConfig& cfg);

/// "converged" is false when the series tail stays above tail_tol;
/// run_command turns that into exit code 4.
nlohmann::json cmd_bloch(const ProblemConfig& cfg);

struct OracleOutcome {
  nlohmann::json report;
  bool triangular = true;
};
OracleOutcome cmd_oracle(const ProblemConfig& cfg);

nlohmann::json cmd_multiplicity(const ProblemConfig& cfg);

nlohmann::json cmd_fermi(const ProblemConfig& cfg);

/// Runs one command, mapping library errors to exit codes: 2 parse, 3
/// mathematical guard, 4 non-convergence.
CommandResult run_command(const std::string& command, const ProblemConfig& cfg, Format format);

/// As above, loading the config from `config_path` first.
CommandResult run_command_file(const std::string& command, const std::string& config_path,
                               Format format);

}  // namespace halfbloch::cli
