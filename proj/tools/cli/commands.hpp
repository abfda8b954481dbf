#pragma once

#include <filesystem>
#include <iosfwd>

#include "cli/config.hpp"
#include "degenlab/error.hpp"

namespace degenlab::cli {

/// Exit-code contract of every subcommand.
enum ExitCode : int { kPass = 0, kFailed = 1, kUsage = 2, kNumerical = 3 };

/// Maps a library error onto the exit-code contract.
int exit_code_for(ErrorCode code) noexcept;

/// Each command writes its files under `out` and a one-line summary to `log`.
int cmd_verify(const ExperimentConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_solve(const ExperimentConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_sweep(const ExperimentConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_localize(const ExperimentConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_estimate(const ExperimentConfig& cfg, const std::filesystem::path& out, std::ostream& log);

}  // namespace degenlab::cli
