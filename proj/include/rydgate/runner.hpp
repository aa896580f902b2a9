#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "rydgate/config.hpp"

namespace rydgate {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitConvergence = 2, kExitInfeasible = 3 };

struct RunOutcome {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> files;
};

/// Runs the configured mode, writes its tables under `out_dir` and logs a
/// short summary to `log`. Numerical failures map to exit codes instead of
/// escaping; config problems throw ConfigError.
RunOutcome run(const ExperimentConfig& config, const std::filesystem::path& out_dir, bool json, std::ostream& log);

}  // namespace rydgate
