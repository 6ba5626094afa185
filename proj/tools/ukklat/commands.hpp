#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "config.hpp"

namespace ukklat {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitUsage = 2 };

struct RunOptions {
  std::optional<std::uint64_t> seed;          // overrides every seed in the config
  std::optional<std::filesystem::path> out;   // overrides output.dir
  unsigned threads = 1;
  std::ostream* stdout_stream = nullptr;      // defaults to std::cout / std::cerr
  std::ostream* stderr_stream = nullptr;
};

// Each command writes its records (to files under the output directory, or
// to stdout) and returns the exit code. Config problems surface as
// ukk::ConfigError and are mapped to kExitUsage by the caller.

int cmd_space_check(const ExperimentConfig& cfg, const RunOptions& opts);
int cmd_estimate(const ExperimentConfig& cfg, const RunOptions& opts);
int cmd_renorm(const ExperimentConfig& cfg, const RunOptions& opts);
int cmd_ukk(const ExperimentConfig& cfg, const RunOptions& opts);

}  // namespace ukklat
