#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ukk/lattice.hpp"
#include "ukk/norm.hpp"
#include "ukk/renorm.hpp"
#include "ukk/ukk_harness.hpp"

namespace ukklat {

struct SpaceCheckBlock {
  std::uint64_t samples = 2000;
  double tol = ukk::kAuditTol;
  std::optional<std::uint64_t> seed;
};

struct EstimateBlock {
  std::uint64_t budget = 2000;
  std::optional<std::uint64_t> seed;
  std::vector<double> r_values;
  double kr_tail_tol = 1e-6;
  std::optional<double> lower_p;
  std::uint64_t lower_p_budget = 500;
  std::uint64_t verify_trials = 1000;
};

enum class RenormMode { Auto, Exact, Heuristic };

struct RandomVectors {
  std::uint64_t count = 0;
  std::size_t max_support = 8;
};

struct RenormBlock {
  double p = 1.0;
  std::vector<ukk::LatticeVector> vectors;
  RandomVectors random;
  RenormMode mode = RenormMode::Auto;
  std::optional<std::uint64_t> seed;
  ukk::RenormOptions options;
};

struct UkkBlock {
  ukk::BumpCampaign campaign;  // seed and threads are filled in at run time
  std::optional<std::uint64_t> seed;
};

struct OutputBlock {
  std::optional<std::filesystem::path> dir;
  bool include_sequences = true;
};

/// A parsed experiment config. Every block except "space" is optional.
struct ExperimentConfig {
  nlohmann::json space_spec;
  std::optional<ukk::NormOracle> space;
  std::optional<std::uint64_t> seed;
  SpaceCheckBlock space_check;
  std::optional<EstimateBlock> estimate;
  std::optional<RenormBlock> renorm;
  std::optional<UkkBlock> ukk;
  OutputBlock output;
};

/// Parses a config document. Throws ukk::ConfigError naming the field.
ExperimentConfig parse_config(const nlohmann::json& doc);

/// Reads and parses a file; JSON syntax errors are reported as ConfigError
/// with "line L, column C".
ExperimentConfig load_config(const std::filesystem::path& path);

/// Reads a JSON file, reporting syntax errors with line and column.
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Command seed > block seed > top-level seed; throws ConfigError when none is set.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& override_seed,
                           const std::optional<std::uint64_t>& block_seed,
                           const ExperimentConfig& cfg, const std::string& block);

}  // namespace ukklat
