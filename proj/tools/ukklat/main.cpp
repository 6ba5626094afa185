#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "ukk/error.hpp"
#include "ukk/norm_spec.hpp"
#include "ukk/report_json.hpp"

namespace {

using nlohmann::json;

struct RenormFlags {
  std::string space;
  std::string vector;
  double p = 0.0;
  bool exact = false;
  bool heuristic = false;
};

// `renorm` may run from --space/--p/--vector files instead of (or on top of) --config.
ukklat::ExperimentConfig renorm_config(const std::string& config_path, const RenormFlags& f) {
  ukklat::ExperimentConfig cfg;
  if (!config_path.empty()) {
    cfg = ukklat::load_config(config_path);
  } else if (!f.space.empty()) {
    const json space = ukklat::read_json_file(f.space);
    if (space.is_object() && space.contains("space")) {
      cfg = ukklat::parse_config(space);
    } else {
      cfg.space_spec = space;
      cfg.space = ukk::parse_norm_spec(space, "space");
    }
  } else {
    throw ukk::ConfigError("--config", "renorm needs --config or --space");
  }

  if (f.p != 0.0 || !f.vector.empty()) {
    if (!cfg.renorm) {
      if (f.p == 0.0) throw ukk::ConfigError("--p", "required without a renorm block");
      cfg.renorm.emplace();
    }
    if (f.p != 0.0) {
      if (f.p < 1.0) throw ukk::ConfigError("--p", "p must be >= 1");
      cfg.renorm->p = f.p;
    }
    if (!f.vector.empty()) {
      const json v = ukklat::read_json_file(f.vector);
      cfg.renorm->vectors.clear();
      const bool many = v.is_array() && !v.empty() && (v[0].is_array() || v[0].is_object());
      const json list = many ? v : json::array({v});
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "--vector[" + std::to_string(i) + "]";
        auto x = ukk::vector_from_json(list[i], path);
        if (x.dim() != cfg.space->dim()) throw ukk::ConfigError(path, "dimension does not match the space");
        cfg.renorm->vectors.push_back(std::move(x));
      }
    }
  }
  if (cfg.renorm) {
    if (f.exact) cfg.renorm->mode = ukklat::RenormMode::Exact;
    if (f.heuristic) cfg.renorm->mode = ukklat::RenormMode::Heuristic;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional Banach lattice renorming experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  auto* seed_opt = app.add_option("--seed", seed, "Seed overriding every seed in the config");
  app.add_option("--config", config_path, "Experiment config (JSON)");
  app.add_option("--out", out_dir, "Output directory (default: stdout)");
  app.add_option("--threads", threads, "Worker threads for trial campaigns")->check(CLI::PositiveNumber);

  auto* space_check = app.add_subcommand("space-check", "Audit the norm and lattice axioms of the space");
  auto* estimate = app.add_subcommand("estimate", "Two-disjoint constant, derived exponent and K_r table");
  auto* renorm = app.add_subcommand("renorm", "Evaluate the renorming on listed or sampled vectors");
  auto* ukk_cmd = app.add_subcommand("ukk", "Run a bump-sequence trial campaign");

  RenormFlags rf;
  renorm->add_option("--space", rf.space, "Norm spec file (or a config with a space block)");
  renorm->add_option("--p", rf.p, "Renorming exponent");
  renorm->add_option("--vector", rf.vector, "Vector file: one coordinate array or a list of them");
  auto* exact = renorm->add_flag("--exact", rf.exact, "Force full partition enumeration");
  renorm->add_flag("--heuristic", rf.heuristic, "Force local search")->excludes(exact);

  CLI11_PARSE(app, argc, argv);

  ukklat::RunOptions opts;
  if (*seed_opt) opts.seed = seed;
  if (!out_dir.empty()) opts.out = out_dir;
  opts.threads = threads;

  try {
    if (*renorm) return ukklat::cmd_renorm(renorm_config(config_path, rf), opts);
    if (config_path.empty()) throw ukk::ConfigError("--config", "required");
    const auto cfg = ukklat::load_config(config_path);
    if (*space_check) return ukklat::cmd_space_check(cfg, opts);
    if (*estimate) return ukklat::cmd_estimate(cfg, opts);
    if (*ukk_cmd) return ukklat::cmd_ukk(cfg, opts);
  } catch (const ukk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return ukklat::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ukklat::kExitUsage;
  }
  return ukklat::kExitUsage;
}
