#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>

#include "ukk/error.hpp"
#include "ukk/estimates.hpp"
#include "ukk/random.hpp"
#include "ukk/report_json.hpp"

namespace ukklat {

using nlohmann::json;

namespace {

// Size of the audit run before estimate/renorm/ukk.
constexpr std::uint64_t kPreflightSamples = 300;

std::ostream& out_of(const RunOptions& o) { return o.stdout_stream ? *o.stdout_stream : std::cout; }
std::ostream& err_of(const RunOptions& o) { return o.stderr_stream ? *o.stderr_stream : std::cerr; }

std::optional<std::filesystem::path> out_dir(const ExperimentConfig& cfg, const RunOptions& o) {
  return o.out ? o.out : cfg.output.dir;
}

// A file under the output directory, or stdout when none is configured.
class Sink {
 public:
  Sink(const ExperimentConfig& cfg, const RunOptions& o, const std::string& name) {
    if (auto dir = out_dir(cfg, o)) {
      std::filesystem::create_directories(*dir);
      path_ = *dir / name;
      file_ = std::make_unique<std::ofstream>(path_, std::ios::binary | std::ios::trunc);
      if (!*file_) throw ukk::ConfigError("output.dir", "cannot write " + path_.string());
      stream_ = file_.get();
    } else {
      stream_ = &out_of(o);
    }
  }
  std::ostream& operator*() { return *stream_; }
  bool to_file() const { return file_ != nullptr; }

 private:
  std::filesystem::path path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

bool preflight(const ExperimentConfig& cfg, const RunOptions& o) {
  // the audit is a sanity gate, so it falls back to a fixed seed
  const std::uint64_t seed = o.seed.value_or(cfg.space_check.seed.value_or(cfg.seed.value_or(0)));
  const auto report = ukk::audit_norm_axioms(*cfg.space, std::min(kPreflightSamples, cfg.space_check.samples),
                                             seed, cfg.space_check.tol);
  if (!report.pass) {
    err_of(o) << "error: space fails the norm axiom audit: " << report.first_failure << '\n';
  }
  return report.pass;
}

ukk::LatticeVector random_vector(std::uint64_t seed, std::uint64_t index, std::size_t dim,
                                 std::size_t max_support) {
  ukk::Rng rng(ukk::substream_seed(seed, index));
  const auto atoms = ukk::sample_support(rng, dim, std::min(max_support, dim));
  return ukk::sample_on_atoms(rng, dim, atoms, ukk::sample_shape(rng));
}

}  // namespace

int cmd_space_check(const ExperimentConfig& cfg, const RunOptions& o) {
  const std::uint64_t seed = resolve_seed(o.seed, cfg.space_check.seed, cfg, "space_check");
  const auto report = ukk::audit_norm_axioms(*cfg.space, cfg.space_check.samples, seed, cfg.space_check.tol);
  Sink sink(cfg, o, "space_check.json");
  *sink << ukk::audit_json(report, *cfg.space).dump(2) << '\n';
  if (!report.pass) err_of(o) << "space-check: FAIL (" << report.first_failure << ")\n";
  return report.pass ? kExitOk : kExitViolation;
}

int cmd_estimate(const ExperimentConfig& cfg, const RunOptions& o) {
  const EstimateBlock block = cfg.estimate.value_or(EstimateBlock{});
  ukk::EstimateOptions eo;
  eo.budget = block.budget;
  eo.seed = resolve_seed(o.seed, block.seed, cfg, "estimate");
  eo.r_values = block.r_values;
  eo.kr_tail_tol = block.kr_tail_tol;
  eo.lower_p = block.lower_p;
  eo.lower_p_budget = block.lower_p_budget;
  eo.verify_trials = block.verify_trials;
  if (!preflight(cfg, o)) return kExitUsage;

  const auto report = ukk::run_estimate_pipeline(*cfg.space, eo);
  Sink sink(cfg, o, "estimate.json");
  *sink << ukk::estimate_json(report, *cfg.space).dump(2) << '\n';
  const std::string status = report.status();
  if (status == "hypothesis_failure") {
    err_of(o) << "estimate: two-disjoint constant reaches 2; no lower p-estimate is derived\n";
  }
  return status == "violation" ? kExitViolation : kExitOk;
}

int cmd_renorm(const ExperimentConfig& cfg, const RunOptions& o) {
  if (!cfg.renorm) throw ukk::ConfigError("renorm", "block required");
  const RenormBlock& b = *cfg.renorm;
  std::vector<ukk::LatticeVector> vectors = b.vectors;
  if (b.random.count > 0) {
    const std::uint64_t seed = resolve_seed(o.seed, b.seed, cfg, "renorm");
    for (std::uint64_t i = 0; i < b.random.count; ++i) {
      vectors.push_back(random_vector(seed, i, cfg.space->dim(), b.random.max_support));
    }
  }
  if (!preflight(cfg, o)) return kExitUsage;

  Sink sink(cfg, o, "renorm.jsonl");
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    json rec;
    try {
      ukk::RenormResult r = [&] {
        switch (b.mode) {
          case RenormMode::Exact:
            return ukk::renorm_exact(*cfg.space, b.p, vectors[i], b.options.exact_threshold);
          case RenormMode::Heuristic:
            return ukk::renorm_heuristic(*cfg.space, b.p, vectors[i], b.options.heuristic);
          case RenormMode::Auto:
            break;
        }
        return ukk::renorm(*cfg.space, b.p, vectors[i], b.options);
      }();
      rec = ukk::renorm_json(r);
      rec["index"] = i;
      rec["vector"] = ukk::vector_json(vectors[i]);
    } catch (const ukk::SupportTooLarge& e) {
      rec = {{"schema_version", ukk::kSchemaVersion},
             {"record", "renorm_error"},
             {"index", i},
             {"error", e.what()}};
    }
    *sink << rec.dump() << '\n';
  }
  return kExitOk;
}

int cmd_ukk(const ExperimentConfig& cfg, const RunOptions& o) {
  if (!cfg.ukk) throw ukk::ConfigError("ukk", "block required");
  ukk::BumpCampaign c = cfg.ukk->campaign;
  c.seed = resolve_seed(o.seed, cfg.ukk->seed, cfg, "ukk");
  c.threads = std::max(1u, o.threads);
  if (!preflight(cfg, o)) return kExitUsage;

  const auto trials = ukk::run_bump_campaign(*cfg.space, c);
  {
    Sink sink(cfg, o, "ukk_trials.jsonl");
    for (const auto& t : trials) *sink << ukk::trial_json(t, cfg.output.include_sequences).dump() << '\n';
  }
  if (out_dir(cfg, o)) {
    Sink csv(cfg, o, "ukk_summary.csv");
    *csv << ukk::trial_csv_header() << '\n';
    for (const auto& t : trials) *csv << ukk::trial_csv_row(t) << '\n';
  }

  const auto s = ukk::summarize(trials);
  auto& err = err_of(o);
  err << "ukk: " << s.trials << " trials, " << s.passed << " passed, " << s.failed << " failed, "
      << s.invalid << " invalid, " << s.advisory << " advisory, " << s.liminf_failures
      << " liminf shortfalls\n";
  if (s.trials > 0 && s.invalid == s.trials) err << "warning: every trial was invalid\n";
  return s.failed > 0 ? kExitViolation : kExitOk;
}

}  // namespace ukklat
