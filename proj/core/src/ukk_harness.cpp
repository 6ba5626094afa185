#include "ukk/ukk_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "ukk/error.hpp"
#include "ukk/random.hpp"

namespace ukk {

namespace {

// Index where the bumps start: right after the core's own coordinates, or
// after its last nonzero atom when the core already has the ambient dimension.
std::size_t first_fresh_atom(const LatticeVector& core, std::size_t ambient_dim) {
  if (core.dim() < ambient_dim) return core.dim();
  const auto s = core.support();
  return s.empty() ? 0 : s.back() + 1;
}

std::vector<double> padded(const LatticeVector& v, std::size_t dim) {
  std::vector<double> c(dim, 0.0);
  std::copy(v.coords().begin(), v.coords().end(), c.begin());
  return c;
}

// Last index whose flag is set, or -1.
template <typename Pred>
std::ptrdiff_t last_where(std::size_t count, Pred pred) {
  for (std::size_t n = count; n-- > 0;) {
    if (pred(n)) return static_cast<std::ptrdiff_t>(n);
  }
  return -1;
}

}  // namespace

double delta_bound(double epsilon, double p) {
  if (!(epsilon > 0.0) || epsilon > 2.0) {
    throw DomainError("delta_bound: epsilon must lie in (0, 2] (got " + std::to_string(epsilon) + ")");
  }
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("delta_bound: p must be in [1, inf)");
  const double t = std::pow(epsilon / 2.0, p);
  // 1 − (1 − t)^{1/p} without cancellation for small t
  return -std::expm1(std::log1p(-t) / p);
}

std::vector<LatticeVector> generate_bump_sequence(const NormOracle& n, double p,
                                                  const LatticeVector& core, double bump_height,
                                                  std::size_t horizon, std::size_t ambient_dim,
                                                  double tol, const RenormOptions& options) {
  require_same_dim(n.dim(), ambient_dim);
  if (core.dim() > ambient_dim) throw DimensionMismatch(core.dim(), ambient_dim);
  if (horizon == 0) throw std::invalid_argument("generate_bump_sequence: horizon >= 1");
  if (!std::isfinite(bump_height)) throw std::invalid_argument("generate_bump_sequence: bump height");
  const std::size_t k = first_fresh_atom(core, ambient_dim);
  if (k + horizon > ambient_dim) {
    throw std::invalid_argument("generate_bump_sequence: ambient dim " + std::to_string(ambient_dim) +
                                " too small for " + std::to_string(horizon) + " fresh atoms after " +
                                std::to_string(k));
  }
  const std::vector<double> base = padded(core, ambient_dim);
  std::vector<LatticeVector> seq;
  seq.reserve(horizon);
  for (std::size_t i = 0; i < horizon; ++i) {
    std::vector<double> c = base;
    c[k + i] = bump_height;
    LatticeVector x(std::move(c));
    const double v = renorm(n, p, x, options).value;
    if (v > 1.0 + tol) throw UnitBallViolation(i, v);
    seq.push_back(std::move(x));
  }
  return seq;
}

Separation measure_separation(const std::vector<LatticeVector>& sequence, const NormOracle& n,
                              double p, const RenormOptions& options) {
  if (sequence.size() < 2) throw std::invalid_argument("measure_separation: need at least 2 elements");
  Separation s;
  s.epsilon = kInfinity;
  for (std::size_t a = 0; a < sequence.size(); ++a) {
    for (std::size_t b = a + 1; b < sequence.size(); ++b) {
      const RenormResult r = renorm(n, p, sequence[a] - sequence[b], options);
      if (r.method == RenormMethod::Heuristic) s.exact = false;
      if (r.value < s.epsilon) {
        s.epsilon = r.value;
        s.first = a;
        s.second = b;
      }
    }
  }
  return s;
}

bool check_coordinatewise_convergence(const std::vector<LatticeVector>& sequence,
                                      const LatticeVector& limit, double tol) {
  if (sequence.empty()) return false;
  const std::size_t len = sequence.size();
  for (const auto& x : sequence) require_same_dim(x.dim(), limit.dim());
  for (std::size_t i = 0; i < limit.dim(); ++i) {
    auto deviates = [&](std::size_t n) { return std::fabs(sequence[n][i] - limit[i]) > tol; };
    const std::ptrdiff_t last = last_where(len, deviates);
    if (last < 0 || static_cast<std::size_t>(last) + 1 < len) continue;
    // the excursion reaches the final index: accept only a single touch
    if (len < 2) return false;
    if (last_where(len - 1, deviates) >= 0) return false;
  }
  return true;
}

bool check_prop2_limits(const LatticeVector& u, const std::vector<LatticeVector>& sequence,
                        const LatticeVector& limit, const NormOracle& n, double tol) {
  if (sequence.empty()) return false;
  std::vector<double> worst(sequence.size());
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    const LatticeVector d = sequence[k] - limit;
    worst[k] = std::max(eval_norm(n, truncate(u, d)), eval_norm(n, truncate(d, u)));
  }
  const std::ptrdiff_t last = last_where(worst.size(), [&](std::size_t k) { return worst[k] > tol; });
  return last < 0 || static_cast<std::size_t>(last) + 1 < worst.size();
}

std::string_view to_string(TrialStatus s) noexcept {
  switch (s) {
    case TrialStatus::Pass:
      return "pass";
    case TrialStatus::Fail:
      return "fail";
    case TrialStatus::Invalid:
      break;
  }
  return "invalid";
}

UkkTrial run_ukk_trial(const NormOracle& n, double p, const std::vector<LatticeVector>& sequence,
                       const LatticeVector& declared_limit, std::uint64_t seed,
                       const TrialOptions& options) {
  require_renorm_exponent(p);
  UkkTrial t;
  t.seed = seed;
  t.p = p;
  t.horizon = sequence.size();
  t.tol = options.tol;
  t.sequence = sequence;
  t.declared_limit = declared_limit;

  auto invalid = [&t](std::string why) {
    t.status = TrialStatus::Invalid;
    t.pass = false;
    t.invalid_reason = std::move(why);
    return t;
  };

  if (sequence.size() < 2) return invalid("fewer than 2 elements");
  for (const auto& x : sequence) {
    if (x.dim() != n.dim()) return invalid("element dimension does not match the space");
  }
  if (declared_limit.dim() != n.dim()) return invalid("limit dimension does not match the space");

  for (std::size_t k = 0; k < sequence.size(); ++k) {
    const RenormResult r = renorm(n, p, sequence[k], options.renorm);
    if (r.method == RenormMethod::Heuristic) t.advisory = true;
    t.max_element_renorm = std::max(t.max_element_renorm, r.value);
    if (r.value > 1.0 + options.tol) {
      return invalid("element " + std::to_string(k) + " outside the unit ball");
    }
  }
  if (!check_coordinatewise_convergence(sequence, declared_limit, options.tol)) {
    return invalid("sequence does not converge coordinatewise to the declared limit");
  }

  const Separation sep = measure_separation(sequence, n, p, options.renorm);
  if (!sep.exact) t.advisory = true;
  t.epsilon_measured = sep.epsilon;
  if (!(sep.epsilon > 0.0)) return invalid("sequence is not separated (epsilon = 0)");

  // a unit-ball sequence is at most 2-separated; anything above is rounding
  t.delta_bound = delta_bound(std::min(sep.epsilon, 2.0), p);

  const RenormResult lim = renorm(n, p, declared_limit, options.renorm);
  if (lim.method == RenormMethod::Heuristic) t.advisory = true;
  t.limit_renorm = lim.value;

  t.liminf_distance = kInfinity;
  for (const auto& x : sequence) {
    const RenormResult d = renorm(n, p, x - declared_limit, options.renorm);
    if (d.method == RenormMethod::Heuristic) t.advisory = true;
    t.liminf_distance = std::min(t.liminf_distance, d.value);
  }
  t.liminf_ok = sep.epsilon / 2.0 <= t.liminf_distance + options.tol;

  t.pass = t.limit_renorm <= 1.0 - t.delta_bound + options.tol;
  t.status = t.pass ? TrialStatus::Pass : TrialStatus::Fail;
  return t;
}

BumpInstance sample_bump_instance(const NormOracle& n, const BumpCampaign& c, std::uint64_t index) {
  const std::size_t ambient = c.core_atoms + c.horizon;
  require_same_dim(n.dim(), ambient);
  Rng rng(substream_seed(c.seed, index));

  std::vector<double> core(ambient, 0.0);
  if (c.core_atoms > 0 && !rng.coin(0.1)) {
    const auto atoms = sample_support(rng, c.core_atoms, c.core_atoms);
    const LatticeVector v = sample_on_atoms(rng, c.core_atoms, atoms, sample_shape(rng));
    std::copy(v.coords().begin(), v.coords().end(), core.begin());
  }
  const double bump = c.fixed_bump >= 0.0 ? c.fixed_bump : rng.uniform(c.min_bump, c.max_bump);

  std::vector<std::vector<double>> raw;
  for (std::size_t i = 0; i < c.horizon; ++i) {
    std::vector<double> x = core;
    x[c.core_atoms + i] = bump;
    if (c.fuzz && 2 * i < c.horizon) {
      // decaying non-disjoint noise on the core atoms, gone by mid-horizon
      for (std::size_t a = 0; a < c.core_atoms; ++a) {
        x[a] += rng.uniform(-0.5, 0.5) / static_cast<double>(i + 1);
      }
    }
    raw.push_back(std::move(x));
  }

  double max_renorm = 0.0;
  for (const auto& x : raw) {
    max_renorm = std::max(max_renorm, renorm(n, c.p, LatticeVector(x), c.renorm).value);
  }
  const double target = rng.coin(c.sphere_probability) ? 1.0 : rng.uniform(0.5, 1.0);
  const double f = max_renorm > 0.0 ? target / max_renorm : 1.0;

  BumpInstance inst{{}, LatticeVector(f * LatticeVector(core))};
  for (const auto& x : raw) inst.sequence.push_back(f * LatticeVector(x));
  return inst;
}

std::vector<UkkTrial> run_bump_campaign(const NormOracle& n, const BumpCampaign& c) {
  require_renorm_exponent(c.p);
  std::vector<UkkTrial> out(c.trials);
  TrialOptions opts;
  opts.tol = c.tol;
  opts.renorm = c.renorm;

  auto run_one = [&](std::uint64_t i) {
    const std::uint64_t trial_seed = substream_seed(c.seed, i);
    UkkTrial t;
    try {
      const BumpInstance inst = sample_bump_instance(n, c, i);
      t = run_ukk_trial(n, c.p, inst.sequence, inst.limit, trial_seed, opts);
    } catch (const std::exception& e) {
      t.status = TrialStatus::Invalid;
      t.invalid_reason = e.what();
      t.p = c.p;
      t.tol = c.tol;
    }
    t.index = i;
    t.seed = trial_seed;
    out[i] = std::move(t);
  };

  const unsigned threads = std::max(1u, c.threads);
  if (threads == 1 || c.trials < 2) {
    for (std::uint64_t i = 0; i < c.trials; ++i) run_one(i);
    return out;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t i = next++; i < c.trials; i = next++) run_one(i);
    });
  }
  pool.clear();  // joins
  return out;
}

CampaignSummary summarize(const std::vector<UkkTrial>& trials) {
  CampaignSummary s;
  s.trials = trials.size();
  for (const auto& t : trials) {
    switch (t.status) {
      case TrialStatus::Pass: ++s.passed; break;
      case TrialStatus::Fail: ++s.failed; break;
      case TrialStatus::Invalid: ++s.invalid; break;
    }
    if (t.advisory) ++s.advisory;
    if (t.status != TrialStatus::Invalid && !t.liminf_ok) ++s.liminf_failures;
  }
  return s;
}

}  // namespace ukk
