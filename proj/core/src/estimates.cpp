#include "ukk/estimates.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "ukk/error.hpp"
#include "ukk/random.hpp"
#include "ukk/renorm.hpp"
#include "ukk/tolerance.hpp"

namespace ukk {

namespace {

constexpr unsigned kRefineSteps = 24;

// Multiplicative perturbation of one coordinate; the step shrinks over the run.
void perturb(Rng& rng, std::vector<double>& c, std::span<const std::size_t> atoms, unsigned step) {
  const double sigma = 0.5 * std::pow(0.85, step);
  const std::size_t i = atoms[rng.below(atoms.size())];
  c[i] *= std::exp(sigma * (2.0 * rng.uniform() - 1.0));
}

double two_disjoint_ratio(const NormOracle& n, std::span<const double> x, std::span<const double> y,
                          std::vector<double>& scratch) {
  for (std::size_t i = 0; i < x.size(); ++i) scratch[i] = x[i] + y[i];
  return (n.eval(x) + n.eval(y)) / n.eval(scratch);
}

double family_ratio(const NormOracle& n, double p, std::span<const double> x,
                    const std::vector<std::vector<std::size_t>>& blocks, std::vector<double>& buf) {
  double s = 0.0;
  for (const auto& b : blocks) {
    for (std::size_t i : b) buf[i] = x[i];
    s += std::pow(n.eval(buf), p);
    for (std::size_t i : b) buf[i] = 0.0;
  }
  return std::pow(s, 1.0 / p) / n.eval(x);
}

std::vector<LatticeVector> family_of(const LatticeVector& x,
                                     const std::vector<std::vector<std::size_t>>& blocks) {
  std::vector<LatticeVector> out;
  for (const auto& b : blocks) out.push_back(restrict(x, b));
  return out;
}

// Coordinates for a lower-estimate trial: full support half of the time,
// all-positive signs half of the time.
LatticeVector draw_family_vector(Rng& rng, std::size_t dim) {
  std::vector<std::size_t> atoms;
  if (rng.coin()) {
    for (std::size_t i = 0; i < dim; ++i) atoms.push_back(i);
  } else {
    atoms = sample_support(rng, dim, dim);
  }
  const auto shape = sample_shape(rng);
  return sample_on_atoms(rng, dim, atoms, shape, rng.coin());
}

}  // namespace

TwoDisjointEstimate estimate_two_disjoint_constant(const NormOracle& n, std::uint64_t budget,
                                                   std::uint64_t seed) {
  const std::size_t dim = n.dim();
  if (dim < 2) throw DomainError("two-disjoint constant needs dim >= 2");
  if (budget == 0) throw std::invalid_argument("estimate_two_disjoint_constant: budget >= 1");

  TwoDisjointEstimate best;
  best.c_hat = -1.0;
  std::vector<double> scratch(dim);

  for (std::uint64_t t = 0; t < budget; ++t) {
    Rng rng(substream_seed(seed, t));
    // two forced atoms keep both halves nonzero
    const std::size_t i = rng.below(dim);
    std::size_t j = rng.below(dim - 1);
    if (j >= i) ++j;
    std::vector<std::size_t> xs{i}, ys{j};
    for (std::size_t a = 0; a < dim; ++a) {
      if (a == i || a == j) continue;
      switch (rng.below(3)) {
        case 0: xs.push_back(a); break;
        case 1: ys.push_back(a); break;
        default: break;
      }
    }
    const auto shape = sample_shape(rng);
    std::vector<double> x(dim, 0.0), y(dim, 0.0);
    for (std::size_t a : xs) x[a] = (rng.coin() ? -1.0 : 1.0) * sample_magnitude(rng, shape);
    for (std::size_t a : ys) y[a] = (rng.coin() ? -1.0 : 1.0) * sample_magnitude(rng, shape);

    double ratio = two_disjoint_ratio(n, x, y, scratch);
    std::vector<std::size_t> all = xs;
    all.insert(all.end(), ys.begin(), ys.end());
    for (unsigned step = 0; step < kRefineSteps; ++step) {
      std::vector<double> x2 = x, y2 = y;
      const std::size_t a = all[rng.below(all.size())];
      auto& target = (x[a] != 0.0) ? x2 : y2;
      const std::size_t one[] = {a};
      perturb(rng, target, one, step);
      const double r2 = two_disjoint_ratio(n, x2, y2, scratch);
      if (r2 > ratio) {
        ratio = r2;
        x = std::move(x2);
        y = std::move(y2);
      }
    }
    if (ratio > best.c_hat) {
      best.c_hat = ratio;
      best.x = LatticeVector(x);
      best.y = LatticeVector(y);
    }
  }
  best.trials = budget;
  best.refinement_steps = budget * kRefineSteps;
  return best;
}

double derived_exponent(double c) {
  if (std::isnan(c) || c < 1.0 - kRelTol) {
    throw DomainError("derived_exponent: c = " + std::to_string(c) +
                      " < 1 is impossible for a norm; the oracle is broken");
  }
  if (c >= 2.0) {
    throw DomainError("derived_exponent: c >= 2, the two-disjoint estimate with c < 2 fails");
  }
  return 2.0 * std::log(2.0) / std::log(2.0 / c);
}

double zeta_with_tail(double s, std::uint64_t terms) {
  if (!(s > 1.0)) throw DomainError("zeta_with_tail: s must exceed 1");
  if (terms == 0) throw std::invalid_argument("zeta_with_tail: terms >= 1");
  // Neumaier summation, smallest terms first
  double sum = 0.0, comp = 0.0;
  for (std::uint64_t i = terms; i >= 1; --i) {
    const double term = std::pow(static_cast<double>(i), -s);
    const double t = sum + term;
    comp += std::fabs(sum) >= term ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  const double tail = std::pow(static_cast<double>(terms), 1.0 - s) / (s - 1.0);
  return sum + comp + tail;
}

std::uint64_t kr_series_terms(double s, double tail_tol) {
  if (!(s > 1.0)) throw DomainError("series exponent r/p must exceed 1");
  if (!(tail_tol > 0.0)) throw DomainError("tail_tol must be positive");
  // Stop at the first M with M^{-s} <= tail_tol * partial_M. The partial sum
  // is at least 1, so M = ceil(tail_tol^{-1/s}) always suffices; walk to the
  // exact stopping index from the front.
  double partial = 0.0;
  std::uint64_t m = 0;
  const auto cap = static_cast<std::uint64_t>(std::ceil(std::pow(tail_tol, -1.0 / s))) + 1;
  while (m < cap) {
    ++m;
    const double term = std::pow(static_cast<double>(m), -s);
    partial += term;
    if (term <= tail_tol * partial) break;
  }
  return m;
}

double kr_constant(double c, double p, double r, double tail_tol) {
  if (!(p > 0.0)) throw DomainError("kr_constant: p must be positive");
  if (!(r > p)) throw DomainError("kr_constant: r must exceed p (the series diverges otherwise)");
  if (std::isnan(c) || c < 1.0 - kRelTol) throw DomainError("kr_constant: c must be >= 1");
  const double s = r / p;
  const double zeta = zeta_with_tail(s, kr_series_terms(s, tail_tol));
  // (c^{2r} ζ)^{1/r} = c² ζ^{1/r}
  return c * c * std::pow(zeta, 1.0 / r);
}

ChainCheck check_inf_chain(const NormOracle& n, double c, std::span<const LatticeVector> family) {
  if (family.empty()) throw std::invalid_argument("check_inf_chain: empty family");
  if (!pairwise_disjoint(family)) throw std::invalid_argument("check_inf_chain: family is not disjoint");
  ChainCheck r;
  r.m = family.size();
  r.k = static_cast<unsigned>(std::bit_width(r.m) - 1);
  r.inf_norm = kInfinity;
  for (const auto& v : family) r.inf_norm = std::min(r.inf_norm, eval_norm(n, v));
  r.sum_norm = eval_norm(n, sum(family));

  r.dyadic_bound = std::pow(c, r.k + 1) / std::ldexp(1.0, static_cast<int>(r.k)) * r.sum_norm;
  r.dyadic_slack = r.dyadic_bound - r.inf_norm;
  bool ok = leq_tol(r.inf_norm, r.dyadic_bound);

  if (c < 2.0 && c >= 1.0 - kRelTol) {
    const double p = derived_exponent(c);
    r.power_bound = c / std::pow(static_cast<double>(r.m), 1.0 / p) * r.sum_norm;
    r.power_slack = *r.power_bound - r.inf_norm;
    ok = ok && leq_tol(r.inf_norm, *r.power_bound);
  }
  r.pass = ok;
  return r;
}

LowerPEstimate estimate_lower_p_constant(const NormOracle& n, double p, std::uint64_t budget,
                                         std::uint64_t seed) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("estimate_lower_p_constant: p must be in [1, inf)");
  if (budget == 0) throw std::invalid_argument("estimate_lower_p_constant: budget >= 1");
  const std::size_t dim = n.dim();
  LowerPEstimate best;
  best.p = p;
  best.c_hat = -1.0;
  std::vector<double> buf(dim, 0.0);

  for (std::uint64_t t = 0; t < budget; ++t) {
    Rng rng(substream_seed(seed, t));
    const LatticeVector x0 = draw_family_vector(rng, dim);

    HeuristicConfig hc;
    hc.seed = rng.next();
    hc.restarts = 2;
    const RenormResult local = renorm_heuristic(n, p, x0, hc);
    std::vector<std::vector<std::size_t>> blocks = local.witness.blocks;
    std::vector<std::size_t> atoms = x0.support();

    std::vector<double> x(x0.coords().begin(), x0.coords().end());
    double ratio = family_ratio(n, p, x, blocks, buf);
    const auto singles = singleton_partition(atoms).blocks;
    const double single_ratio = family_ratio(n, p, x, singles, buf);
    if (single_ratio > ratio) {
      ratio = single_ratio;
      blocks = singles;
    }
    for (unsigned step = 0; step < kRefineSteps; ++step) {
      std::vector<double> x2 = x;
      perturb(rng, x2, atoms, step);
      const double r2 = family_ratio(n, p, x2, blocks, buf);
      if (r2 > ratio) {
        ratio = r2;
        x = std::move(x2);
      }
    }
    if (ratio > best.c_hat) {
      best.c_hat = ratio;
      best.witness = family_of(LatticeVector(x), blocks);
    }
  }
  best.trials = budget;
  return best;
}

LowerRVerification verify_lower_r_estimate(const NormOracle& n, double r, double constant,
                                           std::uint64_t trials, std::uint64_t seed) {
  if (!(r > 0.0)) throw DomainError("verify_lower_r_estimate: r must be positive");
  LowerRVerification v;
  v.r = r;
  v.constant = constant;
  v.trials = trials;
  const std::size_t dim = n.dim();
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(substream_seed(seed, t));
    const LatticeVector x = draw_family_vector(rng, dim);
    const auto atoms = x.support();
    const auto blocks = rng.coin(0.3) ? singleton_partition(atoms).blocks : sample_partition(rng, atoms);
    double s = 0.0;
    std::vector<LatticeVector> family = family_of(x, blocks);
    for (const auto& f : family) s += std::pow(eval_norm(n, f), r);
    const double lhs = std::pow(s, 1.0 / r);
    const double total = eval_norm(n, x);
    if (!leq_tol(lhs, constant * total)) ++v.violations;
    const double ratio = lhs / total;
    if (ratio > v.worst_ratio) {
      v.worst_ratio = ratio;
      v.worst_family = std::move(family);
    }
  }
  return v;
}

std::uint64_t EstimateReport::total_violations() const {
  std::uint64_t s = 0;
  for (const auto& e : kr_table) s += e.verification.violations;
  return s;
}

std::string EstimateReport::status() const {
  if (total_violations() > 0) return "violation";
  return hypothesis_holds ? "ok" : "hypothesis_failure";
}

EstimateReport run_estimate_pipeline(const NormOracle& n, const EstimateOptions& o) {
  EstimateReport rep;
  rep.seed = o.seed;
  rep.budget = o.budget;
  rep.two_disjoint = estimate_two_disjoint_constant(n, o.budget, substream_seed(o.seed, 0));
  const double c = rep.two_disjoint.c_hat;
  // within rounding of 2 counts as 2: the hypothesis needs c bounded away from 2
  rep.hypothesis_holds = c < 2.0 * (1.0 - kRelTol);

  if (rep.hypothesis_holds) {
    const double p = derived_exponent(std::max(c, 1.0));
    rep.p_derived = p;
    std::vector<double> rs = o.r_values;
    if (rs.empty()) rs = {p + 0.5, p + 1.0, p + 2.0, 2.0 * p};
    std::uint64_t stream = 100;
    for (double r : rs) {
      if (!(r > p)) {
        throw DomainError("r = " + std::to_string(r) + " must exceed p_derived = " + std::to_string(p));
      }
      KrEntry e;
      e.r = r;
      e.constant = kr_constant(std::max(c, 1.0), p, r, o.kr_tail_tol);
      e.verification = verify_lower_r_estimate(n, r, e.constant, o.verify_trials,
                                               substream_seed(o.seed, stream++));
      rep.kr_table.push_back(std::move(e));
    }
  }

  std::optional<double> lp = o.lower_p ? o.lower_p : rep.p_derived;
  if (lp) {
    rep.lower_p = estimate_lower_p_constant(n, *lp, o.lower_p_budget, substream_seed(o.seed, 1));
  }
  return rep;
}

}  // namespace ukk
