#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ukk/lattice.hpp"
#include "ukk/norm.hpp"

namespace ukk {

/// Best found value of (‖x‖ + ‖y‖) / ‖x + y‖ over disjoint pairs. It is a
/// lower bound on the two-disjoint constant c, never a certificate.
struct TwoDisjointEstimate {
  double c_hat = 1.0;
  LatticeVector x{0.0};
  LatticeVector y{0.0};
  std::uint64_t trials = 0;
  std::uint64_t refinement_steps = 0;
};

/// Random support splits and random coordinates, each pair refined by
/// coordinatewise hill climbing. Trial t uses substream t of `seed`, so the
/// result is nondecreasing in `budget`. Throws DomainError for dim < 2.
TwoDisjointEstimate estimate_two_disjoint_constant(const NormOracle& n, std::uint64_t budget,
                                                   std::uint64_t seed);

/// p = 2 ln 2 / ln(2/c). Throws DomainError for c >= 2 (the two-disjoint
/// hypothesis fails) and for c < 1 beyond rounding (a broken oracle).
double derived_exponent(double c);

/// Σ_{i=1}^{terms} i^{-s} + ∫_{terms}^∞ t^{-s} dt, an upper bound on ζ(s)
/// within terms^{-s}. Requires s > 1.
double zeta_with_tail(double s, std::uint64_t terms);

/// K_r = (Σ_{i≥1} c^{2r} / i^{r/p})^{1/r}. The series is summed until the
/// next term drops below tail_tol times the partial sum and closed with the
/// integral tail, so the result is an upper bound accurate to tail_tol
/// relative. Throws DomainError for r <= p.
double kr_constant(double c, double p, double r, double tail_tol);

/// Number of series terms kr_constant uses for ζ(r/p) at this tolerance.
std::uint64_t kr_series_terms(double s, double tail_tol);

struct ChainCheck {
  std::size_t m = 0;
  unsigned k = 0;  // 2^k <= m < 2^{k+1}
  double inf_norm = 0.0;
  double sum_norm = 0.0;
  double dyadic_bound = 0.0;  // c^{k+1} / 2^k · ‖Σ x_i‖
  double dyadic_slack = 0.0;
  std::optional<double> power_bound;  // c / m^{1/p(c)} · ‖Σ x_i‖, only for c < 2
  std::optional<double> power_slack;
  bool pass = false;
};

/// Checks inf_i ‖x_i‖ against the dyadic bound and the power bound for a
/// disjoint family. Throws std::invalid_argument on an empty or non-disjoint family.
ChainCheck check_inf_chain(const NormOracle& n, double c, std::span<const LatticeVector> family);

struct LowerPEstimate {
  double p = 1.0;
  double c_hat = 1.0;
  std::vector<LatticeVector> witness;  // disjoint family attaining c_hat
  std::uint64_t trials = 0;
};

/// Best found (Σ‖x_i‖^p)^{1/p} / ‖Σ x_i‖ over disjoint families. Each trial
/// draws coordinates, picks the family by local search over partitions of
/// the support (the all-singleton family is always among the candidates) and
/// then hill-climbs the coordinates.
LowerPEstimate estimate_lower_p_constant(const NormOracle& n, double p, std::uint64_t budget,
                                         std::uint64_t seed);

struct LowerRVerification {
  double r = 1.0;
  double constant = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  double worst_ratio = 0.0;  // max (Σ‖x_i‖^r)^{1/r} / ‖Σ x_i‖
  std::vector<LatticeVector> worst_family;
};

/// Counts sampled disjoint families with (Σ‖x_i‖^r)^{1/r} > K ‖Σ x_i‖ beyond tolerance.
LowerRVerification verify_lower_r_estimate(const NormOracle& n, double r, double constant,
                                           std::uint64_t trials, std::uint64_t seed);

struct EstimateOptions {
  std::uint64_t budget = 2000;
  std::uint64_t seed = 0;
  std::vector<double> r_values;      // empty: p + {0.5, 1, 2} and 2p
  double kr_tail_tol = 1e-6;
  std::optional<double> lower_p;     // exponent for the lower-p constant; default p_derived
  std::uint64_t lower_p_budget = 500;
  std::uint64_t verify_trials = 1000;
};

struct KrEntry {
  double r = 0.0;
  double constant = 0.0;
  LowerRVerification verification;
};

struct EstimateReport {
  TwoDisjointEstimate two_disjoint;
  bool hypothesis_holds = false;        // c_hat < 2
  std::optional<double> p_derived;
  std::vector<KrEntry> kr_table;
  std::optional<LowerPEstimate> lower_p;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;

  std::uint64_t total_violations() const;
  std::string status() const;           // "ok" | "hypothesis_failure" | "violation"
};

/// c_hat → p_derived → K_r table (each K_r verified on sampled families) →
/// lower-p constant. A measured c_hat within rounding of 2 yields a
/// hypothesis-failure report instead of an error.
EstimateReport run_estimate_pipeline(const NormOracle& n, const EstimateOptions& options);

}  // namespace ukk
