#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ukk/lattice.hpp"
#include "ukk/norm.hpp"
#include "ukk/renorm.hpp"

namespace ukk {

// Finite-horizon experiments for the uniform Kadec-Klee property of ‖·‖₀
// under coordinatewise convergence. A campaign can only sample sequences:
// it checks the modulus on witnesses and cannot certify the universal claim.

/// δ(ε) = 1 − (1 − (ε/2)^p)^{1/p}. Throws DomainError unless 0 < ε <= 2, p >= 1.
double delta_bound(double epsilon, double p);

inline constexpr double kHarnessTol = 1e-9;
inline constexpr std::size_t kDefaultHorizon = 64;

/// x_n = core + h·e_{k+n}, n = 0..horizon-1, where k = core.dim() and the core
/// is zero-padded to ambient_dim. Every element is checked to satisfy
/// ‖x_n‖₀ <= 1 + tol; UnitBallViolation names the first offender.
std::vector<LatticeVector> generate_bump_sequence(const NormOracle& n, double p,
                                                  const LatticeVector& core, double bump_height,
                                                  std::size_t horizon, std::size_t ambient_dim,
                                                  double tol = kHarnessTol,
                                                  const RenormOptions& options = {});

struct Separation {
  double epsilon = 0.0;
  std::size_t first = 0;  // indices attaining the minimum
  std::size_t second = 0;
  bool exact = true;      // false when some distance came from the heuristic (a lower bound)
};

/// min_{n≠m} ‖x_n − x_m‖₀. Throws std::invalid_argument for fewer than 2 elements.
Separation measure_separation(const std::vector<LatticeVector>& sequence, const NormOracle& n,
                              double p, const RenormOptions& options = {});

/// Finite-horizon coordinatewise convergence. Coordinate i converges when
/// |x_n[i] − limit[i]| <= tol on a nonempty tail of the horizon, or when its
/// only excursion is at the final index (a fresh atom touched once cannot be
/// observed to settle).
bool check_coordinatewise_convergence(const std::vector<LatticeVector>& sequence,
                                      const LatticeVector& limit, double tol);

/// Both ‖S_u(x_n − x)‖ and ‖S_{x_n − x}(u)‖ are <= tol on a nonempty tail of the horizon.
bool check_prop2_limits(const LatticeVector& u, const std::vector<LatticeVector>& sequence,
                        const LatticeVector& limit, const NormOracle& n, double tol);

enum class TrialStatus { Pass, Fail, Invalid };

std::string_view to_string(TrialStatus s) noexcept;

struct UkkTrial {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  double p = 1.0;
  std::size_t horizon = 0;
  double tol = kHarnessTol;
  std::vector<LatticeVector> sequence;
  std::optional<LatticeVector> declared_limit;
  double epsilon_measured = 0.0;
  double delta_bound = 0.0;
  double limit_renorm = 0.0;
  double max_element_renorm = 0.0;
  double liminf_distance = 0.0;  // min_n ‖x_n − x‖₀
  bool liminf_ok = false;        // ε/2 <= liminf_distance + tol
  bool advisory = false;         // some renorm value came from the heuristic
  bool pass = false;
  TrialStatus status = TrialStatus::Invalid;
  std::string invalid_reason;
};

struct TrialOptions {
  double tol = kHarnessTol;
  RenormOptions renorm;
};

/// Validates the preconditions (unit ball, coordinatewise convergence,
/// ε > 0) and then checks ‖x‖₀ <= 1 − δ(ε) + tol. Precondition failures give
/// TrialStatus::Invalid, never Fail.
UkkTrial run_ukk_trial(const NormOracle& n, double p, const std::vector<LatticeVector>& sequence,
                       const LatticeVector& declared_limit, std::uint64_t seed,
                       const TrialOptions& options = {});

struct BumpCampaign {
  double p = 2.0;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t horizon = kDefaultHorizon;
  std::size_t core_atoms = 4;     // ambient dim = core_atoms + horizon
  double min_bump = 0.05;         // relative bump height before normalization
  double max_bump = 1.0;
  double fixed_bump = -1.0;       // >= 0 overrides the random bump height
  double sphere_probability = 0.5; // chance of scaling the family onto the unit sphere
  bool fuzz = false;              // non-disjoint decaying perturbations on the core atoms
  double tol = kHarnessTol;
  unsigned threads = 1;
  RenormOptions renorm;
};

/// The sequence and declared limit of trial `index` of a campaign.
struct BumpInstance {
  std::vector<LatticeVector> sequence;
  LatticeVector limit;
};

BumpInstance sample_bump_instance(const NormOracle& n, const BumpCampaign& campaign,
                                  std::uint64_t index);

struct CampaignSummary {
  std::uint64_t trials = 0;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::uint64_t invalid = 0;
  std::uint64_t advisory = 0;
  std::uint64_t liminf_failures = 0;
};

/// Runs every trial (in parallel when campaign.threads > 1); results are in trial order.
std::vector<UkkTrial> run_bump_campaign(const NormOracle& n, const BumpCampaign& campaign);

CampaignSummary summarize(const std::vector<UkkTrial>& trials);

}  // namespace ukk
