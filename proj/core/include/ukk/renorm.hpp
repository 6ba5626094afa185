#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "ukk/lattice.hpp"
#include "ukk/norm.hpp"
#include "ukk/partition.hpp"

namespace ukk {

// The renorming
//
//   ‖x‖₀ = sup (Σ_n ‖x_n‖^p)^{1/p}   over disjoint decompositions x = Σ_n x_n.
//
// On coordinate vectors every disjoint decomposition is, up to zero summands,
// the restriction of x to the blocks of a partition of supp(x), so the
// supremum is a maximum over set partitions of the support. In finite
// dimension it does not matter whether finite or countable decompositions
// are allowed; the general case is not modelled.

enum class RenormMethod { Exact, Heuristic };

std::string_view to_string(RenormMethod m) noexcept;

struct RenormResult {
  double value = 0.0;
  SupportPartition witness;  // canonical; empty for x = 0
  RenormMethod method = RenormMethod::Exact;
  double p = 1.0;
  NormOracle base_norm;
};

inline constexpr std::size_t kExactThreshold = 12;

struct HeuristicConfig {
  std::uint64_t seed = 0x5eed;
  unsigned restarts = 8;     // random starts besides the trivial and all-singleton starts
  unsigned split_cuts = 3;   // random cuts tried per block per step
  unsigned max_steps = 1000; // steepest-ascent steps per start
};

struct RenormOptions {
  std::size_t exact_threshold = kExactThreshold;
  HeuristicConfig heuristic;
};

/// Throws DomainError unless 1 <= p < inf.
void require_renorm_exponent(double p);

/// Σ_{B ∈ partition} ‖restrict(x, B)‖^p, summed in canonical block order. Both
/// renorm paths report values computed by this exact routine, so a witness
/// always replays to the bit.
double partition_power_sum(const NormOracle& n, double p, const LatticeVector& x,
                           const SupportPartition& partition);

/// (partition_power_sum)^{1/p}.
double partition_objective(const NormOracle& n, double p, const LatticeVector& x,
                           const SupportPartition& partition);

/// Enumerates every set partition of supp(x) (restricted-growth strings,
/// lexicographic, first maximum wins). Throws SupportTooLarge when
/// |supp(x)| > exact_threshold.
RenormResult renorm_exact(const NormOracle& n, double p, const LatticeVector& x,
                          std::size_t exact_threshold = kExactThreshold);

/// Steepest-ascent local search over partitions (move an atom, merge two
/// blocks, split a block at a random cut) from the trivial partition, the
/// all-singleton partition and `restarts` random partitions. The value is a
/// lower bound on ‖x‖₀.
RenormResult renorm_heuristic(const NormOracle& n, double p, const LatticeVector& x,
                              const HeuristicConfig& config = {});

/// Exact below the threshold, heuristic above.
RenormResult renorm(const NormOracle& n, double p, const LatticeVector& x,
                    const RenormOptions& options = {});

struct SuperadditivityCheck {
  double x_value = 0.0;
  double y_value = 0.0;
  double sum_value = 0.0;
  double slack = 0.0;  // ‖x+y‖₀^p − ‖x‖₀^p − ‖y‖₀^p
  bool pass = false;
};

/// ‖x‖₀^p + ‖y‖₀^p <= ‖x+y‖₀^p for disjoint x, y, with exact renorms.
/// Throws std::invalid_argument when x and y are not disjoint.
SuperadditivityCheck check_superadditivity(const NormOracle& n, double p, const LatticeVector& x,
                                           const LatticeVector& y,
                                           std::size_t exact_threshold = kExactThreshold);

struct EquivalenceAudit {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double constant = 1.0;
  std::uint64_t lower_violations = 0;  // ‖x‖ > ‖x‖₀
  std::uint64_t upper_violations = 0;  // ‖x‖₀ > C‖x‖
  double worst_lower_ratio = 0.0;      // min ‖x‖₀ / ‖x‖
  double worst_upper_ratio = 0.0;      // max ‖x‖₀ / ‖x‖
  std::optional<LatticeVector> worst_upper_witness;
  bool pass = false;
};

/// Checks ‖x‖ <= ‖x‖₀ <= C‖x‖ on random vectors with at most `max_support`
/// nonzero atoms (exact renorm).
EquivalenceAudit audit_equivalence(const NormOracle& n, double p, double constant,
                                   std::uint64_t samples, std::uint64_t seed,
                                   std::size_t max_support = 8);

}  // namespace ukk
