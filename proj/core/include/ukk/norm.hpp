#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ukk/lattice.hpp"

namespace ukk {

enum class NormKind { Lq, WeightedLq, Block, Remark2Wrap, Custom };

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// An evaluatable norm on R^dim. Immutable and cheap to copy (shared node).
///
/// Built-in kinds:
///  - Lq(q): (Σ|x_i|^q)^{1/q}, q in [1, ∞]
///  - WeightedLq(q, w): (Σ w_i|x_i|^q)^{1/q}; for q = ∞, max_i w_i|x_i|
///  - Block(outer, blocks, inner): outer norm of the vector of inner block norms
///  - Remark2Wrap(base): max(‖x⁺‖, ‖x⁻‖)
/// Custom oracles wrap an arbitrary callable and exist for testing the audit.
class NormOracle {
 public:
  using Fn = std::function<double(std::span<const double>)>;

  static NormOracle lq(double q, std::size_t dim);
  static NormOracle weighted_lq(double q, std::vector<double> weights);
  /// `blocks` must partition {0..dim-1}; inner[b].dim() == blocks[b].size();
  /// outer.dim() == blocks.size(). Blocks are stored sorted.
  static NormOracle block(NormOracle outer, std::vector<std::vector<std::size_t>> blocks,
                          std::vector<NormOracle> inner);
  /// Consecutive blocks of `block_size` atoms, every block measured by `inner`.
  static NormOracle uniform_block(NormOracle outer, NormOracle inner, std::size_t block_size);
  static NormOracle remark2(NormOracle base);
  static NormOracle custom(std::string name, std::size_t dim, Fn fn,
                           double lattice_constant = 1.0);

  NormKind kind() const noexcept;
  std::size_t dim() const noexcept;

  /// Norm of a raw coordinate span; the length must equal dim().
  double eval(std::span<const double> x) const;

  /// Constant K with |x| ≤ |y| ⇒ ‖x‖ ≤ K‖y‖ that the construction guarantees:
  /// 1 for Lq, WeightedLq and Block of such; 2·K(base) for Remark2Wrap.
  double lattice_constant() const noexcept;
  /// True when ‖x‖ = ‖|x|‖ holds by construction.
  bool is_absolute() const noexcept;

  // Structural accessors; each throws std::logic_error on the wrong kind.
  double q() const;
  std::span<const double> weights() const;
  const NormOracle& outer() const;
  const std::vector<std::vector<std::size_t>>& blocks() const;
  std::span<const NormOracle> inner() const;
  const NormOracle& base() const;
  const std::string& custom_name() const;

  /// Short human-readable form such as "Block(Lq(inf); Lq(1) x4)".
  std::string describe() const;

  struct Node;

 private:
  explicit NormOracle(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Throws DimensionMismatch.
double eval_norm(const NormOracle& n, const LatticeVector& x);

/// max(‖x⁺‖, ‖x⁻‖) for the given base norm.
double remark2_norm(const NormOracle& n, const LatticeVector& x);

struct NormAuditReport {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  bool zero_ok = true;                     // ‖0‖ == 0
  std::uint64_t positivity_violations = 0; // ‖x‖ ≤ 0 for x ≠ 0
  double worst_homogeneity = 0.0;          // max |‖λx‖ − |λ|‖x‖| / (|λ|‖x‖)
  double worst_triangle = 0.0;             // max (‖x+y‖ − ‖x‖ − ‖y‖) / (‖x‖ + ‖y‖)
  double worst_monotonicity = 0.0;         // max (‖x'‖ − K‖x‖) / (K‖x‖) over |x'| ≤ |x|
  double declared_lattice_constant = 1.0;  // K used above
  double empirical_lattice_constant = 0.0; // max ‖x'‖ / ‖x‖ over |x'| ≤ |x|
  bool pass = false;
  std::string first_failure;
};

/// Default relative tolerance for the audit.
inline constexpr double kAuditTol = 1e-9;

/// Samples vectors and scalars and reports worst-case violations of the norm
/// and lattice-norm axioms. Never throws on a failing oracle.
NormAuditReport audit_norm_axioms(const NormOracle& n, std::uint64_t sample_count,
                                  std::uint64_t seed, double tol = kAuditTol);

}  // namespace ukk
