#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace ukk {

/// A finite real vector over indexed atoms, ordered coordinatewise.
///
/// This is the purely atomic specialization of a Banach lattice: every
/// lattice operation below acts coordinate by coordinate, so the truncation
/// S_u(x) becomes a clamp of x[i] to [-|u[i]|, |u[i]|]. The general
/// (non-atomic) definitions are not modelled.
///
/// Values are immutable. Construction rejects NaN, infinities and dim 0
/// with std::invalid_argument.
class LatticeVector {
 public:
  explicit LatticeVector(std::vector<double> coords);
  LatticeVector(std::initializer_list<double> coords);

  static LatticeVector zeros(std::size_t dim);
  static LatticeVector unit(std::size_t dim, std::size_t index, double height = 1.0);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  /// Indices with a nonzero coordinate, ascending.
  std::vector<std::size_t> support() const;
  std::size_t support_size() const noexcept;
  bool is_zero() const noexcept;

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;

 private:
  std::vector<double> coords_;
};

LatticeVector operator+(const LatticeVector& x, const LatticeVector& y);
LatticeVector operator-(const LatticeVector& x, const LatticeVector& y);
LatticeVector operator-(const LatticeVector& x);
LatticeVector operator*(double s, const LatticeVector& x);

LatticeVector pos_part(const LatticeVector& x);
LatticeVector neg_part(const LatticeVector& x);
LatticeVector abs(const LatticeVector& x);
LatticeVector meet(const LatticeVector& x, const LatticeVector& y);
LatticeVector join(const LatticeVector& x, const LatticeVector& y);

/// |x| ∧ |y| = 0, i.e. no atom carries a nonzero value in both. Exact.
bool is_disjoint(const LatticeVector& x, const LatticeVector& y);
bool pairwise_disjoint(std::span<const LatticeVector> family);

/// S_u(x) = x⁺ ∧ |u| − x⁻ ∧ |u|.
LatticeVector truncate(const LatticeVector& u, const LatticeVector& x);

/// (x − S_y(x), y − S_x(y)). The two residuals are disjoint, exactly.
std::pair<LatticeVector, LatticeVector> disjoint_residuals(const LatticeVector& x,
                                                           const LatticeVector& y);

/// Zero outside `block`. Throws std::out_of_range on a bad index.
LatticeVector restrict(const LatticeVector& x, std::span<const std::size_t> block);

/// Sum of a family; all members must share a dimension.
LatticeVector sum(std::span<const LatticeVector> family);

/// Throws DimensionMismatch unless a == b.
void require_same_dim(std::size_t a, std::size_t b);

}  // namespace ukk
