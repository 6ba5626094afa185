#include "ukk/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ukk/error.hpp"

namespace ukk {

namespace {

void validate(const std::vector<double>& coords) {
  if (coords.empty()) {
    throw std::invalid_argument("LatticeVector: dim must be >= 1");
  }
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i])) {
      throw std::invalid_argument("LatticeVector: coordinate " + std::to_string(i) +
                                  " is not finite");
    }
  }
}

template <typename F>
LatticeVector map(const LatticeVector& x, F f) {
  std::vector<double> out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) out[i] = f(x[i]);
  return LatticeVector(std::move(out));
}

template <typename F>
LatticeVector zip(const LatticeVector& x, const LatticeVector& y, F f) {
  require_same_dim(x.dim(), y.dim());
  std::vector<double> out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) out[i] = f(x[i], y[i]);
  return LatticeVector(std::move(out));
}

// x[i] clamped to [-|u|, |u|], written as the two meets so that exactly one
// of them is nonzero.
double clamp_to_envelope(double u, double x) {
  const double env = std::fabs(u);
  const double plus = std::min(std::max(0.0, x), env);
  const double minus = std::min(std::max(0.0, -x), env);
  return plus - minus;
}

}  // namespace

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionMismatch(a, b);
}

LatticeVector::LatticeVector(std::vector<double> coords) : coords_(std::move(coords)) {
  validate(coords_);
}

LatticeVector::LatticeVector(std::initializer_list<double> coords)
    : LatticeVector(std::vector<double>(coords)) {}

LatticeVector LatticeVector::zeros(std::size_t dim) {
  return LatticeVector(std::vector<double>(dim, 0.0));
}

LatticeVector LatticeVector::unit(std::size_t dim, std::size_t index, double height) {
  if (index >= dim) throw std::out_of_range("LatticeVector::unit: index out of range");
  std::vector<double> c(dim, 0.0);
  c[index] = height;
  return LatticeVector(std::move(c));
}

std::vector<std::size_t> LatticeVector::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] != 0.0) s.push_back(i);
  }
  return s;
}

std::size_t LatticeVector::support_size() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(coords_.begin(), coords_.end(), [](double v) { return v != 0.0; }));
}

bool LatticeVector::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](double v) { return v == 0.0; });
}

LatticeVector operator+(const LatticeVector& x, const LatticeVector& y) {
  return zip(x, y, [](double a, double b) { return a + b; });
}

LatticeVector operator-(const LatticeVector& x, const LatticeVector& y) {
  return zip(x, y, [](double a, double b) { return a - b; });
}

LatticeVector operator-(const LatticeVector& x) {
  return map(x, [](double a) { return -a; });
}

LatticeVector operator*(double s, const LatticeVector& x) {
  return map(x, [s](double a) { return s * a; });
}

LatticeVector pos_part(const LatticeVector& x) {
  return map(x, [](double a) { return std::max(0.0, a); });
}

LatticeVector neg_part(const LatticeVector& x) {
  return map(x, [](double a) { return std::max(0.0, -a); });
}

LatticeVector abs(const LatticeVector& x) {
  return map(x, [](double a) { return std::fabs(a); });
}

LatticeVector meet(const LatticeVector& x, const LatticeVector& y) {
  return zip(x, y, [](double a, double b) { return std::min(a, b); });
}

LatticeVector join(const LatticeVector& x, const LatticeVector& y) {
  return zip(x, y, [](double a, double b) { return std::max(a, b); });
}

bool is_disjoint(const LatticeVector& x, const LatticeVector& y) {
  require_same_dim(x.dim(), y.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (x[i] != 0.0 && y[i] != 0.0) return false;
  }
  return true;
}

bool pairwise_disjoint(std::span<const LatticeVector> family) {
  if (family.empty()) return true;
  const std::size_t dim = family.front().dim();
  std::vector<char> used(dim, 0);
  for (const auto& v : family) {
    require_same_dim(dim, v.dim());
    for (std::size_t i = 0; i < dim; ++i) {
      if (v[i] == 0.0) continue;
      if (used[i]) return false;
      used[i] = 1;
    }
  }
  return true;
}

LatticeVector truncate(const LatticeVector& u, const LatticeVector& x) {
  return zip(u, x, clamp_to_envelope);
}

std::pair<LatticeVector, LatticeVector> disjoint_residuals(const LatticeVector& x,
                                                           const LatticeVector& y) {
  return {x - truncate(y, x), y - truncate(x, y)};
}

LatticeVector restrict(const LatticeVector& x, std::span<const std::size_t> block) {
  std::vector<double> out(x.dim(), 0.0);
  for (std::size_t i : block) {
    if (i >= x.dim()) throw std::out_of_range("restrict: atom index out of range");
    out[i] = x[i];
  }
  return LatticeVector(std::move(out));
}

LatticeVector sum(std::span<const LatticeVector> family) {
  if (family.empty()) throw std::invalid_argument("sum: empty family");
  std::vector<double> acc(family.front().coords().begin(), family.front().coords().end());
  for (std::size_t k = 1; k < family.size(); ++k) {
    require_same_dim(acc.size(), family[k].dim());
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += family[k][i];
  }
  return LatticeVector(std::move(acc));
}

}  // namespace ukk
