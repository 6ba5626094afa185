#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ukk/lattice.hpp"

namespace ukk {

/// Seeded generator with platform-stable mappings to doubles and indices.
/// The std:: distributions are implementation-defined, so they are avoided
/// to keep reports byte-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on {0, ..., n-1}; n must be positive.
  std::size_t below(std::size_t n);
  bool coin(double prob = 0.5) { return uniform() < prob; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Independent, reproducible seed for trial `index` of a campaign seeded with `seed`.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

/// Shapes of random coordinates used by every sampler in the library.
/// Mixing them matters: extremal configurations of lattice norms tend to
/// have equal-magnitude coordinates, which continuous draws never hit.
enum class CoordinateShape { Uniform, Constant, LogUniform };

CoordinateShape sample_shape(Rng& rng);
double sample_magnitude(Rng& rng, CoordinateShape shape);

/// Vector of dimension `dim` with random nonzero values on `atoms` and zero elsewhere.
LatticeVector sample_on_atoms(Rng& rng, std::size_t dim, std::span<const std::size_t> atoms,
                              CoordinateShape shape, bool random_signs = true);

/// Random nonempty subset of {0..dim-1} of size at most max_size, ascending.
std::vector<std::size_t> sample_support(Rng& rng, std::size_t dim, std::size_t max_size);

/// Random set partition of `items` into nonempty blocks; the block count is
/// drawn uniformly from 1..items.size().
std::vector<std::vector<std::size_t>> sample_partition(Rng& rng,
                                                       std::span<const std::size_t> items);

}  // namespace ukk
