#include "ukk/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ukk {

namespace {
__extension__ typedef unsigned __int128 u128;
}  // namespace

std::size_t Rng::below(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
  // Lemire's multiply-shift; the bias is at most n / 2^64.
  const u128 wide = static_cast<u128>(engine_()) * n;
  return static_cast<std::size_t>(wide >> 64);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over (seed, index)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CoordinateShape sample_shape(Rng& rng) {
  switch (rng.below(3)) {
    case 0:
      return CoordinateShape::Uniform;
    case 1:
      return CoordinateShape::Constant;
    default:
      return CoordinateShape::LogUniform;
  }
}

double sample_magnitude(Rng& rng, CoordinateShape shape) {
  switch (shape) {
    case CoordinateShape::Constant:
      return 1.0;
    case CoordinateShape::LogUniform:
      return std::exp(rng.uniform(-3.0, 3.0));
    case CoordinateShape::Uniform:
    default:
      // (0, 1]
      return 1.0 - rng.uniform();
  }
}

LatticeVector sample_on_atoms(Rng& rng, std::size_t dim, std::span<const std::size_t> atoms,
                              CoordinateShape shape, bool random_signs) {
  std::vector<double> c(dim, 0.0);
  for (std::size_t i : atoms) {
    const double m = sample_magnitude(rng, shape);
    c.at(i) = (random_signs && rng.coin()) ? -m : m;
  }
  return LatticeVector(std::move(c));
}

std::vector<std::size_t> sample_support(Rng& rng, std::size_t dim, std::size_t max_size) {
  if (dim == 0 || max_size == 0) throw std::invalid_argument("sample_support: empty range");
  const std::size_t size = 1 + rng.below(std::min(dim, max_size));
  std::vector<std::size_t> atoms(dim);
  for (std::size_t i = 0; i < dim; ++i) atoms[i] = i;
  rng.shuffle(atoms);
  atoms.resize(size);
  std::sort(atoms.begin(), atoms.end());
  return atoms;
}

std::vector<std::vector<std::size_t>> sample_partition(Rng& rng,
                                                       std::span<const std::size_t> items) {
  if (items.empty()) return {};
  const std::size_t blocks = 1 + rng.below(items.size());
  std::vector<std::size_t> order(items.begin(), items.end());
  rng.shuffle(order);
  std::vector<std::vector<std::size_t>> out(blocks);
  // first `blocks` items seed one block each so none is empty
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t b = i < blocks ? i : rng.below(blocks);
    out[b].push_back(order[i]);
  }
  for (auto& b : out) std::sort(b.begin(), b.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ukk
