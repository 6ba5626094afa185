#include <benchmark/benchmark.h>

#include "ukk/lattice.hpp"
#include "ukk/norm.hpp"
#include "ukk/random.hpp"

namespace {

ukk::LatticeVector dense(std::size_t dim, std::uint64_t seed) {
  ukk::Rng rng(seed);
  std::vector<std::size_t> all(dim);
  for (std::size_t i = 0; i < dim; ++i) all[i] = i;
  return ukk::sample_on_atoms(rng, dim, all, ukk::CoordinateShape::Uniform);
}

void BM_Truncate(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const auto u = dense(dim, 1), x = dense(dim, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ukk::truncate(u, x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Truncate)->RangeMultiplier(4)->Range(4, 1024);

void BM_DisjointResiduals(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const auto x = dense(dim, 3), y = dense(dim, 4);
  for (auto _ : state) benchmark::DoNotOptimize(ukk::disjoint_residuals(x, y));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DisjointResiduals)->RangeMultiplier(4)->Range(4, 1024);

void BM_EvalBlockNorm(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const auto n = ukk::NormOracle::uniform_block(ukk::NormOracle::lq(ukk::kInfinity, dim / 2),
                                                ukk::NormOracle::lq(1, 2), 2);
  const auto x = dense(dim, 5);
  for (auto _ : state) benchmark::DoNotOptimize(ukk::eval_norm(n, x));
}
BENCHMARK(BM_EvalBlockNorm)->RangeMultiplier(4)->Range(4, 1024);

}  // namespace
