#include <benchmark/benchmark.h>

#include "ukk/norm.hpp"
#include "ukk/random.hpp"
#include "ukk/renorm.hpp"
#include "ukk/ukk_harness.hpp"

namespace {

constexpr std::size_t kDim = 24;

ukk::LatticeVector with_support(std::size_t m, std::uint64_t seed) {
  ukk::Rng rng(seed);
  std::vector<std::size_t> atoms(m);
  for (std::size_t i = 0; i < m; ++i) atoms[i] = 2 * i % kDim + (2 * i >= kDim);
  return ukk::sample_on_atoms(rng, kDim, atoms, ukk::CoordinateShape::LogUniform);
}

const ukk::NormOracle& block_norm() {
  static const auto n = ukk::NormOracle::uniform_block(ukk::NormOracle::lq(ukk::kInfinity, kDim / 2),
                                                       ukk::NormOracle::lq(1, 2), 2);
  return n;
}

// support size sweeps the Bell-number growth of full enumeration
void BM_RenormExact(benchmark::State& state) {
  const auto x = with_support(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(ukk::renorm_exact(block_norm(), 2.0, x).value);
}
BENCHMARK(BM_RenormExact)->DenseRange(2, 12, 2)->Unit(benchmark::kMicrosecond);

void BM_RenormHeuristic(benchmark::State& state) {
  const auto x = with_support(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(ukk::renorm_heuristic(block_norm(), 2.0, x).value);
}
BENCHMARK(BM_RenormHeuristic)->DenseRange(2, 24, 4)->Unit(benchmark::kMicrosecond);

void BM_UkkTrial(benchmark::State& state) {
  const auto horizon = static_cast<std::size_t>(state.range(0));
  const auto n = ukk::NormOracle::lq(2, horizon + 4);
  ukk::BumpCampaign c;
  c.horizon = horizon;
  c.seed = 3;
  const auto inst = ukk::sample_bump_instance(n, c, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ukk::run_ukk_trial(n, 2.0, inst.sequence, inst.limit, 0).pass);
  }
}
BENCHMARK(BM_UkkTrial)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
