#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ukk/error.hpp"
#include "ukk/ukk_harness.hpp"

using ukk::LatticeVector;
using ukk::NormOracle;
using ukk::TrialStatus;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

std::vector<LatticeVector> bumps_08_06(const NormOracle& n, std::size_t horizon = 8) {
  return ukk::generate_bump_sequence(n, 2, LatticeVector{0.8}, 0.6, horizon, 1 + horizon);
}

}  // namespace

TEST(DeltaBound, Examples) {
  for (double p : {1.0, 2.0, 4.0, 10.0}) EXPECT_EQ(ukk::delta_bound(2.0, p), 1.0);
  EXPECT_NEAR(ukk::delta_bound(1.0, 2), 1 - std::sqrt(3.0) / 2, 1e-15);
  EXPECT_NEAR(ukk::delta_bound(1.0, 4), 1 - std::pow(15.0 / 16.0, 0.25), 1e-15);
  EXPECT_THROW(ukk::delta_bound(0.0, 2), ukk::DomainError);
  EXPECT_THROW(ukk::delta_bound(2.0 + 1e-12, 2), ukk::DomainError);
  EXPECT_THROW(ukk::delta_bound(1.0, 0.5), ukk::DomainError);
}

TEST(DeltaBound, MonotoneAndSatisfiesDefiningIdentity) {
  for (double p : {1.0, 1.5, 2.0, 5.0}) {
    double prev = 0.0;
    for (double e = 0.01; e <= 2.0; e += 0.01) {
      const double d = ukk::delta_bound(e, p);
      EXPECT_GT(d, prev);
      EXPECT_NEAR(std::pow(1 - d, p), 1 - std::pow(e / 2, p), 1e-14);
      prev = d;
    }
  }
  // tiny separations keep their relative accuracy
  EXPECT_NEAR(ukk::delta_bound(1e-6, 1) / 5e-7, 1.0, 1e-12);
}

TEST(BumpSequence, Examples) {
  const auto n = NormOracle::lq(2, 9);
  const auto seq = bumps_08_06(n);
  ASSERT_EQ(seq.size(), 8u);
  for (const auto& x : seq) EXPECT_NEAR(ukk::renorm(n, 2, x).value, 1.0, 1e-15);
  const auto sep = ukk::measure_separation(seq, n, 2);
  EXPECT_NEAR(sep.epsilon, 0.6 * kSqrt2, 1e-15);
  EXPECT_TRUE(sep.exact);

  const auto flat = ukk::generate_bump_sequence(n, 2, LatticeVector{0.8}, 0.0, 8, 9);
  EXPECT_EQ(ukk::measure_separation(flat, n, 2).epsilon, 0.0);

  const auto l2 = NormOracle::lq(2, 6);
  const auto units = ukk::generate_bump_sequence(l2, 2, LatticeVector::zeros(1), 1.0, 5, 6);
  EXPECT_NEAR(ukk::measure_separation(units, l2, 2).epsilon, kSqrt2, 1e-15);
}

TEST(BumpSequence, Errors) {
  const auto n = NormOracle::lq(2, 9);
  try {
    ukk::generate_bump_sequence(n, 2, LatticeVector{0.9}, 0.6, 8, 9);
    FAIL() << "expected a unit-ball violation";
  } catch (const ukk::UnitBallViolation& e) {
    EXPECT_EQ(e.index(), 0u);
  }
  EXPECT_THROW(ukk::generate_bump_sequence(n, 2, LatticeVector{0.8}, 0.6, 9, 9), std::invalid_argument);
}

TEST(Separation, Examples) {
  const auto n = NormOracle::lq(2, 3);
  const std::vector<LatticeVector> units = {LatticeVector::unit(3, 0), LatticeVector::unit(3, 1),
                                            LatticeVector::unit(3, 2)};
  EXPECT_NEAR(ukk::measure_separation(units, n, 2).epsilon, kSqrt2, 1e-15);
  const std::vector<LatticeVector> same(3, LatticeVector{1, 0, 0});
  EXPECT_EQ(ukk::measure_separation(same, n, 2).epsilon, 0.0);
  EXPECT_THROW(ukk::measure_separation({units[0]}, n, 2), std::invalid_argument);
}

TEST(CoordinatewiseConvergence, Examples) {
  const auto n = NormOracle::lq(2, 9);
  EXPECT_TRUE(ukk::check_coordinatewise_convergence(bumps_08_06(n), LatticeVector{0.8, 0, 0, 0, 0, 0, 0, 0, 0},
                                                    1e-9));
  const std::vector<LatticeVector> stuck(10, LatticeVector{1, 0});
  EXPECT_FALSE(ukk::check_coordinatewise_convergence(stuck, LatticeVector::zeros(2), 1e-9));

  std::vector<LatticeVector> harmonic;
  for (int k = 1; k <= 10000; ++k) harmonic.push_back(LatticeVector{1.0 / k});
  EXPECT_TRUE(ukk::check_coordinatewise_convergence(harmonic, LatticeVector{0.0}, 1e-3));
  EXPECT_FALSE(ukk::check_coordinatewise_convergence(harmonic, LatticeVector{0.0}, 1e-5));
}

TEST(CoordinatewiseConvergence, FinalIndexTouchIsAllowedOnce) {
  const std::vector<LatticeVector> s1 = {LatticeVector{0, 0}, LatticeVector{0, 0}, LatticeVector{0, 1}};
  EXPECT_TRUE(ukk::check_coordinatewise_convergence(s1, LatticeVector::zeros(2), 1e-9));
  const std::vector<LatticeVector> s2 = {LatticeVector{0, 1}, LatticeVector{0, 0}, LatticeVector{0, 1}};
  EXPECT_FALSE(ukk::check_coordinatewise_convergence(s2, LatticeVector::zeros(2), 1e-9));
}

TEST(LimitTruncations, Examples) {
  const auto n = NormOracle::lq(2, 9);
  const LatticeVector limit{0.8, 0, 0, 0, 0, 0, 0, 0, 0};
  const auto seq = bumps_08_06(n);
  const LatticeVector u{3, 0, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_TRUE(ukk::check_prop2_limits(u, seq, limit, n, 0.0));
  for (const auto& x : seq) {
    EXPECT_EQ(ukk::eval_norm(n, ukk::truncate(u, x - limit)), 0.0);
    EXPECT_EQ(ukk::eval_norm(n, ukk::truncate(x - limit, u)), 0.0);
  }

  const auto l2 = NormOracle::lq(2, 2);
  std::vector<LatticeVector> harmonic;
  for (int k = 1; k <= 2000; ++k) harmonic.push_back(LatticeVector{1.0 / k, 0});
  EXPECT_TRUE(ukk::check_prop2_limits(LatticeVector{1, 1}, harmonic, LatticeVector::zeros(2), l2, 1e-3));

  const std::vector<LatticeVector> stuck(10, LatticeVector{1, 0});
  EXPECT_FALSE(ukk::check_prop2_limits(LatticeVector{1, 1}, stuck, LatticeVector::zeros(2), l2, 1e-9));
}

TEST(LimitTruncations, HoldForConvergentSequencesWithPointwiseBound) {
  ukk::Rng rng(31);
  for (const auto& n : oracle::builtin_oracles(8)) {
    for (int t = 0; t < 50; ++t) {
      const auto limit = oracle::random_vector(rng, 8, 8);
      std::vector<LatticeVector> seq;
      for (int k = 1; k <= 40; ++k) {
        const auto noise = oracle::random_vector(rng, 8, 8);
        seq.push_back(limit + (k <= 20 ? std::pow(2.0, -k) : 0.0) * noise);
      }
      ASSERT_TRUE(ukk::check_coordinatewise_convergence(seq, limit, 1e-9));
      const auto u = oracle::random_vector(rng, 8, 8);
      ASSERT_TRUE(ukk::check_prop2_limits(u, seq, limit, n, 1e-9)) << n.describe();
      for (const auto& x : seq) {
        const auto d = x - limit;
        const double lhs = ukk::eval_norm(n, ukk::truncate(u, d));
        const double rhs = 2.0 * ukk::eval_norm(n, ukk::meet(ukk::abs(d), ukk::abs(u)));
        ASSERT_LE(lhs, rhs * (1 + 1e-12) + 1e-300);
      }
    }
  }
}

TEST(UkkTrial, BumpFamilyPasses) {
  const auto n = NormOracle::lq(2, 9);
  LatticeVector limit{0.8, 0, 0, 0, 0, 0, 0, 0, 0};
  const auto t = ukk::run_ukk_trial(n, 2, bumps_08_06(n), limit, 5);
  EXPECT_EQ(t.status, TrialStatus::Pass);
  EXPECT_TRUE(t.pass);
  EXPECT_NEAR(t.delta_bound, 1 - std::sqrt(1 - 0.18), 1e-12);
  EXPECT_NEAR(t.delta_bound, 0.09446, 1e-5);
  EXPECT_NEAR(t.limit_renorm, 0.8, 1e-15);
  EXPECT_TRUE(t.liminf_ok);
  EXPECT_FALSE(t.advisory);
  EXPECT_EQ(t.seed, 5u);
}

TEST(UkkTrial, ZeroBumpOnSphereIsInvalid) {
  const auto n = NormOracle::lq(2, 9);
  const auto seq = ukk::generate_bump_sequence(n, 2, LatticeVector{1.0}, 0.0, 8, 9);
  const auto t = ukk::run_ukk_trial(n, 2, seq, LatticeVector{1, 0, 0, 0, 0, 0, 0, 0, 0}, 1);
  EXPECT_EQ(t.status, TrialStatus::Invalid);
  EXPECT_FALSE(t.pass);
  EXPECT_FALSE(t.invalid_reason.empty());
}

TEST(UkkTrial, PreconditionFailuresAreInvalidNotFail) {
  const auto n = NormOracle::lq(2, 2);
  const std::vector<LatticeVector> outside = {LatticeVector{2, 0}, LatticeVector{0, 2}};
  EXPECT_EQ(ukk::run_ukk_trial(n, 2, outside, LatticeVector::zeros(2), 0).status, TrialStatus::Invalid);
  const std::vector<LatticeVector> stuck = {LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{1, 0},
                                            LatticeVector{0, 1}};
  EXPECT_EQ(ukk::run_ukk_trial(n, 2, stuck, LatticeVector::zeros(2), 0).status, TrialStatus::Invalid);
}

TEST(UkkTrial, DetectsAWrongLimit) {
  // the sequence converges to 0, not to the declared limit
  const auto n = NormOracle::lq(2, 4);
  const auto seq = ukk::generate_bump_sequence(n, 2, LatticeVector::zeros(1), 1.0, 3, 4);
  EXPECT_EQ(ukk::run_ukk_trial(n, 2, seq, LatticeVector{0.5, 0, 0, 0}, 0).status, TrialStatus::Invalid);
}

TEST(Campaign, SmallCampaignsPassOnBuiltins) {
  for (const auto& base : {NormOracle::lq(2, 20), NormOracle::lq(1, 20),
                           NormOracle::uniform_block(NormOracle::lq(ukk::kInfinity, 10), NormOracle::lq(1, 2), 2)}) {
    ukk::BumpCampaign c;
    c.p = base.kind() == ukk::NormKind::Lq && base.q() == 1 ? 1.0 : 2.0;
    c.trials = 40;
    c.seed = 99;
    c.horizon = 16;
    c.core_atoms = 4;
    const auto trials = ukk::run_bump_campaign(base, c);
    const auto s = ukk::summarize(trials);
    EXPECT_EQ(s.trials, 40u);
    EXPECT_EQ(s.failed, 0u) << base.describe();
    EXPECT_EQ(s.liminf_failures, 0u) << base.describe();
    EXPECT_GT(s.passed, 30u);
    for (std::size_t i = 0; i < trials.size(); ++i) EXPECT_EQ(trials[i].index, i);
  }
}

TEST(Campaign, ThreadCountDoesNotChangeResults) {
  const auto n = NormOracle::lq(2, 12);
  ukk::BumpCampaign c;
  c.trials = 12;
  c.seed = 5;
  c.horizon = 8;
  c.fuzz = true;
  const auto a = ukk::run_bump_campaign(n, c);
  c.threads = 3;
  const auto b = ukk::run_bump_campaign(n, c);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].epsilon_measured, b[i].epsilon_measured);
    EXPECT_EQ(a[i].limit_renorm, b[i].limit_renorm);
    EXPECT_EQ(a[i].status, b[i].status);
  }
  for (const auto& t : a) EXPECT_NE(t.status, TrialStatus::Fail);
}

TEST(Campaign, ZeroBumpMakesEveryTrialInvalid) {
  const auto n = NormOracle::lq(2, 12);
  ukk::BumpCampaign c;
  c.trials = 10;
  c.horizon = 8;
  c.fixed_bump = 0.0;
  const auto s = ukk::summarize(ukk::run_bump_campaign(n, c));
  EXPECT_EQ(s.invalid, 10u);
  EXPECT_EQ(s.failed, 0u);
}
