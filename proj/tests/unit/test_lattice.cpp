#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "ukk/error.hpp"
#include "ukk/lattice.hpp"
#include "ukk/partition.hpp"
#include "ukk/random.hpp"

using ukk::LatticeVector;

namespace {

LatticeVector v(std::initializer_list<double> c) { return LatticeVector(c); }

bool bitwise_equal(const LatticeVector& a, const LatticeVector& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

}  // namespace

TEST(LatticeVector, RejectsNonFiniteAndEmpty) {
  EXPECT_THROW(v({1.0, std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
  EXPECT_THROW(v({std::numeric_limits<double>::infinity()}), std::invalid_argument);
  EXPECT_THROW(LatticeVector(std::vector<double>{}), std::invalid_argument);
}

TEST(LatticeVector, SupportIsNonzeroAtoms) {
  const auto x = v({0, 2, 0, -1});
  EXPECT_EQ(x.support(), (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(x.support_size(), 2u);
  EXPECT_TRUE(LatticeVector::zeros(3).is_zero());
}

TEST(PosNegParts, Examples) {
  EXPECT_EQ(ukk::pos_part(v({0, 0, 0})), v({0, 0, 0}));
  EXPECT_EQ(ukk::pos_part(v({3, -2, 0})), v({3, 0, 0}));
  EXPECT_EQ(ukk::pos_part(v({1, 4, 0.5})), v({1, 4, 0.5}));
  EXPECT_EQ(ukk::neg_part(v({3, -2, 0})), v({0, 2, 0}));
  EXPECT_EQ(ukk::neg_part(v({0, 0})), v({0, 0}));
}

TEST(PosNegParts, ZeroIsPositiveZero) {
  const auto p = ukk::pos_part(v({-1, 0}));
  EXPECT_FALSE(std::signbit(p[0]));
  EXPECT_FALSE(std::signbit(ukk::neg_part(v({1, 0}))[0]));
}

TEST(MeetJoinAbs, Examples) {
  EXPECT_EQ(ukk::meet(v({1, 5}), v({3, 2})), v({1, 2}));
  EXPECT_EQ(ukk::join(v({1, 5}), v({3, 2})), v({3, 5}));
  const auto x = v({-1, 4, 0});
  EXPECT_EQ(ukk::meet(x, x), x);
  EXPECT_EQ(ukk::abs(v({-1, 2})), v({1, 2}));
  EXPECT_THROW(ukk::meet(v({1}), v({1, 2})), ukk::DimensionMismatch);
  EXPECT_THROW(ukk::join(v({1}), v({1, 2})), ukk::DimensionMismatch);
}

TEST(Disjointness, Examples) {
  EXPECT_TRUE(ukk::is_disjoint(LatticeVector::unit(3, 0), LatticeVector::unit(3, 1)));
  EXPECT_TRUE(ukk::is_disjoint(v({1, 1, 0}), v({0, 0, 3})));
  EXPECT_FALSE(ukk::is_disjoint(v({1, 1, 0}), v({0, 1, 3})));
  EXPECT_THROW(ukk::is_disjoint(v({1}), v({1, 2})), ukk::DimensionMismatch);
  const std::vector<LatticeVector> fam = {v({1, 0, 0}), v({0, 2, 0}), v({0, 0, 3})};
  EXPECT_TRUE(ukk::pairwise_disjoint(fam));
}

TEST(Truncate, Examples) {
  EXPECT_EQ(ukk::truncate(v({1, 1}), v({3, -2})), v({1, -1}));
  const auto x = v({2.5, -7, 0, 1e-300});
  EXPECT_EQ(ukk::truncate(x, x), x);
  EXPECT_EQ(ukk::truncate(x, LatticeVector::zeros(4)), LatticeVector::zeros(4));
  EXPECT_THROW(ukk::truncate(v({1}), v({1, 2})), ukk::DimensionMismatch);
}

TEST(DisjointResiduals, Examples) {
  const auto [a, b] = ukk::disjoint_residuals(v({3, -2, 0}), v({2, 2, 5}));
  EXPECT_EQ(a, v({1, 0, 0}));
  EXPECT_EQ(b, v({0, 0, 5}));

  const auto x = v({1.5, -3, 0});
  const auto [a2, b2] = ukk::disjoint_residuals(x, x);
  EXPECT_TRUE(a2.is_zero());
  EXPECT_TRUE(b2.is_zero());

  const auto y = v({0, 0, 4});
  const auto [a3, b3] = ukk::disjoint_residuals(x, y);
  EXPECT_EQ(a3, x);
  EXPECT_EQ(b3, y);
}

TEST(Restrict, Examples) {
  const auto x = v({1, 2, 3});
  const std::vector<std::size_t> b02 = {0, 2};
  EXPECT_EQ(ukk::restrict(x, b02), v({1, 0, 3}));
  const auto s = x.support();
  EXPECT_EQ(ukk::restrict(x, s), x);
  EXPECT_TRUE(ukk::restrict(x, std::vector<std::size_t>{}).is_zero());
  EXPECT_THROW(ukk::restrict(x, std::vector<std::size_t>{3}), std::out_of_range);
}

// Properties over random inputs. Lattice operations are exact in floating
// point, so these use zero tolerance.

class LatticeProperties : public ::testing::Test {
 protected:
  ukk::Rng rng{20240611};
  LatticeVector draw() {
    const std::size_t dim = 1 + rng.below(12);
    return oracle::random_vector(rng, dim, dim);
  }
  LatticeVector draw_like(const LatticeVector& x) { return oracle::random_vector(rng, x.dim(), x.dim()); }
};

TEST_F(LatticeProperties, PartsDecomposeExactly) {
  for (int t = 0; t < 2000; ++t) {
    const auto x = draw();
    const auto p = ukk::pos_part(x), n = ukk::neg_part(x);
    ASSERT_TRUE(bitwise_equal(p - n, x));
    ASSERT_TRUE(ukk::meet(p, n).is_zero());
    for (std::size_t i = 0; i < x.dim(); ++i) ASSERT_EQ(p[i] * n[i], 0.0);
  }
}

TEST_F(LatticeProperties, ResidualsAreDisjoint) {
  for (int t = 0; t < 5000; ++t) {
    const auto x = draw();
    // half the pairs share the support of x with rescaled magnitudes
    const auto y = rng.coin(0.5) ? draw_like(x) : rng.uniform(0.1, 3.0) * x + draw_like(x);
    const auto [a, b] = ukk::disjoint_residuals(x, y);
    ASSERT_TRUE(ukk::is_disjoint(a, b));
    for (std::size_t i = 0; i < a.dim(); ++i) ASSERT_EQ(std::min(std::fabs(a[i]), std::fabs(b[i])), 0.0);
  }
}

TEST_F(LatticeProperties, TruncationIsDominated) {
  for (int t = 0; t < 2000; ++t) {
    const auto x = draw();
    const auto u = draw_like(x);
    const auto s = ukk::truncate(u, x);
    for (std::size_t i = 0; i < x.dim(); ++i) {
      ASSERT_LE(std::fabs(s[i]), std::fabs(u[i]));
      ASSERT_LE(std::fabs(s[i]), std::fabs(x[i]));
      ASSERT_EQ(s[i], std::clamp(x[i], -std::fabs(u[i]), std::fabs(u[i])));
    }
  }
}

TEST_F(LatticeProperties, TruncationMonotoneOnPositiveCone) {
  for (int t = 0; t < 2000; ++t) {
    const auto x = ukk::abs(draw());
    const auto bump = ukk::abs(draw_like(x));
    const auto x2 = x + bump;
    const auto u = draw_like(x);
    const auto a = ukk::truncate(u, x), b = ukk::truncate(u, x2);
    for (std::size_t i = 0; i < x.dim(); ++i) ASSERT_LE(a[i], b[i]);
  }
}

TEST_F(LatticeProperties, RestrictionsOfPartitionSumToX) {
  for (int t = 0; t < 1000; ++t) {
    const auto x = draw();
    const auto supp = x.support();
    if (supp.empty()) continue;
    const auto part = ukk::sample_partition(rng, supp);
    std::vector<LatticeVector> pieces;
    for (const auto& b : part) pieces.push_back(ukk::restrict(x, b));
    ASSERT_TRUE(ukk::pairwise_disjoint(pieces));
    ASSERT_TRUE(bitwise_equal(ukk::sum(pieces), x));
  }
}
