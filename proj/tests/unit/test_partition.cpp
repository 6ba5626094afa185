#include <gtest/gtest.h>

#include <bit>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "ukk/partition.hpp"

TEST(BellNumber, KnownValues) {
  const std::vector<std::uint64_t> bell = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597};
  for (unsigned n = 0; n < bell.size(); ++n) EXPECT_EQ(ukk::bell_number(n), bell[n]) << n;
  EXPECT_THROW(ukk::bell_number(26), std::out_of_range);
}

TEST(SetPartitions, CountMatchesNaiveEnumeration) {
  for (std::size_t n = 0; n <= 8; ++n) {
    std::vector<std::size_t> items(n);
    for (std::size_t i = 0; i < n; ++i) items[i] = i;
    std::uint64_t count = 0;
    std::set<std::vector<std::uint32_t>> seen;
    ukk::for_each_set_partition(n, [&](std::span<const std::uint32_t> masks) {
      ++count;
      std::uint32_t all = 0;
      for (auto m : masks) {
        EXPECT_NE(m, 0u);
        EXPECT_EQ(all & m, 0u);
        all |= m;
      }
      EXPECT_EQ(all, n == 0 ? 0u : (1u << n) - 1);
      std::vector<std::uint32_t> key(masks.begin(), masks.end());
      std::sort(key.begin(), key.end());
      EXPECT_TRUE(seen.insert(key).second);
    });
    EXPECT_EQ(count, oracle::all_partitions(items).size());
    EXPECT_EQ(count, ukk::bell_number(static_cast<unsigned>(n)));
  }
}

TEST(SetPartitions, LexicographicOrderStartsTrivialEndsSingletons) {
  std::vector<std::vector<std::uint32_t>> order;
  ukk::for_each_set_partition(3, [&](std::span<const std::uint32_t> m) {
    order.emplace_back(m.begin(), m.end());
  });
  ASSERT_EQ(order.size(), 5u);
  EXPECT_EQ(order.front(), (std::vector<std::uint32_t>{0b111}));
  EXPECT_EQ(order[1], (std::vector<std::uint32_t>{0b011, 0b100}));
  EXPECT_EQ(order.back(), (std::vector<std::uint32_t>{0b001, 0b010, 0b100}));
}

TEST(SetPartitions, EarlyStopAndLimits) {
  int visited = 0;
  ukk::for_each_set_partition(6, [&](std::span<const std::uint32_t>) { return ++visited < 10; });
  EXPECT_EQ(visited, 10);
  EXPECT_THROW(ukk::for_each_set_partition(21, [](std::span<const std::uint32_t>) {}), std::length_error);
}

TEST(SupportPartition, CanonicalFormAndChecks) {
  const auto p = ukk::canonicalize({{{7, 3}, {1}, {5, 2}}});
  EXPECT_EQ(p.blocks, (std::vector<std::vector<std::size_t>>{{1}, {2, 5}, {3, 7}}));
  const std::vector<std::size_t> supp = {1, 2, 3, 5, 7};
  EXPECT_TRUE(ukk::is_partition_of(p, supp));
  EXPECT_FALSE(ukk::is_partition_of({{{1, 2}, {2, 3, 5, 7}}}, supp));
  EXPECT_FALSE(ukk::is_partition_of({{{1, 2, 3}, {}, {5, 7}}}, supp));
  EXPECT_EQ(ukk::trivial_partition(supp).size(), 1u);
  EXPECT_EQ(ukk::singleton_partition(supp).size(), 5u);
}
