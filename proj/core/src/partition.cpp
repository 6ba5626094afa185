#include "ukk/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace ukk {

SupportPartition canonicalize(SupportPartition p) {
  for (auto& b : p.blocks) std::sort(b.begin(), b.end());
  std::sort(p.blocks.begin(), p.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return p;
}

bool is_partition_of(const SupportPartition& p, std::span<const std::size_t> support) {
  std::vector<std::size_t> all;
  for (const auto& b : p.blocks) {
    if (b.empty()) return false;
    all.insert(all.end(), b.begin(), b.end());
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) return false;
  std::vector<std::size_t> want(support.begin(), support.end());
  std::sort(want.begin(), want.end());
  return all == want;
}

SupportPartition trivial_partition(std::span<const std::size_t> support) {
  SupportPartition p;
  if (!support.empty()) p.blocks.emplace_back(support.begin(), support.end());
  return canonicalize(std::move(p));
}

SupportPartition singleton_partition(std::span<const std::size_t> support) {
  SupportPartition p;
  for (std::size_t i : support) p.blocks.push_back({i});
  return canonicalize(std::move(p));
}

std::uint64_t bell_number(unsigned n) {
  if (n > 25) throw std::out_of_range("bell_number: n > 25 overflows 64 bits");
  std::vector<std::uint64_t> row{1};
  for (unsigned i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

}  // namespace ukk
