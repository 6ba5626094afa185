#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace ukk {

/// Disjoint nonempty blocks of atom indices covering a vector's support.
struct SupportPartition {
  std::vector<std::vector<std::size_t>> blocks;

  std::size_t size() const noexcept { return blocks.size(); }
  friend bool operator==(const SupportPartition&, const SupportPartition&) = default;
};

/// Sorts every block and orders blocks by their smallest atom, which is the
/// block order of the corresponding restricted-growth string.
SupportPartition canonicalize(SupportPartition p);

/// True iff blocks are nonempty, pairwise disjoint and their union is `support`.
bool is_partition_of(const SupportPartition& p, std::span<const std::size_t> support);

SupportPartition trivial_partition(std::span<const std::size_t> support);
SupportPartition singleton_partition(std::span<const std::size_t> support);

/// Bell numbers via the Bell triangle; exact for n <= 25.
std::uint64_t bell_number(unsigned n);

/// Largest n for which partition enumeration is supported (block masks are 32-bit).
inline constexpr std::size_t kMaxEnumerable = 20;

/// Visits every set partition of {0..n-1} in lexicographic order of its
/// restricted-growth string a (a[0] = 0, a[i] <= 1 + max(a[0..i-1])).
/// The visitor receives the block bitmasks in block order, i.e. block j is
/// the set {i : a[i] == j}. A visitor returning bool can stop early with false.
/// For n = 0 the empty partition is visited once.
template <typename Visitor>
void for_each_set_partition(std::size_t n, Visitor&& visit);

namespace detail {

template <typename Visitor>
bool rgs_descend(std::size_t i, std::size_t n, std::size_t used, std::uint32_t* masks,
                 Visitor& visit) {
  if (i == n) {
    const std::span<const std::uint32_t> blocks(masks, used);
    if constexpr (std::is_void_v<std::invoke_result_t<Visitor&, std::span<const std::uint32_t>>>) {
      visit(blocks);
      return true;
    } else {
      return static_cast<bool>(visit(blocks));
    }
  }
  const std::uint32_t bit = std::uint32_t{1} << i;
  for (std::size_t j = 0; j < used; ++j) {
    masks[j] |= bit;
    const bool go_on = rgs_descend(i + 1, n, used, masks, visit);
    masks[j] &= ~bit;
    if (!go_on) return false;
  }
  masks[used] = bit;
  const bool go_on = rgs_descend(i + 1, n, used + 1, masks, visit);
  masks[used] = 0;
  return go_on;
}

}  // namespace detail

template <typename Visitor>
void for_each_set_partition(std::size_t n, Visitor&& visit) {
  if (n > kMaxEnumerable) throw std::length_error("for_each_set_partition: n too large");
  std::uint32_t masks[kMaxEnumerable + 1] = {};
  detail::rgs_descend(0, n, 0, masks, visit);
}

}  // namespace ukk
