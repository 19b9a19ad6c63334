// partition.hpp
// Set partitions of {0, ..., n-1} and their exhaustive enumeration.
//
// Partitions are enumerated as restricted growth strings (RGS) in
// lexicographic order: a[0] = 0 and a[i] <= 1 + max(a[0..i-1]), where a[i]
// is the block id of element i. Decoding an RGS yields the canonical form
// directly (blocks sorted internally, blocks ordered by minimum element).
// This lexicographic RGS order is the canonical enumeration order used for
// deterministic tie-breaking by callers.

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "wblsense/errors.hpp"

namespace wblsense {

inline constexpr int default_partition_cap = 10;

struct SetPartition {
  std::vector<std::vector<int>> blocks;

  int num_elements() const {
    int n = 0;
    for (const auto& b : blocks) n += static_cast<int>(b.size());
    return n;
  }

  // Sorts each block and orders blocks by their minimum element.
  SetPartition canonicalized() const;

  bool is_canonical() const;

  // Per-block bitmasks (bit i set <=> element i in the block). Requires
  // element labels < 64.
  std::vector<std::uint64_t> block_masks() const;

  // Checks that the blocks are non-empty, disjoint, and cover {0..n-1}.
  void validate(int n) const;

  std::string to_string() const;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;
};

inline SetPartition SetPartition::canonicalized() const {
  SetPartition out = *this;
  for (auto& b : out.blocks) std::sort(b.begin(), b.end());
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return out;
}

inline bool SetPartition::is_canonical() const { return *this == canonicalized(); }

inline std::vector<std::uint64_t> SetPartition::block_masks() const {
  std::vector<std::uint64_t> masks;
  masks.reserve(blocks.size());
  for (const auto& b : blocks) {
    std::uint64_t m = 0;
    for (int e : b) {
      if (e < 0 || e >= 64) throw std::invalid_argument("block_masks: element out of range");
      m |= std::uint64_t{1} << e;
    }
    masks.push_back(m);
  }
  return masks;
}

inline void SetPartition::validate(int n) const {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  int covered = 0;
  for (const auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("SetPartition: empty block");
    for (int e : b) {
      if (e < 0 || e >= n) throw std::invalid_argument("SetPartition: element out of range");
      if (seen[static_cast<std::size_t>(e)])
        throw std::invalid_argument("SetPartition: blocks are not disjoint");
      seen[static_cast<std::size_t>(e)] = 1;
      ++covered;
    }
  }
  if (covered != n) throw std::invalid_argument("SetPartition: blocks do not cover {0..n-1}");
}

inline std::string SetPartition::to_string() const {
  std::string s;
  for (const auto& b : blocks) {
    s += '{';
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(b[i]);
    }
    s += '}';
  }
  return s;
}

// Bell number B(n) (number of set partitions of an n-element set), exact in
// 64 bits for n <= 25.
inline std::uint64_t bell_number(int n) {
  if (n < 0 || n > 25) throw std::invalid_argument("bell_number: need 0 <= n <= 25");
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next;
    next.reserve(row.size() + 1);
    next.push_back(row.back());
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

inline SetPartition partition_from_rgs(const std::vector<int>& rgs) {
  int num_blocks = 0;
  for (int a : rgs) num_blocks = std::max(num_blocks, a + 1);
  SetPartition p;
  p.blocks.resize(static_cast<std::size_t>(num_blocks));
  for (int i = 0; i < static_cast<int>(rgs.size()); ++i)
    p.blocks[static_cast<std::size_t>(rgs[i])].push_back(i);
  return p;
}

// Visits every restricted growth string of length n in lexicographic order.
// The visitor receives the RGS as const std::vector<int>&.
template <typename Visitor>
void for_each_rgs(int n, Visitor&& visit) {
  if (n < 1) throw std::invalid_argument("for_each_rgs: need n >= 1");
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  // b[i] = 1 + max(a[0..i-1]) is the largest admissible value of a[i].
  std::vector<int> b(static_cast<std::size_t>(n), 1);
  b[0] = 0;
  for (;;) {
    visit(static_cast<const std::vector<int>&>(a));
    int i = n - 1;
    while (i > 0 && a[static_cast<std::size_t>(i)] == b[static_cast<std::size_t>(i)]) --i;
    if (i == 0) return;
    ++a[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) {
      a[static_cast<std::size_t>(j)] = 0;
      b[static_cast<std::size_t>(j)] =
          std::max(b[static_cast<std::size_t>(j - 1)], a[static_cast<std::size_t>(j - 1)] + 1);
    }
  }
}

inline void check_partition_capacity(int n, int cap) {
  if (n < 1) throw std::invalid_argument("partition enumeration: need n >= 1");
  if (n > cap) {
    std::string cost = n <= 25 ? std::to_string(bell_number(n)) : std::string("> 4.6e18");
    throw CapacityError("partition enumeration for n=" + std::to_string(n) + " requires Bell(" +
                        std::to_string(n) + ") = " + cost + " partitions; cap is " +
                        std::to_string(cap));
  }
}

// Visits every set partition of {0..n-1} exactly once, in canonical form,
// in lexicographic RGS order.
template <typename Visitor>
void for_each_partition(int n, Visitor&& visit, int cap = default_partition_cap) {
  check_partition_capacity(n, cap);
  for_each_rgs(n, [&](const std::vector<int>& rgs) { visit(partition_from_rgs(rgs)); });
}

inline std::vector<SetPartition> enumerate_partitions(int n, int cap = default_partition_cap) {
  check_partition_capacity(n, cap);
  std::vector<SetPartition> out;
  out.reserve(static_cast<std::size_t>(bell_number(std::min(n, 25))));
  for_each_partition(n, [&](SetPartition p) { out.push_back(std::move(p)); }, cap);
  return out;
}

}  // namespace wblsense
