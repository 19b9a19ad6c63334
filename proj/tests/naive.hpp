// naive.hpp
// Independent reference implementations for cross-checking the optimized
// library code. Everything here is deliberately written the slow, obvious
// way and shares no helpers with the code under test: per-site integer
// loops instead of word-parallel masks, the binomial Bell recurrence
// instead of the Bell triangle, direct index contraction instead of
// scatter tables.

#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wblsense/bitconfig.hpp"
#include "wblsense/graph.hpp"
#include "wblsense/rule54.hpp"

namespace naive {

// Wolfram numbering: the new center bit is bit ((n1, x, n2) read as a
// 3-bit number) of the rule code. An independent route to the same local
// update the library states as x XOR (n1 OR n2).
inline int wolfram_rule_bit(int code, int left, int center, int right) {
  const int neighborhood = (left << 2) | (center << 1) | right;
  return (code >> neighborhood) & 1;
}

inline std::vector<int> unpack(const wblsense::BitConfiguration& c) {
  std::vector<int> bits(static_cast<std::size_t>(c.length()));
  for (int i = 0; i < c.length(); ++i) bits[static_cast<std::size_t>(i)] = c.bit(i) ? 1 : 0;
  return bits;
}

inline wblsense::BitConfiguration pack(const std::vector<int>& bits) {
  wblsense::BitConfiguration c(static_cast<int>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) c.set_bit(static_cast<int>(i), true);
  return c;
}

inline std::vector<int> half_sweep(const std::vector<int>& bits,
                                   const wblsense::BipartiteInteractionGraph& g, int side) {
  std::vector<int> out = bits;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.side_of(v) != side) continue;
    const auto& nb = g.in_neighbors(v);
    out[static_cast<std::size_t>(v)] =
        wolfram_rule_bit(54, bits[static_cast<std::size_t>(nb[0])],
                         bits[static_cast<std::size_t>(v)],
                         bits[static_cast<std::size_t>(nb[1])]);
  }
  return out;
}

inline std::vector<int> step(const std::vector<int>& bits,
                             const wblsense::BipartiteInteractionGraph& g,
                             wblsense::HalfStepOrder order) {
  const int first = order == wblsense::HalfStepOrder::v1_first ? 1 : 2;
  const int second = order == wblsense::HalfStepOrder::v1_first ? 2 : 1;
  return half_sweep(half_sweep(bits, g, first), g, second);
}

inline int hamming(const std::vector<int>& a, const std::vector<int>& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

// Bell numbers via the binomial recurrence B(n+1) = sum_i C(n,i) B(i);
// independent of the Bell-triangle route in the library.
inline std::vector<std::uint64_t> bell_numbers(int n_max) {
  std::vector<std::vector<std::uint64_t>> choose(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    choose[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, 1);
    for (int k = 1; k < n; ++k)
      choose[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] =
          choose[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)] +
          choose[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)];
  }
  std::vector<std::uint64_t> bell{1};
  for (int n = 0; n < n_max; ++n) {
    std::uint64_t next = 0;
    for (int i = 0; i <= n; ++i)
      next += choose[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] *
              bell[static_cast<std::size_t>(i)];
    bell.push_back(next);
  }
  return bell;
}

// Partial trace by direct double-index contraction over explicit bit
// vectors, using none of the library's scatter machinery. Qubit 0 is the
// most significant bit of a basis index.
inline Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& rho, int n,
                                      const std::vector<int>& keep) {
  const int k = static_cast<int>(keep.size());
  const Eigen::Index dim = Eigen::Index{1} << k;
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);

  auto assemble = [&](Eigen::Index kept_bits, Eigen::Index env_bits) {
    Eigen::Index full = 0;
    for (int j = 0; j < k; ++j)
      if ((kept_bits >> (k - 1 - j)) & 1)
        full |= Eigen::Index{1} << (n - 1 - keep[static_cast<std::size_t>(j)]);
    for (std::size_t j = 0; j < traced.size(); ++j)
      if ((env_bits >> (traced.size() - 1 - j)) & 1)
        full |= Eigen::Index{1} << (n - 1 - traced[j]);
    return full;
  };

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  const Eigen::Index env_dim = Eigen::Index{1} << traced.size();
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      for (Eigen::Index e = 0; e < env_dim; ++e)
        out(i, j) += rho(assemble(i, e), assemble(j, e));
  return out;
}

}  // namespace naive
