// wbl.hpp
// Weighted Bures Length: the maximum over all set partitions of the qubit
// labels of the per-block Bures distances between reduced states, each
// weighted by the inverse block size,
//
//     D(rho, sigma) = max_P sum_alpha (1/k_alpha) arccos F(rho_alpha, sigma_alpha).
//
// The maximization is exhaustive over all Bell(n) partitions up to a
// configurable cap. Per-block distances depend only on the block's label
// set, so they are cached per subset mask and each partition reduces to a
// lookup sum; the Bures evaluations, not the enumeration, dominate.
//
// For GHZ-block pairs (|0...0> against a|0^k 1...> + b|1^k 0...>) the
// closed form k * arccos|a| is available and must agree with the
// enumeration wherever both are computable.

#pragma once

#include <bit>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "wblsense/linalg.hpp"
#include "wblsense/partition.hpp"
#include "wblsense/state.hpp"

namespace wblsense {

inline constexpr double wbl_argmax_tie_tol = 1e-12;

struct WblResult {
  double value = 0.0;
  SetPartition argmax;
};

namespace detail {

inline std::vector<int> mask_to_qubits(std::uint64_t mask) {
  std::vector<int> qs;
  for (int q = 0; mask != 0; ++q, mask >>= 1)
    if (mask & 1u) qs.push_back(q);
  return qs;
}

// Weighted per-block Bures distances for every non-empty subset of the n
// labels, indexed by subset mask.
template <typename BlockCost>
std::vector<double> all_block_costs(int n, BlockCost&& cost) {
  std::vector<double> table(std::size_t{1} << n, 0.0);
  for (std::uint64_t mask = 1; mask < table.size(); ++mask)
    table[mask] = cost(mask) / static_cast<double>(std::popcount(mask));
  return table;
}

// Exhaustive maximization over partitions given the per-mask cost table.
// Two passes: the first finds the exact maximum, the second returns the
// first partition (lexicographic RGS order) within wbl_argmax_tie_tol of it.
inline WblResult maximize_over_partitions(int n, const std::vector<double>& block_cost, int cap) {
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> masks;
  masks.reserve(static_cast<std::size_t>(n));
  auto score_of = [&](const std::vector<int>& rgs) {
    masks.clear();
    int num_blocks = 0;
    for (int i = 0; i < n; ++i) {
      const int b = rgs[static_cast<std::size_t>(i)];
      if (b >= num_blocks) {
        masks.push_back(0);
        num_blocks = b + 1;
      }
      masks[static_cast<std::size_t>(b)] |= std::uint64_t{1} << i;
    }
    double s = 0.0;
    for (const std::uint64_t m : masks) s += block_cost[m];
    return s;
  };

  check_partition_capacity(n, cap);
  for_each_rgs(n, [&](const std::vector<int>& rgs) { best = std::max(best, score_of(rgs)); });

  WblResult result;
  result.value = best;
  bool found = false;
  for_each_rgs(n, [&](const std::vector<int>& rgs) {
    if (found) return;
    if (score_of(rgs) >= best - wbl_argmax_tie_tol) {
      result.argmax = partition_from_rgs(rgs);
      found = true;
    }
  });
  return result;
}

}  // namespace detail

// Score of one partition: sum over blocks of (1/k) * Bures distance of the
// reduced states on the block.
inline double partition_score(const DensityMatrix& rho, const DensityMatrix& sigma,
                              const SetPartition& p) {
  if (rho.num_qubits() != sigma.num_qubits())
    throw std::invalid_argument("partition_score: state dimensions differ");
  p.validate(rho.num_qubits());
  double s = 0.0;
  for (const auto& block : p.blocks) {
    std::vector<int> keep = block;
    std::sort(keep.begin(), keep.end());
    s += bures(partial_trace(rho, keep), partial_trace(sigma, keep)) /
         static_cast<double>(block.size());
  }
  return s;
}

// Pure-input route. Single-block-of-everything scores collapse to the
// overlap, arccos|<psi|phi>|; proper sub-blocks reduce the amplitudes
// directly.
inline double partition_score(const QuantumState& psi, const QuantumState& phi,
                              const SetPartition& p) {
  if (psi.num_qubits() != phi.num_qubits())
    throw std::invalid_argument("partition_score: state dimensions differ");
  const int n = psi.num_qubits();
  p.validate(n);
  double s = 0.0;
  for (const auto& block : p.blocks) {
    if (static_cast<int>(block.size()) == n) {
      s += bures(psi, phi) / static_cast<double>(n);
      continue;
    }
    std::vector<int> keep = block;
    std::sort(keep.begin(), keep.end());
    s += bures(reduced_density(psi, keep), reduced_density(phi, keep)) /
         static_cast<double>(block.size());
  }
  return s;
}

// Exact WBL by exhaustive partition maximization. The returned argmax is
// the first partition in canonical enumeration order attaining the maximum
// within 1e-12.
inline WblResult wbl_exact(const DensityMatrix& rho, const DensityMatrix& sigma,
                           int cap = default_partition_cap) {
  if (rho.num_qubits() != sigma.num_qubits())
    throw std::invalid_argument("wbl_exact: state dimensions differ");
  const int n = rho.num_qubits();
  check_partition_capacity(n, cap);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  const auto costs = detail::all_block_costs(n, [&](std::uint64_t mask) {
    if (mask == full) return bures(rho, sigma);
    return bures(partial_trace(rho, detail::mask_to_qubits(mask)),
                 partial_trace(sigma, detail::mask_to_qubits(mask)));
  });
  return detail::maximize_over_partitions(n, costs, cap);
}

inline WblResult wbl_exact(const QuantumState& psi, const QuantumState& phi,
                           int cap = default_partition_cap) {
  if (psi.num_qubits() != phi.num_qubits())
    throw std::invalid_argument("wbl_exact: state dimensions differ");
  const int n = psi.num_qubits();
  check_partition_capacity(n, cap);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  const auto costs = detail::all_block_costs(n, [&](std::uint64_t mask) {
    if (mask == full) return bures(psi, phi);
    const auto keep = detail::mask_to_qubits(mask);
    return bures(reduced_density(psi, keep), reduced_density(phi, keep));
  });
  return detail::maximize_over_partitions(n, costs, cap);
}

// k * arccos|a|: the WBL between |0>^n and the GHZ-block state of p.
inline double wbl_ghz_closed_form(const GhzParameters& p) {
  p.validate();
  return static_cast<double>(p.k) * std::acos(std::min(1.0, std::abs(p.a)));
}

}  // namespace wblsense
