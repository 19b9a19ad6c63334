// linalg.hpp
// Dense Hermitian numerics on qubit registers: partial trace, PSD matrix
// square root, Uhlmann fidelity, Bures distance, and single-site channels.
//
// Fidelity follows F(rho, sigma) = Tr sqrt(sigma^{1/2} rho sigma^{1/2}).
// The nonzero spectrum of sigma^{1/2} rho sigma^{1/2} equals that of
// D^{1/2} (V^dagger rho V) D^{1/2} restricted to sigma's support (V, D from
// sigma's eigendecomposition), so the evaluation projects onto that support
// first. This matters numerically: on the full space, eigenvalues that are
// exactly zero in exact arithmetic come back from the solver as ~1e-16
// round-off, and their square roots would pollute the trace at the 1e-8
// level. Support directions below 1e-12 are dropped; density eigenvalues in
// [-1e-10, 0) are clamped to zero and anything more negative raises
// NumericalError, as do projected eigenvalues below -1e-8.
//
// Fidelities within 1e-12 of 1 are snapped to exactly 1: double-precision
// eigendecompositions cannot distinguish such values from 1, and arccos
// would amplify the residue into a spurious ~1e-6 distance (the price is
// that true distances below acos(1 - 1e-12) ~ 1.4e-6 report as zero).
// Results are clamped to [0, 1] before any arccos.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "wblsense/errors.hpp"
#include "wblsense/state.hpp"

namespace wblsense {

inline constexpr double fidelity_intermediate_tol = 1e-8;
inline constexpr double fidelity_support_tol = 1e-12;
inline constexpr double fidelity_snap_tol = 1e-12;

namespace detail {

// Values this close to 1 are below the resolution of the eigensolves that
// produced them; report them as exact unit fidelity so arccos maps them to
// distance zero instead of amplified round-off.
inline double snap_unit_fidelity(double f) {
  if (f >= 1.0 - fidelity_snap_tol) return 1.0;
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace detail

namespace detail {

// Scatter positions for reduced indexing: for each qubit label in `qubits`
// (ascending), the bit of the full index it occupies (big-endian).
inline void check_keep_set(const std::vector<int>& keep, int n) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be non-empty");
  int prev = -1;
  for (int q : keep) {
    if (q < 0 || q >= n)
      throw std::invalid_argument("partial_trace: qubit label " + std::to_string(q) +
                                  " out of range [0, " + std::to_string(n) + ")");
    if (q <= prev)
      throw std::invalid_argument("partial_trace: keep set must be strictly increasing");
    prev = q;
  }
}

// Full-index contributions of every value of the sub-register formed by
// `qubits` (ascending labels, big-endian within the sub-register).
inline std::vector<std::uint64_t> scatter_table(const std::vector<int>& qubits, int n) {
  const int k = static_cast<int>(qubits.size());
  std::vector<std::uint64_t> table(std::size_t{1} << k, 0);
  for (std::uint64_t sub = 0; sub < table.size(); ++sub) {
    std::uint64_t full = 0;
    for (int j = 0; j < k; ++j)
      if ((sub >> (k - 1 - j)) & 1u) full |= std::uint64_t{1} << (n - 1 - qubits[static_cast<std::size_t>(j)]);
    table[sub] = full;
  }
  return table;
}

inline std::vector<int> complement_qubits(const std::vector<int>& keep, int n) {
  std::vector<int> env;
  std::size_t it = 0;
  for (int q = 0; q < n; ++q) {
    if (it < keep.size() && keep[it] == q)
      ++it;
    else
      env.push_back(q);
  }
  return env;
}

}  // namespace detail

// Reduced state on `keep` (ascending qubit labels) of a density matrix.
inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const int n = rho.num_qubits();
  detail::check_keep_set(keep, n);
  if (static_cast<int>(keep.size()) == n) return rho;

  const auto kept = detail::scatter_table(keep, n);
  const auto env = detail::scatter_table(detail::complement_qubits(keep, n), n);
  const Eigen::Index dim = static_cast<Eigen::Index>(kept.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      Complex sum = 0;
      for (const std::uint64_t e : env)
        sum += rho.entries()(static_cast<Eigen::Index>(kept[static_cast<std::size_t>(i)] | e),
                             static_cast<Eigen::Index>(kept[static_cast<std::size_t>(j)] | e));
      out(i, j) = sum;
    }
  return DensityMatrix(std::move(out));
}

// Reduced state on `keep` of a pure state, contracted directly from the
// amplitudes (never materializes the full density matrix).
inline DensityMatrix reduced_density(const QuantumState& psi, const std::vector<int>& keep) {
  const int n = psi.num_qubits();
  detail::check_keep_set(keep, n);
  const auto kept = detail::scatter_table(keep, n);
  const auto env = detail::scatter_table(detail::complement_qubits(keep, n), n);
  const Eigen::Index dim = static_cast<Eigen::Index>(kept.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = i; j < dim; ++j) {
      Complex sum = 0;
      for (const std::uint64_t e : env)
        sum += psi.amplitudes()[static_cast<Eigen::Index>(kept[static_cast<std::size_t>(i)] | e)] *
               std::conj(psi.amplitudes()[static_cast<Eigen::Index>(kept[static_cast<std::size_t>(j)] | e)]);
      out(i, j) = sum;
      if (j != i) out(j, i) = std::conj(sum);
    }
  return DensityMatrix(std::move(out));
}

// Hermitian PSD square root via eigendecomposition. Eigenvalues in
// [-neg_tol, 0) are clamped to zero; more negative values raise
// NumericalError.
inline Eigen::MatrixXcd sqrt_psd(const Eigen::MatrixXcd& m, double neg_tol = density_psd_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success) throw NumericalError("sqrt_psd: eigendecomposition failed");
  Eigen::VectorXd vals = es.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals[i] < -neg_tol)
      throw NumericalError("sqrt_psd: eigenvalue " + std::to_string(vals[i]) +
                           " below -" + std::to_string(neg_tol));
    vals[i] = std::sqrt(std::max(vals[i], 0.0));
  }
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

// Tr sqrt(sigma^{1/2} rho sigma^{1/2}), evaluated on sigma's support (see
// file header), snapped/clamped into [0, 1].
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sigma.entries());
  if (es.info() != Eigen::Success) throw NumericalError("fidelity: eigendecomposition failed");

  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()[i];
    if (v < -density_psd_tol)
      throw NumericalError("fidelity: eigenvalue " + std::to_string(v) + " below -" +
                           std::to_string(density_psd_tol));
    if (v > fidelity_support_tol) support.push_back(i);
  }
  if (support.empty()) return 0.0;  // unreachable for trace-one input; defensive

  const Eigen::Index k = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXcd basis(sigma.dim(), k);
  Eigen::VectorXd roots(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    basis.col(j) = es.eigenvectors().col(support[static_cast<std::size_t>(j)]);
    roots[j] = std::sqrt(es.eigenvalues()[support[static_cast<std::size_t>(j)]]);
  }
  Eigen::MatrixXcd inner = basis.adjoint() * rho.entries() * basis;
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c) inner(r, c) *= roots[r] * roots[c];
  inner = ((inner + inner.adjoint()) / 2.0).eval();  // kill round-off asymmetry

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> inner_es(inner, Eigen::EigenvaluesOnly);
  if (inner_es.info() != Eigen::Success)
    throw NumericalError("fidelity: eigendecomposition failed");
  double f = 0.0;
  for (Eigen::Index i = 0; i < inner_es.eigenvalues().size(); ++i) {
    const double v = inner_es.eigenvalues()[i];
    if (v < -fidelity_intermediate_tol)
      throw NumericalError("fidelity: intermediate eigenvalue " + std::to_string(v) +
                           " below -1e-8");
    f += std::sqrt(std::max(v, 0.0));
  }
  return detail::snap_unit_fidelity(f);
}

// Pure-vs-mixed shortcut: F(|psi><psi|, sigma) = sqrt(<psi|sigma|psi>).
inline double fidelity(const QuantumState& psi, const DensityMatrix& sigma) {
  if (psi.dim() != sigma.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  const double expect = (psi.amplitudes().adjoint() * sigma.entries() * psi.amplitudes())(0).real();
  if (expect < -fidelity_intermediate_tol)
    throw NumericalError("fidelity: <psi|sigma|psi> = " + std::to_string(expect) + " below -1e-8");
  return detail::snap_unit_fidelity(std::sqrt(std::max(expect, 0.0)));
}

inline double fidelity(const QuantumState& psi, const QuantumState& phi) {
  return detail::snap_unit_fidelity(overlap(psi, phi));
}

// Bures distance arccos(F), in [0, pi/2].
inline double bures(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return std::acos(fidelity(rho, sigma));
}
inline double bures(const QuantumState& psi, const QuantumState& phi) {
  return std::acos(fidelity(psi, phi));
}

// --- single-site operations --------------------------------------------------

using Kraus = Eigen::Matrix2cd;

namespace detail {

// M <- (I (x) K (x) I) M, K acting on `site`.
inline void left_apply_site(Eigen::MatrixXcd& m, int n, int site, const Kraus& k) {
  const Eigen::Index mask = Eigen::Index{1} << (n - 1 - site);
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r0 = 0; r0 < m.rows(); ++r0) {
      if (r0 & mask) continue;
      const Eigen::Index r1 = r0 | mask;
      const Complex a = m(r0, c), b = m(r1, c);
      m(r0, c) = k(0, 0) * a + k(0, 1) * b;
      m(r1, c) = k(1, 0) * a + k(1, 1) * b;
    }
}

// M <- M (I (x) K (x) I)^dagger.
inline void right_apply_site_adjoint(Eigen::MatrixXcd& m, int n, int site, const Kraus& k) {
  const Eigen::Index mask = Eigen::Index{1} << (n - 1 - site);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c0 = 0; c0 < m.cols(); ++c0) {
      if (c0 & mask) continue;
      const Eigen::Index c1 = c0 | mask;
      const Complex a = m(r, c0), b = m(r, c1);
      m(r, c0) = a * std::conj(k(0, 0)) + b * std::conj(k(0, 1));
      m(r, c1) = a * std::conj(k(1, 0)) + b * std::conj(k(1, 1));
    }
}

inline void check_site(int site, int n) {
  if (site < 0 || site >= n)
    throw std::invalid_argument("site " + std::to_string(site) + " out of range [0, " +
                                std::to_string(n) + ")");
}

}  // namespace detail

// Sum_i (I (x) K_i (x) I) rho (...)^dagger for a trace-preserving Kraus set
// on one site.
inline DensityMatrix apply_single_site_channel(const DensityMatrix& rho, int site,
                                               const std::vector<Kraus>& kraus) {
  const int n = rho.num_qubits();
  detail::check_site(site, n);
  if (kraus.empty()) throw std::invalid_argument("apply_single_site_channel: empty Kraus set");
  Eigen::Matrix2cd completeness = Eigen::Matrix2cd::Zero();
  for (const auto& k : kraus) completeness += k.adjoint() * k;
  if ((completeness - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("apply_single_site_channel: Kraus set is not trace-preserving");

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
  for (const auto& k : kraus) {
    Eigen::MatrixXcd term = rho.entries();
    detail::left_apply_site(term, n, site, k);
    detail::right_apply_site_adjoint(term, n, site, k);
    out += term;
  }
  return DensityMatrix(std::move(out));
}

// (I (x) U (x) I) |psi> for a single-qubit unitary on `site`.
inline QuantumState apply_single_qubit_unitary(const QuantumState& psi, int site,
                                               const Eigen::Matrix2cd& u) {
  const int n = psi.num_qubits();
  detail::check_site(site, n);
  if ((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("apply_single_qubit_unitary: matrix is not unitary");
  Eigen::VectorXcd v = psi.amplitudes();
  const Eigen::Index mask = Eigen::Index{1} << (n - 1 - site);
  for (Eigen::Index i0 = 0; i0 < v.size(); ++i0) {
    if (i0 & mask) continue;
    const Eigen::Index i1 = i0 | mask;
    const Complex a = v[i0], b = v[i1];
    v[i0] = u(0, 0) * a + u(0, 1) * b;
    v[i1] = u(1, 0) * a + u(1, 1) * b;
  }
  return QuantumState(std::move(v));
}

inline DensityMatrix apply_single_qubit_unitary(const DensityMatrix& rho, int site,
                                                const Eigen::Matrix2cd& u) {
  if ((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("apply_single_qubit_unitary: matrix is not unitary");
  return apply_single_site_channel(rho, site, {u});
}

}  // namespace wblsense
