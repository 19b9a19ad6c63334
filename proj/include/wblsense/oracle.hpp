// oracle.hpp
// Exact small-N quantum evolution used as a correctness oracle for the
// classical reduction. Builds the three-qubit local rule unitary as an
// explicit permutation matrix, composes staggered full steps on arbitrary
// bipartite interaction graphs, applies the single-site perturbation
// V|0> = a|0> + b|1>, V|1> = a|1> - b|0>, and certifies
//
//     D(t) = k_t * arccos|a|
//
// by computing the exact WBL between the evolved pure states and comparing
// against the Hamming count of the two classical branches.
//
// The published form of the local rule contains a non-unitary term (the
// pattern 110 appears as two outputs and 100 as none); the corrected
// permutation used here restores unitarity and matches the verbal rule
// x' = x XOR (n1 OR n2). The literal variant is kept available as a
// negative control so tests can demonstrate that it fails the permutation
// and bijectivity checks.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "wblsense/bitconfig.hpp"
#include "wblsense/errors.hpp"
#include "wblsense/graph.hpp"
#include "wblsense/rule54.hpp"
#include "wblsense/state.hpp"
#include "wblsense/wbl.hpp"

namespace wblsense {

// State-vector work is cheap up to 2^12 amplitudes; full WBL certification
// additionally pays Bell-number partition costs, hence the tighter cap.
inline constexpr int default_oracle_cap = 12;
inline constexpr int wbl_certify_cap = 6;

inline constexpr double oracle_support_tol = 1e-10;
inline constexpr double oracle_overlap_tol = 1e-12;
inline constexpr double reduction_certify_tol = 1e-8;

using Matrix8d = Eigen::Matrix<double, 8, 8>;

struct LocalRuleUnitary {
  Matrix8d matrix;  // real 0/1 entries on the basis |n1 x n2>
};

namespace detail {

inline Matrix8d matrix_from_map(const std::array<int, 8>& out_of_in) {
  Matrix8d m = Matrix8d::Zero();
  for (int in = 0; in < 8; ++in) m(out_of_in[static_cast<std::size_t>(in)], in) = 1.0;
  return m;
}

}  // namespace detail

// The corrected local rule as a permutation on |n1 x n2>: the center bit
// becomes x XOR (n1 OR n2), neighbors pass through unchanged.
inline LocalRuleUnitary build_local_rule_unitary() {
  // in-pattern (n1 x n2) -> out-pattern, indexed 000..111
  constexpr std::array<int, 8> map = {
      0b000, 0b011, 0b010, 0b001, 0b110, 0b111, 0b100, 0b101};
  return LocalRuleUnitary{detail::matrix_from_map(map)};
}

// Negative control: the literal published form keeps 110 fixed while 100
// still maps onto 110, so two inputs share one output and the matrix is not
// a permutation. Provided only so tests can demonstrate the failure.
inline LocalRuleUnitary build_literal_rule_variant() {
  constexpr std::array<int, 8> map = {
      0b000, 0b011, 0b010, 0b001, 0b110, 0b111, 0b110, 0b101};
  return LocalRuleUnitary{detail::matrix_from_map(map)};
}

// Exactly one 1 in every row and every column, all other entries exactly 0.
inline bool is_permutation_matrix(const Matrix8d& m) {
  for (int i = 0; i < 8; ++i) {
    int row_ones = 0;
    int col_ones = 0;
    for (int j = 0; j < 8; ++j) {
      const double r = m(i, j);
      const double c = m(j, i);
      if (r != 0.0 && r != 1.0) return false;
      row_ones += (r == 1.0);
      col_ones += (c == 1.0);
    }
    if (row_ones != 1 || col_ones != 1) return false;
  }
  return true;
}

// Column-wise action table: table[in] = out where matrix(out, in) = 1.
// Well defined for any column-stochastic 0/1 matrix, permutation or not,
// so the negative-control variant can be pushed through the same machinery.
inline std::array<int, 8> column_action_table(const Matrix8d& m) {
  std::array<int, 8> table{};
  for (int in = 0; in < 8; ++in) {
    int found = -1;
    for (int out = 0; out < 8; ++out) {
      if (m(out, in) == 1.0) {
        if (found >= 0)
          throw std::invalid_argument("column_action_table: column has multiple unit entries");
        found = out;
      } else if (m(out, in) != 0.0) {
        throw std::invalid_argument("column_action_table: entries must be exactly 0 or 1");
      }
    }
    if (found < 0) throw std::invalid_argument("column_action_table: column has no unit entry");
    table[static_cast<std::size_t>(in)] = found;
  }
  return table;
}

namespace detail {

inline void check_oracle_capacity(int n, int cap) {
  if (n > cap) {
    std::ostringstream msg;
    msg << "oracle capacity exceeded: " << n << " qubits would need 2^" << n
        << " amplitudes (cap " << cap << ")";
    throw CapacityError(msg.str());
  }
}

// One basis index pushed through the local action at vertex v with
// in-neighbors (n1, n2). Bit positions follow the big-endian state
// convention: qubit q sits at bit (n - 1 - q) of the index.
inline std::uint64_t apply_vertex_to_index(std::uint64_t idx, int n, int v, int n1, int n2,
                                           const std::array<int, 8>& table) {
  const int pv = n - 1 - v;
  const int p1 = n - 1 - n1;
  const int p2 = n - 1 - n2;
  const int in = static_cast<int>(((idx >> p1) & 1) << 2 | ((idx >> pv) & 1) << 1 |
                                  ((idx >> p2) & 1));
  const int out = table[static_cast<std::size_t>(in)];
  std::uint64_t j = idx;
  j = (j & ~(std::uint64_t{1} << p1)) | (static_cast<std::uint64_t>((out >> 2) & 1) << p1);
  j = (j & ~(std::uint64_t{1} << pv)) | (static_cast<std::uint64_t>((out >> 1) & 1) << pv);
  j = (j & ~(std::uint64_t{1} << p2)) | (static_cast<std::uint64_t>(out & 1) << p2);
  return j;
}

inline void apply_vertex_in_place(Eigen::VectorXcd& amps, int n, int v, int n1, int n2,
                                  const std::array<int, 8>& table) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(amps.size());
  for (Eigen::Index idx = 0; idx < amps.size(); ++idx) {
    const std::uint64_t j =
        apply_vertex_to_index(static_cast<std::uint64_t>(idx), n, v, n1, n2, table);
    out[static_cast<Eigen::Index>(j)] += amps[idx];
  }
  amps.swap(out);
}

inline const std::array<int, 8>& corrected_action_table() {
  static const std::array<int, 8> table = column_action_table(build_local_rule_unitary().matrix);
  return table;
}

}  // namespace detail

// Staggered step unitary: all local unitaries on the first side, then all
// on the second. Within one side every gate's reads land on the opposite
// side, so the gates commute and sequential application equals the
// simultaneous product.
inline QuantumState apply_step_unitary(const QuantumState& psi, const BipartiteInteractionGraph& g,
                                       HalfStepOrder order = HalfStepOrder::v1_first,
                                       int cap = default_oracle_cap) {
  const int n = g.num_vertices();
  detail::check_oracle_capacity(n, cap);
  if (psi.num_qubits() != n)
    throw std::invalid_argument("apply_step_unitary: state size does not match graph");
  const auto& table = detail::corrected_action_table();
  Eigen::VectorXcd amps = psi.amplitudes();
  const int first = order == HalfStepOrder::v1_first ? 1 : 2;
  const int second = order == HalfStepOrder::v1_first ? 2 : 1;
  for (const int side : {first, second}) {
    for (const int v : g.side_vertices(side)) {
      const auto [n1, n2] = g.in_neighbors(v);
      detail::apply_vertex_in_place(amps, n, v, n1, n2, table);
    }
  }
  return QuantumState(std::move(amps));
}

// The classical map a 0/1 action table induces on all 2^n basis indices
// when composed per Eq-of-motion vertex order. For the corrected table
// this reproduces step(); for the negative-control variant it collides.
inline std::vector<std::uint64_t> induced_basis_map(const std::array<int, 8>& table,
                                                    const BipartiteInteractionGraph& g,
                                                    HalfStepOrder order = HalfStepOrder::v1_first,
                                                    int cap = 20) {
  const int n = g.num_vertices();
  detail::check_oracle_capacity(n, cap);
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<std::uint64_t> map(dim);
  const int first = order == HalfStepOrder::v1_first ? 1 : 2;
  const int second = order == HalfStepOrder::v1_first ? 2 : 1;
  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    std::uint64_t j = idx;
    for (const int side : {first, second})
      for (const int v : g.side_vertices(side)) {
        const auto [n1, n2] = g.in_neighbors(v);
        j = detail::apply_vertex_to_index(j, n, v, n1, n2, table);
      }
    map[idx] = j;
  }
  return map;
}

inline bool is_bijective_map(const std::vector<std::uint64_t>& map) {
  std::vector<bool> seen(map.size(), false);
  for (const std::uint64_t j : map) {
    if (j >= map.size() || seen[j]) return false;
    seen[j] = true;
  }
  return true;
}

// The unique basis index carrying (essentially) all the amplitude; any
// second significant component falsifies basis-state closure.
inline std::uint64_t extract_basis_index(const QuantumState& psi,
                                         double tol = oracle_support_tol) {
  Eigen::Index best = 0;
  psi.amplitudes().cwiseAbs().maxCoeff(&best);
  for (Eigen::Index i = 0; i < psi.dim(); ++i) {
    if (i == best) continue;
    if (std::abs(psi.amplitudes()[i]) > tol)
      throw OracleViolation("extract_basis_index: state is not a computational basis state");
  }
  return static_cast<std::uint64_t>(best);
}

// One classical step executed through the full state-vector unitary;
// used to cross-check the bit-packed kernel.
inline BitConfiguration step_via_oracle(const BitConfiguration& c,
                                        const BipartiteInteractionGraph& g,
                                        HalfStepOrder order = HalfStepOrder::v1_first,
                                        int cap = default_oracle_cap) {
  const QuantumState out = apply_step_unitary(QuantumState::basis(c), g, order, cap);
  return config_from_basis_index(c.length(), extract_basis_index(out));
}

struct PerturbationParameters {
  double a = 0.0;
  double b = 0.0;
  int site = 0;

  void validate() const {
    if (std::abs(a * a + b * b - 1.0) > 1e-12)
      throw std::invalid_argument("PerturbationParameters: a^2 + b^2 must equal 1");
    if (b == 0.0)
      throw std::invalid_argument("PerturbationParameters: b must be nonzero to perturb");
    if (site < 0) throw std::invalid_argument("PerturbationParameters: negative site");
  }
};

// a|c> + s b|c with the site flipped>, s = +1 when the site holds 0 and
// -1 when it holds 1 (V|0> = a|0> + b|1>, V|1> = a|1> - b|0>).
inline QuantumState perturb(const BitConfiguration& c, const PerturbationParameters& p) {
  p.validate();
  if (p.site >= c.length()) throw std::invalid_argument("perturb: site out of range");
  if (c.length() > 30)
    throw CapacityError("perturb: a state vector on " + std::to_string(c.length()) +
                        " qubits is too large to materialize");
  const double sign = c.bit(p.site) ? -1.0 : 1.0;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << c.length());
  amps[static_cast<Eigen::Index>(to_basis_index(c))] = p.a;
  amps[static_cast<Eigen::Index>(to_basis_index(flip_bit(c, p.site)))] = sign * p.b;
  return QuantumState(std::move(amps));
}

struct PairPoint {
  int t = 0;
  int k = 0;
  double overlap = 0.0;  // |<psi(t)|psi~(t)>|, must stay at |a|
};

namespace detail {

// Splits the evolved perturbed state into its two basis branches and
// returns the index of the branch orthogonal to psi. Throws when the
// two-term structure or the constant amplitude moduli fail to hold.
inline std::uint64_t verify_two_branch(const QuantumState& psi_tilde, std::uint64_t psi_index,
                                       double abs_a, double abs_b) {
  const auto& amps = psi_tilde.amplitudes();
  std::int64_t other = -1;
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const double mag = std::abs(amps[i]);
    if (mag <= oracle_support_tol) continue;
    if (static_cast<std::uint64_t>(i) == psi_index) {
      if (std::abs(mag - abs_a) > oracle_overlap_tol)
        throw OracleViolation("two-branch check: parallel amplitude modulus drifted from |a|");
      continue;
    }
    if (other >= 0)
      throw OracleViolation("two-branch check: more than two basis components present");
    if (std::abs(mag - abs_b) > oracle_overlap_tol)
      throw OracleViolation("two-branch check: orthogonal amplitude modulus drifted from |b|");
    other = i;
  }
  if (other < 0) throw OracleViolation("two-branch check: orthogonal branch missing");
  return static_cast<std::uint64_t>(other);
}

}  // namespace detail

// Evolves the basis trajectory |psi(t)> and the perturbed superposition
// |psi~(t)> side by side through the step unitary, verifying at every t
// that |psi~(t)> = a|psi(t)> +/- b|psi_perp(t)> with basis-state branches
// of constant amplitude moduli. Returns k_t (branch Hamming distance) and
// the overlap |<psi|psi~>| per step.
inline std::vector<PairPoint> evolve_pair(const BitConfiguration& c0,
                                          const PerturbationParameters& p,
                                          const BipartiteInteractionGraph& g,
                                          HalfStepOrder order = HalfStepOrder::v1_first,
                                          int t_max = 5, int cap = default_oracle_cap) {
  const int n = g.num_vertices();
  detail::check_oracle_capacity(n, cap);
  if (c0.length() != n) throw std::invalid_argument("evolve_pair: configuration/graph mismatch");
  if (t_max < 0) throw std::invalid_argument("evolve_pair: negative t_max");
  p.validate();

  QuantumState psi = QuantumState::basis(c0);
  QuantumState psi_tilde = perturb(c0, p);
  const double abs_a = std::abs(p.a);
  const double abs_b = std::abs(p.b);

  std::vector<PairPoint> points;
  points.reserve(static_cast<std::size_t>(t_max) + 1);
  for (int t = 0; t <= t_max; ++t) {
    const std::uint64_t idx = extract_basis_index(psi);
    const std::uint64_t perp = detail::verify_two_branch(psi_tilde, idx, abs_a, abs_b);
    const int k = hamming(config_from_basis_index(n, idx), config_from_basis_index(n, perp));
    const double ov = overlap(psi, psi_tilde);
    if (std::abs(ov - abs_a) > oracle_overlap_tol)
      throw OracleViolation("evolve_pair: overlap drifted from |a|");
    points.push_back(PairPoint{t, k, ov});
    if (t == t_max) break;
    psi = apply_step_unitary(psi, g, order, cap);
    psi_tilde = apply_step_unitary(psi_tilde, g, order, cap);
  }
  return points;
}

struct ReductionPoint {
  int t = 0;
  double wbl = 0.0;
  double predicted = 0.0;  // k_t * arccos|a|
};

// The full certificate: computes the exact WBL between the evolved pure
// states directly (no local basis transformation) and checks it against
// k_t * arccos|a| at every step. A mismatch falsifies either the corrected
// local rule or the metric engine and is reported as an oracle violation.
inline std::vector<ReductionPoint> certify_reduction(const BitConfiguration& c0,
                                                     const PerturbationParameters& p,
                                                     const BipartiteInteractionGraph& g,
                                                     HalfStepOrder order = HalfStepOrder::v1_first,
                                                     int t_max = 5,
                                                     double tol = reduction_certify_tol) {
  const int n = g.num_vertices();
  detail::check_oracle_capacity(n, wbl_certify_cap);
  if (c0.length() != n)
    throw std::invalid_argument("certify_reduction: configuration/graph mismatch");
  p.validate();

  QuantumState psi = QuantumState::basis(c0);
  QuantumState psi_tilde = perturb(c0, p);
  const double theta = std::acos(std::min(1.0, std::abs(p.a)));

  std::vector<ReductionPoint> points;
  points.reserve(static_cast<std::size_t>(t_max) + 1);
  for (int t = 0; t <= t_max; ++t) {
    const std::uint64_t idx = extract_basis_index(psi);
    const std::uint64_t perp =
        detail::verify_two_branch(psi_tilde, idx, std::abs(p.a), std::abs(p.b));
    const int k = hamming(config_from_basis_index(n, idx), config_from_basis_index(n, perp));
    const double predicted = static_cast<double>(k) * theta;
    const double value = wbl_exact(psi, psi_tilde).value;
    if (std::abs(value - predicted) > tol) {
      std::ostringstream msg;
      msg << "reduction certificate failed at t=" << t << ": wbl=" << value
          << " vs k_t*arccos|a|=" << predicted;
      throw OracleViolation(msg.str());
    }
    points.push_back(ReductionPoint{t, value, predicted});
    if (t == t_max) break;
    psi = apply_step_unitary(psi, g, order);
    psi_tilde = apply_step_unitary(psi_tilde, g, order);
  }
  return points;
}

}  // namespace wblsense
