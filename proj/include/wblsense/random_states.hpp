// random_states.hpp
// Deterministic random states, unitaries, and channels for property checks
// (used by the verify command and the test suites).

#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "wblsense/linalg.hpp"
#include "wblsense/rng.hpp"
#include "wblsense/state.hpp"

namespace wblsense {

// Standard normal deviate via Box-Muller (second coordinate discarded).
inline double normal_deviate(Xoshiro256StarStar& rng) {
  const double u = (static_cast<double>(rng.next() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  const double v = rng.uniform_real();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

inline Complex complex_normal(Xoshiro256StarStar& rng) {
  const double re = normal_deviate(rng);
  const double im = normal_deviate(rng);
  return {re, im};
}

// Haar-distributed pure state: normalized complex Gaussian vector.
inline QuantumState random_pure_state(int num_qubits, Xoshiro256StarStar& rng) {
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = complex_normal(rng);
  v /= v.norm();
  return QuantumState(std::move(v));
}

// Haar-distributed single-qubit unitary: QR of a complex Ginibre matrix
// with the R diagonal phase fixed.
inline Eigen::Matrix2cd random_single_qubit_unitary(Xoshiro256StarStar& rng) {
  Eigen::Matrix2cd g;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) g(r, c) = complex_normal(rng);
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(g);
  Eigen::Matrix2cd q = qr.householderQ();
  const Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < 2; ++i) {
    const Complex d = r(i, i);
    const Complex phase = std::abs(d) > 0 ? d / std::abs(d) : Complex{1.0, 0.0};
    q.col(i) *= phase;
  }
  return q;
}

// Random two-element CPTP channel on one qubit: the two 2x2 blocks of a
// Haar-random 4x2 isometry, so sum_i K_i^dagger K_i = I by construction.
inline std::vector<Kraus> random_kraus_pair(Xoshiro256StarStar& rng) {
  Eigen::Matrix<Complex, 4, 2> g;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 2; ++c) g(r, c) = complex_normal(rng);
  Eigen::HouseholderQR<Eigen::Matrix<Complex, 4, 2>> qr(g);
  const Eigen::Matrix<Complex, 4, 2> iso =
      qr.householderQ() * Eigen::Matrix<Complex, 4, 2>::Identity();
  return {iso.topRows<2>(), iso.bottomRows<2>()};
}

}  // namespace wblsense
