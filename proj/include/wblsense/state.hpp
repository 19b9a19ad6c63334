// state.hpp
// Pure states and density matrices on n-qubit registers.
//
// Qubit ordering is big-endian throughout the library: qubit 0 is the most
// significant bit of a basis index. Basis index <-> BitConfiguration
// conversions in bitconfig.hpp follow the same convention.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "wblsense/bitconfig.hpp"
#include "wblsense/errors.hpp"

namespace wblsense {

using Complex = std::complex<double>;

inline constexpr double state_norm_tol = 1e-12;
inline constexpr double density_hermitian_tol = 1e-10;
inline constexpr double density_trace_tol = 1e-10;
inline constexpr double density_psd_tol = 1e-10;

namespace detail {
inline int qubits_for_dim(Eigen::Index dim, const char* what) {
  if (dim < 2) throw std::invalid_argument(std::string(what) + ": dimension must be >= 2");
  int n = 0;
  Eigen::Index d = dim;
  while (d > 1) {
    if (d % 2 != 0) throw std::invalid_argument(std::string(what) + ": dimension not a power of 2");
    d /= 2;
    ++n;
  }
  return n;
}
}  // namespace detail

class QuantumState {
 public:
  explicit QuantumState(Eigen::VectorXcd amplitudes)
      : n_(detail::qubits_for_dim(amplitudes.size(), "QuantumState")),
        amps_(std::move(amplitudes)) {
    const double norm = amps_.norm();
    if (std::abs(norm - 1.0) > state_norm_tol)
      throw std::invalid_argument("QuantumState: norm " + std::to_string(norm) +
                                  " deviates from 1 beyond 1e-12");
  }

  static QuantumState basis(int num_qubits, std::uint64_t index) {
    if (num_qubits < 1 || num_qubits > 62)
      throw std::invalid_argument("QuantumState::basis: need 1 <= n <= 62");
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    if (index >= static_cast<std::uint64_t>(dim))
      throw std::invalid_argument("QuantumState::basis: index out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return QuantumState(std::move(v));
  }

  static QuantumState basis(const BitConfiguration& c) {
    return basis(c.length(), to_basis_index(c));
  }

  int num_qubits() const { return n_; }
  Eigen::Index dim() const { return amps_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }

  Complex inner(const QuantumState& other) const {
    if (n_ != other.n_) throw std::invalid_argument("inner: qubit count mismatch");
    return amps_.dot(other.amps_);  // Eigen's dot conjugates the left factor
  }

 private:
  int n_;
  Eigen::VectorXcd amps_;
};

// |<psi|phi>|, the overlap modulus.
inline double overlap(const QuantumState& a, const QuantumState& b) {
  return std::min(1.0, std::abs(a.inner(b)));
}

class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd entries)
      : n_(detail::qubits_for_dim(entries.rows(), "DensityMatrix")), m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("DensityMatrix: matrix must be square");
    const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > density_hermitian_tol)
      throw std::invalid_argument("DensityMatrix: hermiticity deviation " + std::to_string(herm) +
                                  " exceeds 1e-10");
    const double tr_err = std::abs(m_.trace() - Complex{1.0, 0.0});
    if (tr_err > density_trace_tol)
      throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " +
                                  std::to_string(tr_err));
  }

  static DensityMatrix pure(const QuantumState& psi) {
    return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
  }

  int num_qubits() const { return n_; }
  Eigen::Index dim() const { return m_.rows(); }
  const Eigen::MatrixXcd& entries() const { return m_; }

  // Full PSD check (eigenvalues >= -1e-10). The constructor checks only the
  // cheap invariants; call this at trust boundaries.
  void validate_psd() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -density_psd_tol)
      throw NumericalError("DensityMatrix: eigenvalue " + std::to_string(min_eig) +
                           " below -1e-10");
  }

 private:
  int n_;
  Eigen::MatrixXcd m_;
};

// --- GHZ block states ------------------------------------------------------

// Parameters of a|0...0> + b|1...1> on the first k of n qubits.
struct GhzParameters {
  Complex a;
  Complex b;
  int k = 1;
  int n = 1;

  void validate() const {
    if (k < 1 || n < k) throw std::invalid_argument("GhzParameters: need 1 <= k <= n");
    const double s = std::norm(a) + std::norm(b);
    if (std::abs(s - 1.0) > 1e-12)
      throw std::invalid_argument("GhzParameters: |a|^2 + |b|^2 = " + std::to_string(s) +
                                  " deviates from 1 beyond 1e-12");
  }
};

// a|0^k> + b|1^k> on the first k qubits, |0> on the remaining n-k.
inline QuantumState ghz_block_state(const GhzParameters& p) {
  p.validate();
  if (p.n > 62) throw std::invalid_argument("ghz_block_state: n too large");
  const Eigen::Index dim = Eigen::Index{1} << p.n;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  const std::uint64_t ones_index = ((std::uint64_t{1} << p.k) - 1) << (p.n - p.k);
  v[0] = p.a;
  v[static_cast<Eigen::Index>(ones_index)] = p.b;
  return QuantumState(std::move(v));
}

// --- JSON fixture exchange --------------------------------------------------
// Complex entries are [re, im] pairs; states are flat arrays, matrices are
// arrays of rows.

inline nlohmann::json state_to_json(const QuantumState& psi) {
  nlohmann::json j = nlohmann::json::array();
  for (Eigen::Index i = 0; i < psi.dim(); ++i)
    j.push_back({psi.amplitudes()[i].real(), psi.amplitudes()[i].imag()});
  return j;
}

inline QuantumState state_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("state_from_json: expected a non-empty array");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("state_from_json: entries must be [re, im] pairs");
    v[static_cast<Eigen::Index>(i)] = Complex{e[0].get<double>(), e[1].get<double>()};
  }
  return QuantumState(std::move(v));
}

inline nlohmann::json density_to_json(const DensityMatrix& rho) {
  nlohmann::json j = nlohmann::json::array();
  for (Eigen::Index r = 0; r < rho.dim(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < rho.dim(); ++c)
      row.push_back({rho.entries()(r, c).real(), rho.entries()(r, c).imag()});
    j.push_back(std::move(row));
  }
  return j;
}

inline DensityMatrix density_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("density_from_json: expected a non-empty array of rows");
  const Eigen::Index dim = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
      throw std::invalid_argument("density_from_json: ragged matrix");
    for (Eigen::Index c = 0; c < dim; ++c) {
      const auto& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("density_from_json: entries must be [re, im] pairs");
      m(r, c) = Complex{e[0].get<double>(), e[1].get<double>()};
    }
  }
  return DensityMatrix(std::move(m));
}

}  // namespace wblsense
