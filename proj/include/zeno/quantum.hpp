#pragma once

#include <zeno/errors.hpp>
#include <zeno/random.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>

namespace zeno {

using complex = std::complex<double>;
using complex_matrix = Eigen::MatrixXcd;
using complex_vector = Eigen::VectorXcd;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
/// Probabilities this close to 0 or 1 are resolved without a random draw.
inline constexpr double kDegenerateProbability = 1e-15;

/// True iff max |m(i,j) - conj(m(j,i))| <= tol * ||m||_F. Non-square input is
/// never Hermitian.
inline bool hermitian_check(const complex_matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return deviation <= tol * m.norm();
}

/// Normalized pure state over a finite-dimensional Hilbert space.
class QuantumState {
 public:
  /// Rescales `amplitudes` to unit norm. Throws domain_error on a zero or
  /// non-finite vector.
  static QuantumState normalized(complex_vector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw domain_error("state vector has zero or non-finite norm");
    }
    amplitudes /= norm;
    return QuantumState(std::move(amplitudes));
  }

  /// Accepts `amplitudes` only if already normalized within 1e-12.
  static QuantumState from_normalized(complex_vector amplitudes) {
    if (std::abs(amplitudes.squaredNorm() - 1.0) > kNormTolerance) {
      throw domain_error("state vector is not normalized");
    }
    return QuantumState(std::move(amplitudes));
  }

  static QuantumState basis(Eigen::Index dim, Eigen::Index index) {
    if (dim < 1 || index < 0 || index >= dim) {
      throw domain_error("basis index " + std::to_string(index) + " outside dimension " +
                         std::to_string(dim));
    }
    complex_vector v = complex_vector::Zero(dim);
    v(index) = 1.0;
    return QuantumState(std::move(v));
  }

  [[nodiscard]] const complex_vector& amplitudes() const { return amplitudes_; }
  [[nodiscard]] Eigen::Index dim() const { return amplitudes_.size(); }

  /// <this|other>
  [[nodiscard]] complex overlap(const QuantumState& other) const {
    if (other.dim() != dim()) throw dimension_mismatch("overlap of states of different dimension");
    return amplitudes_.dot(other.amplitudes_);
  }

  friend bool operator==(const QuantumState&, const QuantumState&) = default;

 private:
  explicit QuantumState(complex_vector amplitudes) : amplitudes_(std::move(amplitudes)) {}

  complex_vector amplitudes_;
};

/// Hermitian energy operator together with the value of hbar it is measured in.
class Hamiltonian {
 public:
  static Hamiltonian make(complex_matrix matrix, double hbar = 1.0) {
    if (matrix.rows() == 0 || matrix.rows() != matrix.cols()) {
      throw invalid_hamiltonian("Hamiltonian must be a non-empty square matrix");
    }
    if (!matrix.allFinite()) throw invalid_hamiltonian("Hamiltonian has non-finite entries");
    if (!hermitian_check(matrix, kHermitianTolerance)) {
      throw invalid_hamiltonian("Hamiltonian is not Hermitian");
    }
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw domain_error("hbar must be positive");
    return Hamiltonian(std::move(matrix), hbar);
  }

  /// Two-level Rabi Hamiltonian (omega/2) sigma_x.
  static Hamiltonian rabi(double omega, double hbar = 1.0) {
    complex_matrix m(2, 2);
    m << 0.0, omega / 2.0, omega / 2.0, 0.0;
    return make(std::move(m), hbar);
  }

  [[nodiscard]] const complex_matrix& matrix() const { return matrix_; }
  [[nodiscard]] double hbar() const { return hbar_; }
  [[nodiscard]] Eigen::Index dim() const { return matrix_.rows(); }

 private:
  Hamiltonian(complex_matrix matrix, double hbar) : matrix_(std::move(matrix)), hbar_(hbar) {}

  complex_matrix matrix_;
  double hbar_;
};

namespace detail {

inline void require_same_dim(const QuantumState& state, Eigen::Index dim) {
  if (state.dim() != dim) {
    throw dimension_mismatch("state has dimension " + std::to_string(state.dim()) +
                             ", operator has dimension " + std::to_string(dim));
  }
}

}  // namespace detail

/// Exact time evolution exp(-i H dt / hbar) from one Hermitian
/// eigendecomposition, reusable for any number of time steps.
class Propagator {
 public:
  explicit Propagator(const Hamiltonian& h) : hbar_(h.hbar()) {
    Eigen::SelfAdjointEigenSolver<complex_matrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
      throw invalid_hamiltonian("eigendecomposition of Hamiltonian failed");
    }
    energies_ = solver.eigenvalues();
    basis_ = solver.eigenvectors();
    const double gram_deviation =
        (basis_.adjoint() * basis_ - complex_matrix::Identity(basis_.rows(), basis_.cols()))
            .cwiseAbs()
            .maxCoeff();
    if (gram_deviation > kNormTolerance) {
      // Re-orthonormalize; the Householder Q spans the same columns in order.
      Eigen::HouseholderQR<complex_matrix> qr(basis_);
      complex_matrix q = qr.householderQ();
      basis_ = q;
    }
  }

  [[nodiscard]] Eigen::Index dim() const { return basis_.rows(); }
  [[nodiscard]] const Eigen::VectorXd& energies() const { return energies_; }

  [[nodiscard]] complex_matrix unitary(double dt) const {
    return basis_ * phases(dt).asDiagonal() * basis_.adjoint();
  }

  [[nodiscard]] QuantumState evolve(const QuantumState& state, double dt) const {
    detail::require_same_dim(state, dim());
    if (!(dt >= 0.0)) throw domain_error("propagation time must be non-negative");
    complex_vector in_eigenbasis = basis_.adjoint() * state.amplitudes();
    complex_vector out = basis_ * phases(dt).cwiseProduct(in_eigenbasis);
    return QuantumState::from_normalized(std::move(out));
  }

  /// 1 - |<state|exp(-iH dt/hbar)|state>|^2, evaluated in the spectral form
  /// sum_{j<k} 4 w_j w_k sin^2((E_j - E_k) dt / 2 hbar), which keeps full
  /// relative precision when the decay probability is tiny.
  [[nodiscard]] double decay_probability(const QuantumState& state, double dt) const {
    detail::require_same_dim(state, dim());
    if (!(dt >= 0.0)) throw domain_error("propagation time must be non-negative");
    const Eigen::VectorXd weights = (basis_.adjoint() * state.amplitudes()).cwiseAbs2();
    double decay = 0.0;
    for (Eigen::Index j = 0; j < weights.size(); ++j) {
      for (Eigen::Index k = j + 1; k < weights.size(); ++k) {
        const double s = std::sin((energies_(j) - energies_(k)) * dt / (2.0 * hbar_));
        decay += 4.0 * weights(j) * weights(k) * s * s;
      }
    }
    return std::clamp(decay, 0.0, 1.0);
  }

 private:
  [[nodiscard]] complex_vector phases(double dt) const {
    complex_vector p(energies_.size());
    for (Eigen::Index k = 0; k < energies_.size(); ++k) {
      p(k) = std::polar(1.0, -energies_(k) * dt / hbar_);
    }
    return p;
  }

  double hbar_;
  Eigen::VectorXd energies_;
  complex_matrix basis_;
};

/// exp(-i H dt / hbar) |state>
inline QuantumState propagate(const QuantumState& state, const Hamiltonian& h, double dt) {
  return Propagator(h).evolve(state, dt);
}

/// Second-order expansion (1 - H^2 dt^2 / 2 hbar^2 - i H dt / hbar)|state>,
/// deliberately left unnormalized.
inline complex_vector taylor_final_state(const QuantumState& state, const Hamiltonian& h,
                                         double dt) {
  detail::require_same_dim(state, h.dim());
  const double x = dt / h.hbar();
  const complex_vector& psi = state.amplitudes();
  const complex_vector h_psi = h.matrix() * psi;
  const complex_vector h2_psi = h.matrix() * h_psi;
  return psi - (x * x / 2.0) * h2_psi - complex(0.0, x) * h_psi;
}

/// Re <state|m|state>. Throws invalid_hamiltonian when the imaginary part
/// shows `m` is not Hermitian.
inline double expectation(const QuantumState& state, const complex_matrix& m) {
  if (m.rows() != m.cols()) throw dimension_mismatch("operator is not square");
  detail::require_same_dim(state, m.rows());
  const complex value = state.amplitudes().dot(m * state.amplitudes());
  if (std::abs(value.imag()) > kHermitianTolerance * std::max(1.0, m.norm())) {
    throw invalid_hamiltonian("expectation value has an imaginary part");
  }
  return value.real();
}

/// <H^2> - <H>^2, evaluated as ||(H - <H>)|state>||^2 so it cannot go negative.
inline double hamiltonian_variance(const QuantumState& state, const Hamiltonian& h) {
  const double mean = expectation(state, h.matrix());
  const complex_vector centered = h.matrix() * state.amplitudes() - mean * state.amplitudes();
  return centered.squaredNorm();
}

struct MeasurementOutcome {
  bool survived;
  QuantumState post_state;
  double probability;
};

/// Two-outcome projective measurement of `state` against `reference`.
/// Survival collapses onto `reference`; decay leaves the normalized component
/// orthogonal to it. Probabilities within 1e-15 of 0 or 1 consume no draw.
inline MeasurementOutcome measure_survival(const QuantumState& state,
                                           const QuantumState& reference, random_stream& rng) {
  const complex amplitude = reference.overlap(state);
  const double p = std::clamp(std::norm(amplitude), 0.0, 1.0);
  bool survived;
  if (p >= 1.0 - kDegenerateProbability) {
    survived = true;
  } else if (p <= kDegenerateProbability) {
    survived = false;
  } else {
    survived = uniform01(rng) < p;
  }
  if (survived) return {true, reference, p};
  complex_vector rest = state.amplitudes() - amplitude * reference.amplitudes();
  return {false, QuantumState::normalized(std::move(rest)), p};
}

}  // namespace zeno
