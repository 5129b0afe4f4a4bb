// Copyright 2026 The circlegate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CIRCLEGATE_STATEKIT_H_
#define CIRCLEGATE_STATEKIT_H_

/**
 * @file
 * Dense state-vector and density-matrix algebra for one to three qubits.
 *
 * Subsystems are always ordered control, target, device. In a composite
 * basis index the leftmost (control) qubit is the most significant bit, so
 * |c t d> lives at index 4c + 2t + d.
 */

#include <complex>
#include <initializer_list>
#include <span>

#include <Eigen/Dense>

namespace circlegate {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

namespace tolerance {
// Exact algebraic identities.
inline constexpr double kExact = 1e-12;
// Eigenvalue positivity of density matrices.
inline constexpr double kEigenvalue = 1e-10;
// Accumulated products (norm drift under repeated application).
inline constexpr double kAccumulated = 1e-9;
}  // namespace tolerance

inline constexpr int kMaxQubits = 3;

/// Angle on the x-z great circle of the Bloch sphere, kept in [0, 2pi).
class GreatCircleAngle {
 public:
  constexpr GreatCircleAngle() = default;
  explicit GreatCircleAngle(double radians);

  double radians() const { return radians_; }

 private:
  double radians_ = 0.0;
};

/// Normalized amplitude vector over 1-3 qubits.
class PureState {
 public:
  /// Throws std::invalid_argument unless the length is 2, 4 or 8 and the
  /// norm is 1 within tolerance::kExact.
  explicit PureState(CVector amplitudes);
  PureState(std::initializer_list<Complex> amplitudes);

  const CVector& amplitudes() const { return amplitudes_; }
  int qubit_count() const { return qubit_count_; }
  Eigen::Index dimension() const { return amplitudes_.size(); }
  Complex operator[](Eigen::Index i) const { return amplitudes_[i]; }

  /// <this|other>
  Complex inner(const PureState& other) const;

 private:
  CVector amplitudes_;
  int qubit_count_ = 0;
};

/// |<a|b>|, the global-phase-insensitive overlap used for state comparison.
double overlap_magnitude(const PureState& a, const PureState& b);

/// Hermitian, positive semidefinite, unit-trace matrix on 1 or 2 qubits.
class DensityMatrix {
 public:
  /// Validates hermiticity and trace (kExact) and the smallest eigenvalue
  /// (kEigenvalue). Throws std::invalid_argument on violation.
  explicit DensityMatrix(CMatrix entries);

  static DensityMatrix from_pure(const PureState& state);

  const CMatrix& entries() const { return entries_; }
  int qubit_count() const { return qubit_count_; }
  Eigen::Index dimension() const { return entries_.rows(); }

  double trace() const { return entries_.trace().real(); }
  /// tr(rho^2)
  double purity() const;
  /// Ascending eigenvalues.
  Eigen::VectorXd eigenvalues() const;

 private:
  CMatrix entries_;
  int qubit_count_ = 0;
};

/// Square operator on 1-3 qubits, optionally flagged unitary.
class Operator {
 public:
  /// A unitary-flagged operator; throws unless ||U^dag U - I||_max < kExact.
  static Operator unitary(CMatrix entries);
  /// An operator with no unitarity promise.
  static Operator general(CMatrix entries);

  const CMatrix& entries() const { return entries_; }
  bool is_unitary() const { return unitary_; }
  Eigen::Index dimension() const { return entries_.rows(); }

 private:
  Operator(CMatrix entries, bool unitary);

  CMatrix entries_;
  bool unitary_ = false;
};

/// cos(a/2)|0> + sin(a/2)|1>
PureState make_circle_state(GreatCircleAngle angle);

/// Kronecker product a (x) b with a as the most significant factor.
/// Throws std::invalid_argument if the result exceeds kMaxQubits.
PureState tensor(const PureState& a, const PureState& b);

/// Matrix-vector product. Under a unitary flag the result is renormalized
/// after checking that its norm drifted by less than kAccumulated.
PureState apply_operator(const Operator& op, const PureState& state);

/// Reduced state over the subsystems listed in `keep` (0 = leftmost qubit).
/// `keep` must be a non-empty proper subset; kept qubits stay in ascending
/// order regardless of the order given.
DensityMatrix partial_trace(const PureState& state, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

/// <target|rho|target>, clamped to [0, 1].
double fidelity_pure(const DensityMatrix& rho, const PureState& target);

struct MeasurementOutcome {
  double p0 = 0.0;
  double p1 = 0.0;
};

/// Projective measurement of one qubit in {chi(a), NOT chi(a)}.
MeasurementOutcome measure_in_basis(const PureState& state,
                                    GreatCircleAngle basis_angle);
MeasurementOutcome measure_in_basis(const DensityMatrix& rho,
                                    GreatCircleAngle basis_angle);

}  // namespace circlegate

#endif  // CIRCLEGATE_STATEKIT_H_
