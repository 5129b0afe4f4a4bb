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

#include "circlegate/gates.h"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace circlegate {
namespace {

CVector basis_vector(Eigen::Index dim, Eigen::Index index) {
  CVector v = CVector::Zero(dim);
  v[index] = 1.0;
  return v;
}

// |c> (x) target (x) |d> for a computational control and device bit.
CVector embed(int control, const CVector& target, int device) {
  CVector out = CVector::Zero(kGateOutputDim);
  for (Eigen::Index t = 0; t < 2; ++t) out[4 * control + 2 * t + device] = target[t];
  return out;
}

}  // namespace

Isometry::Isometry(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != kGateOutputDim || entries_.cols() != kGateInputDim) {
    throw std::invalid_argument("Isometry: expected an 8x4 matrix, got " +
                                std::to_string(entries_.rows()) + "x" +
                                std::to_string(entries_.cols()));
  }
}

OptimalGateCoefficients OptimalGateCoefficients::standard() {
  const double b = std::sqrt(1.0 / 8.0);
  return {0.5 + b, b, 0.5 - b};
}

Operator exact_not() {
  CMatrix m(2, 2);
  m << 0.0, -1.0, 1.0, 0.0;
  return Operator::unitary(std::move(m));
}

Operator pauli_x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return Operator::unitary(std::move(m));
}

Operator identity_operator(int qubits) {
  if (qubits < 1 || qubits > kMaxQubits) throw std::invalid_argument("identity_operator: bad size");
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  return Operator::unitary(CMatrix::Identity(dim, dim));
}

DensityMatrix universal_not_channel(const PureState& psi) {
  if (psi.qubit_count() != 1) {
    throw std::invalid_argument("universal_not_channel: expects a single-qubit state");
  }
  const CVector& v = psi.amplitudes();
  const CVector perp = exact_not().entries() * v;
  return DensityMatrix((2.0 / 3.0) * perp * perp.adjoint() + (1.0 / 3.0) * v * v.adjoint());
}

double ensemble_unot_fidelity(int n) {
  if (n < 1) throw std::invalid_argument("ensemble_unot_fidelity: n must be >= 1");
  return (static_cast<double>(n) + 1.0) / (static_cast<double>(n) + 2.0);
}

namespace {

Operator controlled(const Operator& target_op) {
  CMatrix m = CMatrix::Zero(4, 4);
  m.topLeftCorner(2, 2) = CMatrix::Identity(2, 2);
  m.bottomRightCorner(2, 2) = target_op.entries();
  return Operator::unitary(std::move(m));
}

}  // namespace

Operator standard_cnot() { return controlled(pauli_x()); }

Operator controlled_exact_not() { return controlled(exact_not()); }

DensityMatrix superposition_target_marginal(GreatCircleAngle control,
                                            GreatCircleAngle target) {
  constexpr std::array<int, 1> kTarget{1};
  const PureState out = apply_operator(
      controlled_exact_not(), tensor(make_circle_state(control), make_circle_state(target)));
  return partial_trace(out, kTarget);
}

Operator control_rotation(GreatCircleAngle theta) {
  const double half = theta.radians() / 2.0;
  const double c = std::cos(half);
  const double s = std::sin(half);
  CMatrix m(2, 2);
  m << c, -s, s, c;
  return Operator::unitary(std::move(m));
}

IdealCnotOutput ideal_cnot_reference(GreatCircleAngle theta, GreatCircleAngle phi) {
  const double half = theta.radians() / 2.0;
  const PureState target = make_circle_state(phi);
  const CVector perp = exact_not().entries() * target.amplitudes();
  CVector rotated = std::cos(half) * target.amplitudes() + std::sin(half) * perp;
  return {make_circle_state(theta), PureState(std::move(rotated))};
}

Isometry optimal_cnot_isometry() {
  const auto [a, b, c] = OptimalGateCoefficients::standard();
  const CMatrix not_op = exact_not().entries();
  CMatrix v(kGateOutputDim, kGateInputDim);
  for (Eigen::Index n = 0; n < 2; ++n) {
    const CVector chi = basis_vector(2, n);
    const CVector perp = not_op * chi;
    v.col(n) = a * embed(0, chi, 0) + b * (embed(0, perp, 1) + embed(1, chi, 1)) +
               c * embed(1, perp, 0);
    v.col(2 + n) = a * embed(1, perp, 1) + b * (embed(0, perp, 0) + embed(1, chi, 0)) +
                   c * embed(0, chi, 1);
  }
  return Isometry(std::move(v));
}

Isometry identity_embedding() {
  CMatrix v = CMatrix::Zero(kGateOutputDim, kGateInputDim);
  for (Eigen::Index k = 0; k < kGateInputDim; ++k) v(2 * k, k) = 1.0;
  return Isometry(std::move(v));
}

PureState apply_gate(const Isometry& v, GreatCircleAngle control, GreatCircleAngle target) {
  const PureState input = tensor(make_circle_state(control), make_circle_state(target));
  CVector out = v.entries() * input.amplitudes();
  const double norm = out.norm();
  if (std::abs(norm - 1.0) > tolerance::kAccumulated) {
    throw std::runtime_error("apply_gate: output norm " + std::to_string(norm) +
                             " is not 1; the map is not norm-preserving on this input");
  }
  out /= norm;
  return PureState(std::move(out));
}

}  // namespace circlegate
