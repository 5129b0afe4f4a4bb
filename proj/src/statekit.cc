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

#include "circlegate/statekit.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace circlegate {
namespace {

int qubits_for_dimension(Eigen::Index dim) {
  switch (dim) {
    case 2:
      return 1;
    case 4:
      return 2;
    case 8:
      return 3;
    default:
      return 0;
  }
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Maps (kept index, traced index) pairs to a full basis index.
struct SubsystemSplit {
  std::vector<int> kept;
  std::vector<int> traced;
  int qubits = 0;

  Eigen::Index compose(int kept_index, int traced_index) const {
    Eigen::Index full = 0;
    auto place = [&](const std::vector<int>& positions, int value) {
      const int n = static_cast<int>(positions.size());
      for (int k = 0; k < n; ++k) {
        if ((value >> (n - 1 - k)) & 1) full |= Eigen::Index{1} << (qubits - 1 - positions[k]);
      }
    };
    place(kept, kept_index);
    place(traced, traced_index);
    return full;
  }
};

SubsystemSplit split_subsystems(int qubits, std::span<const int> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  std::vector<bool> marked(qubits, false);
  for (int k : keep) {
    if (k < 0 || k >= qubits) {
      throw std::invalid_argument("partial_trace: subsystem index " + std::to_string(k) +
                                  " out of range for " + std::to_string(qubits) + " qubits");
    }
    if (marked[k]) throw std::invalid_argument("partial_trace: duplicate subsystem index");
    marked[k] = true;
  }
  SubsystemSplit split;
  split.qubits = qubits;
  for (int q = 0; q < qubits; ++q) (marked[q] ? split.kept : split.traced).push_back(q);
  if (split.traced.empty()) {
    throw std::invalid_argument("partial_trace: keep set must be a proper subset");
  }
  return split;
}

CVector orthogonal_circle_vector(GreatCircleAngle angle) {
  // NOT chi(a) = (-sin(a/2), cos(a/2))
  const double half = angle.radians() / 2.0;
  CVector v(2);
  v << -std::sin(half), std::cos(half);
  return v;
}

}  // namespace

GreatCircleAngle::GreatCircleAngle(double radians) {
  if (!std::isfinite(radians)) throw std::invalid_argument("GreatCircleAngle: non-finite angle");
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2pi.
  if (r >= kTwoPi) r = 0.0;
  radians_ = r;
}

PureState::PureState(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  qubit_count_ = qubits_for_dimension(amplitudes_.size());
  if (qubit_count_ == 0) {
    throw std::invalid_argument("PureState: dimension " + std::to_string(amplitudes_.size()) +
                                " is not 2, 4 or 8");
  }
  const double norm_sq = amplitudes_.squaredNorm();
  if (!(std::abs(norm_sq - 1.0) <= tolerance::kExact)) {
    throw std::invalid_argument("PureState: amplitudes not normalized (norm^2 = " +
                                std::to_string(norm_sq) + ")");
  }
}

PureState::PureState(std::initializer_list<Complex> amplitudes)
    : PureState(CVector(Eigen::Map<const CVector>(amplitudes.begin(),
                                                  static_cast<Eigen::Index>(amplitudes.size())))) {}

Complex PureState::inner(const PureState& other) const {
  if (other.dimension() != dimension()) throw std::invalid_argument("inner: dimension mismatch");
  return amplitudes_.dot(other.amplitudes_);
}

double overlap_magnitude(const PureState& a, const PureState& b) { return std::abs(a.inner(b)); }

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw std::invalid_argument("DensityMatrix: not square");
  qubit_count_ = qubits_for_dimension(entries_.rows());
  if (qubit_count_ == 0 || qubit_count_ > 2) {
    throw std::invalid_argument("DensityMatrix: only 1 or 2 qubits are supported");
  }
  if (max_abs(entries_ - entries_.adjoint()) > tolerance::kExact) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  const Complex tr = entries_.trace();
  if (std::abs(tr - Complex{1.0}) > tolerance::kExact) {
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
  }
  if (eigenvalues().minCoeff() < -tolerance::kEigenvalue) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
  if (state.qubit_count() > 2) {
    throw std::invalid_argument("DensityMatrix::from_pure: only 1 or 2 qubits are supported");
  }
  return DensityMatrix(state.amplitudes() * state.amplitudes().adjoint());
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Operator::Operator(CMatrix entries, bool unitary)
    : entries_(std::move(entries)), unitary_(unitary) {
  if (entries_.rows() != entries_.cols() || qubits_for_dimension(entries_.rows()) == 0) {
    throw std::invalid_argument("Operator: must be square with dimension 2, 4 or 8");
  }
}

Operator Operator::unitary(CMatrix entries) {
  const Eigen::Index n = entries.rows();
  if (entries.cols() == n &&
      max_abs(entries.adjoint() * entries - CMatrix::Identity(n, n)) >= tolerance::kExact) {
    throw std::invalid_argument("Operator::unitary: matrix is not unitary");
  }
  return Operator(std::move(entries), true);
}

Operator Operator::general(CMatrix entries) { return Operator(std::move(entries), false); }

PureState make_circle_state(GreatCircleAngle angle) {
  const double half = angle.radians() / 2.0;
  return PureState{std::cos(half), std::sin(half)};
}

PureState tensor(const PureState& a, const PureState& b) {
  if (a.qubit_count() + b.qubit_count() > kMaxQubits) {
    throw std::invalid_argument("tensor: combined qubit count exceeds " +
                                std::to_string(kMaxQubits));
  }
  CVector out(a.dimension() * b.dimension());
  for (Eigen::Index i = 0; i < a.dimension(); ++i) {
    out.segment(i * b.dimension(), b.dimension()) = a[i] * b.amplitudes();
  }
  return PureState(std::move(out));
}

PureState apply_operator(const Operator& op, const PureState& state) {
  if (op.dimension() != state.dimension()) {
    throw std::invalid_argument("apply_operator: dimension mismatch");
  }
  CVector out = op.entries() * state.amplitudes();
  if (op.is_unitary()) {
    const double norm = out.norm();
    if (std::abs(norm - 1.0) > tolerance::kAccumulated) {
      throw std::runtime_error("apply_operator: norm drift under unitary operator");
    }
    out /= norm;
  }
  return PureState(std::move(out));
}

DensityMatrix partial_trace(const PureState& state, std::span<const int> keep) {
  const SubsystemSplit split = split_subsystems(state.qubit_count(), keep);
  const int kept_dim = 1 << split.kept.size();
  const int traced_dim = 1 << split.traced.size();
  CMatrix reduced = CMatrix::Zero(kept_dim, kept_dim);
  for (int i = 0; i < kept_dim; ++i) {
    for (int j = 0; j < kept_dim; ++j) {
      Complex sum{0.0};
      for (int t = 0; t < traced_dim; ++t) {
        sum += state[split.compose(i, t)] * std::conj(state[split.compose(j, t)]);
      }
      reduced(i, j) = sum;
    }
  }
  return DensityMatrix(std::move(reduced));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const SubsystemSplit split = split_subsystems(rho.qubit_count(), keep);
  const int kept_dim = 1 << split.kept.size();
  const int traced_dim = 1 << split.traced.size();
  CMatrix reduced = CMatrix::Zero(kept_dim, kept_dim);
  for (int i = 0; i < kept_dim; ++i) {
    for (int j = 0; j < kept_dim; ++j) {
      for (int t = 0; t < traced_dim; ++t) {
        reduced(i, j) += rho.entries()(split.compose(i, t), split.compose(j, t));
      }
    }
  }
  return DensityMatrix(std::move(reduced));
}

double fidelity_pure(const DensityMatrix& rho, const PureState& target) {
  if (rho.dimension() != target.dimension()) {
    throw std::invalid_argument("fidelity_pure: dimension mismatch");
  }
  const CVector& t = target.amplitudes();
  const double f = t.dot(rho.entries() * t).real();
  return std::clamp(f, 0.0, 1.0);
}

MeasurementOutcome measure_in_basis(const PureState& state, GreatCircleAngle basis_angle) {
  if (state.qubit_count() != 1) {
    throw std::invalid_argument("measure_in_basis: expects a single-qubit state; reduce first");
  }
  const PureState basis0 = make_circle_state(basis_angle);
  const CVector basis1 = orthogonal_circle_vector(basis_angle);
  return {std::norm(basis0.inner(state)), std::norm(basis1.dot(state.amplitudes()))};
}

MeasurementOutcome measure_in_basis(const DensityMatrix& rho, GreatCircleAngle basis_angle) {
  if (rho.qubit_count() != 1) {
    throw std::invalid_argument("measure_in_basis: expects a single-qubit density matrix");
  }
  const CVector basis0 = make_circle_state(basis_angle).amplitudes();
  const CVector basis1 = orthogonal_circle_vector(basis_angle);
  return {basis0.dot(rho.entries() * basis0).real(), basis1.dot(rho.entries() * basis1).real()};
}

}  // namespace circlegate
