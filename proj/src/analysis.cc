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

#include "circlegate/analysis.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "circlegate/numeric_format.h"

namespace circlegate {
namespace {

constexpr std::array<int, 1> kControl{0};
constexpr std::array<int, 1> kTarget{1};

double optimal_copy_fidelity() { return OptimalGateCoefficients::standard().a; }

}  // namespace

AngleGrid::AngleGrid(int count, double offset) {
  if (count < 2) throw std::invalid_argument("AngleGrid: need at least 2 points");
  points_.reserve(count);
  for (int k = 0; k < count; ++k) {
    points_.emplace_back(offset + 2.0 * std::numbers::pi * k / count);
  }
}

double AngleGrid::spacing() const { return 2.0 * std::numbers::pi / size(); }

FidelityPair gate_fidelities(const Isometry& v, GreatCircleAngle theta, GreatCircleAngle phi) {
  const PureState out = apply_gate(v, theta, phi);
  const IdealCnotOutput ideal = ideal_cnot_reference(theta, phi);
  return {fidelity_pure(partial_trace(out, kControl), ideal.control),
          fidelity_pure(partial_trace(out, kTarget), ideal.target)};
}

AverageFidelityForm::AverageFidelityForm(const AngleGrid& grid) : grid_size_(grid.size()) {
  constexpr Eigen::Index kVecDim = kGateOutputDim * kGateInputDim;
  form_ = CMatrix::Zero(kVecDim, kVecDim);
  const double weight = 0.5 / (static_cast<double>(grid.size()) * grid.size());
  const CMatrix device_identity = CMatrix::Identity(2, 2);
  for (GreatCircleAngle theta : grid.points()) {
    for (GreatCircleAngle phi : grid.points()) {
      const IdealCnotOutput ideal = ideal_cnot_reference(theta, phi);
      const CVector x =
          tensor(make_circle_state(theta), make_circle_state(phi)).amplitudes();
      const CMatrix input = x * x.adjoint();
      const CMatrix pc = ideal.control.amplitudes() * ideal.control.amplitudes().adjoint();
      const CMatrix pt = ideal.target.amplitudes() * ideal.target.amplitudes().adjoint();
      // Projectors on the 8-dim output: (pc (x) I (x) I) + (I (x) pt (x) I).
      const CMatrix projector =
          Eigen::kroneckerProduct(pc, CMatrix::Identity(4, 4)).eval() +
          Eigen::kroneckerProduct(CMatrix::Identity(2, 2),
                                  Eigen::kroneckerProduct(pt, device_identity).eval())
              .eval();
      // tr(V^dag P V X) = sum conj(V_rk) P_rs V_sl X_lk; with column-major
      // vec(V) this is v^dag (X^T (x) P) v.
      form_ += weight * Eigen::kroneckerProduct(input.transpose(), projector).eval();
    }
  }
}

double AverageFidelityForm::evaluate(const CMatrix& v) const {
  const Eigen::Map<const CVector> vec(v.data(), v.size());
  return vec.dot(form_ * vec).real();
}

double AverageFidelityForm::evaluate(const Isometry& v) const { return evaluate(v.entries()); }

CMatrix AverageFidelityForm::gradient(const CMatrix& v) const {
  const Eigen::Map<const CVector> vec(v.data(), v.size());
  const CVector g = 2.0 * (form_ * vec);
  return Eigen::Map<const CMatrix>(g.data(), v.rows(), v.cols());
}

double average_fidelity(const Isometry& v, const AngleGrid& grid) {
  return AverageFidelityForm(grid).evaluate(v);
}

double unitarity_residual(const Isometry& v) {
  const CMatrix gram = v.entries().adjoint() * v.entries();
  return (gram - CMatrix::Identity(kGateInputDim, kGateInputDim)).cwiseAbs().maxCoeff();
}

double separability_measure(const PureState& two_qubit) {
  if (two_qubit.qubit_count() != 2) {
    throw std::invalid_argument("separability_measure: expects a two-qubit state");
  }
  return partial_trace(two_qubit, kControl).purity();
}

FidelityReport fidelity_sweep(const Isometry& v, const AngleGrid& grid) {
  FidelityReport report;
  report.grid_size = grid.size();
  report.rows.reserve(static_cast<std::size_t>(grid.size()) * grid.size());
  report.min = std::numeric_limits<double>::infinity();
  report.max = -std::numeric_limits<double>::infinity();
  double sum_control = 0.0;
  double sum_target = 0.0;
  for (GreatCircleAngle theta : grid.points()) {
    for (GreatCircleAngle phi : grid.points()) {
      const FidelityPair f = gate_fidelities(v, theta, phi);
      report.rows.push_back({theta.radians(), phi.radians(), f.control, f.target});
      sum_control += f.control;
      sum_target += f.target;
      report.min = std::min({report.min, f.control, f.target});
      report.max = std::max({report.max, f.control, f.target});
    }
  }
  const double n = static_cast<double>(report.rows.size());
  report.mean_control = sum_control / n;
  report.mean_target = sum_target / n;
  report.mean = 0.5 * (report.mean_control + report.mean_target);
  return report;
}

double qcm_analogy_check(const Isometry& v, const AngleGrid& grid) {
  const double copy_fidelity = optimal_copy_fidelity();
  double worst = 0.0;
  for (GreatCircleAngle theta : grid.points()) {
    const PureState control_in = make_circle_state(theta);
    for (GreatCircleAngle phi : grid.points()) {
      const PureState out = apply_gate(v, theta, phi);
      const double f = fidelity_pure(partial_trace(out, kControl), control_in);
      worst = std::max(worst, std::abs(f - copy_fidelity));
    }
  }
  return worst;
}

void write_csv(std::ostream& out, const FidelityReport& report) {
  out << "theta,phi,F_c,F_t\n";
  for (const FidelityRow& row : report.rows) {
    out << format_significant(row.theta) << ',' << format_significant(row.phi) << ','
        << format_significant(row.control) << ',' << format_significant(row.target) << '\n';
  }
}

nlohmann::ordered_json summary_json(const FidelityReport& report) {
  return {
      {"mean_Fc", round_significant(report.mean_control)},
      {"mean_Ft", round_significant(report.mean_target)},
      {"mean_F", round_significant(report.mean)},
      {"min_F", round_significant(report.min)},
      {"max_F", round_significant(report.max)},
      {"grid_size", report.grid_size},
  };
}

}  // namespace circlegate
