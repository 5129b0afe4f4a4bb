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

#ifndef CIRCLEGATE_GATES_H_
#define CIRCLEGATE_GATES_H_

#include "circlegate/statekit.h"

namespace circlegate {

inline constexpr Eigen::Index kGateInputDim = 4;   // control (x) target
inline constexpr Eigen::Index kGateOutputDim = 8;  // control (x) target (x) device

/**
 * Linear map from the control-target space into control-target-device.
 *
 * Column m*2+n is the image of |m>_c |n>_t; rows follow the statekit
 * ordering |c t d>. The device's fixed initial state is absorbed into the
 * map, so there is no device input leg.
 *
 * Only the shape is enforced on construction. V^dag V = I is a property to
 * be measured (see unitarity_residual), not assumed: the optimizer produces
 * true isometries, while hand-built candidates need not be.
 */
class Isometry {
 public:
  /// Throws std::invalid_argument unless `entries` is 8 x 4.
  explicit Isometry(CMatrix entries);

  const CMatrix& entries() const { return entries_; }

 private:
  CMatrix entries_;
};

/// Amplitudes of the optimal great-circle C-NOT branch transformations.
struct OptimalGateCoefficients {
  double a = 0.0;  // 1/2 + sqrt(1/8)
  double b = 0.0;  // sqrt(1/8)
  double c = 0.0;  // 1/2 - sqrt(1/8)

  static OptimalGateCoefficients standard();
};

/// -i sigma_y = [[0, -1], [1, 0]]; orthogonalizes every great-circle state.
Operator exact_not();
Operator pauli_x();
Operator identity_operator(int qubits);

/// (2/3)|psi_perp><psi_perp| + (1/3)|psi><psi| with psi_perp = NOT psi.
/// Throws std::invalid_argument for anything but a single-qubit state.
DensityMatrix universal_not_channel(const PureState& psi);

/// (n+1)/(n+2) for an ensemble of n identical inputs; n >= 1.
double ensemble_unot_fidelity(int n);

/// |0><0| (x) I + |1><1| (x) sigma_x
Operator standard_cnot();

/// |0><0| (x) I + |1><1| (x) NOT. Applied to chi(t0) (x) chi this yields
/// cos(t0/2)|0>|chi> + sin(t0/2)|1>|NOT chi>.
Operator controlled_exact_not();

/// Target-qubit reduced state of controlled_exact_not applied to
/// chi(control) (x) chi(target).
DensityMatrix superposition_target_marginal(GreatCircleAngle control, GreatCircleAngle target);

/// [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]], so that
/// control_rotation(t) chi(p) = chi(p + t).
Operator control_rotation(GreatCircleAngle theta);

struct IdealCnotOutput {
  PureState control;
  PureState target;
};

/// Control unchanged; target cos(t/2) chi(p) + sin(t/2) NOT chi(p).
IdealCnotOutput ideal_cnot_reference(GreatCircleAngle theta, GreatCircleAngle phi);

/**
 * The optimal universal C-NOT, built on the computational target basis by
 * linear extension of
 *
 *   |0>|chi> -> a|0,chi,0> + b(|0,chi',1> + |1,chi,1>) + c|1,chi',0>
 *   |1>|chi> -> a|1,chi',1> + b(|0,chi',0> + |1,chi,0>) + c|0,chi,1>
 *
 * with chi' = NOT chi. The map preserves the norm of every product of
 * great-circle states but is not an isometry on the full input space:
 * <V e_00, V e_11> = -4b^2 = -1/2 and <V e_01, V e_10> = +1/2.
 */
Isometry optimal_cnot_isometry();

/// I (x) I (x) |0>_d, the map that does nothing to either qubit.
Isometry identity_embedding();

/// V (chi(control) (x) chi(target)). Throws std::runtime_error if the output
/// norm deviates from 1 by more than kAccumulated.
PureState apply_gate(const Isometry& v, GreatCircleAngle control, GreatCircleAngle target);

}  // namespace circlegate

#endif  // CIRCLEGATE_GATES_H_
