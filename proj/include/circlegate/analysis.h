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

#ifndef CIRCLEGATE_ANALYSIS_H_
#define CIRCLEGATE_ANALYSIS_H_

#include <ostream>
#include <vector>

#include "circlegate/gates.h"
#include "json.hpp"

namespace circlegate {

/// K uniformly spaced great-circle angles, offset + 2*pi*k/K.
class AngleGrid {
 public:
  /// Throws std::invalid_argument for count < 2.
  explicit AngleGrid(int count, double offset = 0.0);

  int size() const { return static_cast<int>(points_.size()); }
  double spacing() const;
  const std::vector<GreatCircleAngle>& points() const { return points_; }

 private:
  std::vector<GreatCircleAngle> points_;
};

struct FidelityPair {
  double control = 0.0;
  double target = 0.0;
};

/// Fidelities of the reduced control and target outputs of `v` against the
/// ideal C-NOT reference, from a full three-qubit simulation.
FidelityPair gate_fidelities(const Isometry& v, GreatCircleAngle theta, GreatCircleAngle phi);

/**
 * Grid-averaged fidelity as a Hermitian form on vec(V).
 *
 * For a fixed grid every F_c and F_t is <x|V^dag P V|x> with x the
 * (real) product input and P a projector onto the ideal output of one
 * qubit, so the double average of (F_c + F_t)/2 collapses to
 * Re(v^dag M v) with v the column-major vectorization of V and a 32 x 32
 * matrix M accumulated once per grid.
 */
class AverageFidelityForm {
 public:
  explicit AverageFidelityForm(const AngleGrid& grid);

  double evaluate(const Isometry& v) const;
  double evaluate(const CMatrix& v) const;
  /// G with f(V + eps D) = f(V) + eps Re tr(G^dag D) + O(eps^2).
  CMatrix gradient(const CMatrix& v) const;

  const CMatrix& matrix() const { return form_; }
  int grid_size() const { return grid_size_; }

 private:
  CMatrix form_;
  int grid_size_ = 0;
};

/// Uniform double average of (F_c + F_t)/2 over all grid pairs.
double average_fidelity(const Isometry& v, const AngleGrid& grid);

/// ||V^dag V - I_4||_max
double unitarity_residual(const Isometry& v);

/// tr(rho_c^2) of the reduced first qubit: 1 separable, 1/2 maximally entangled.
double separability_measure(const PureState& two_qubit);

struct FidelityRow {
  double theta = 0.0;
  double phi = 0.0;
  double control = 0.0;
  double target = 0.0;
};

struct FidelityReport {
  std::vector<FidelityRow> rows;
  double mean_control = 0.0;
  double mean_target = 0.0;
  double mean = 0.0;
  // Extremes over every F_c and F_t value in the table.
  double min = 0.0;
  double max = 0.0;
  int grid_size = 0;
};

/// One row per (theta, phi), theta-major in grid order.
FidelityReport fidelity_sweep(const Isometry& v, const AngleGrid& grid);

/// max over the grid of |F(rho_c, chi(theta)) - (1/2 + sqrt(1/8))|, i.e. how
/// far the reduced control channel is from the equatorial cloner's copy
/// fidelity.
double qcm_analogy_check(const Isometry& v, const AngleGrid& grid);

/// Header "theta,phi,F_c,F_t" then one line per row, 12 significant digits.
void write_csv(std::ostream& out, const FidelityReport& report);

/// {mean_Fc, mean_Ft, mean_F, min_F, max_F, grid_size}
nlohmann::ordered_json summary_json(const FidelityReport& report);

}  // namespace circlegate

#endif  // CIRCLEGATE_ANALYSIS_H_
