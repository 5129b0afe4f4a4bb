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

#ifndef CIRCLEGATE_OPTIMIZER_H_
#define CIRCLEGATE_OPTIMIZER_H_

/**
 * @file
 * Projected gradient ascent of the average C-NOT fidelity over 8 x 4
 * isometries (one device qubit).
 *
 * Each step takes the central finite-difference gradient over the 64 real
 * parameters of V, projects it onto the tangent space of the Stiefel
 * manifold, steps, and retracts with the polar factor of the result. A step
 * that lowers the objective is retried at half the step size.
 */

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "circlegate/analysis.h"
#include "json.hpp"

namespace circlegate {

struct OptimizerConfig {
  int grid_size = 64;
  int max_iterations = 5000;
  double step_size = 0.05;
  double convergence_tol = 1e-9;
  int restarts = 8;
  std::uint64_t rng_seed = 42;

  /// Throws std::invalid_argument on grid_size < 8, step_size <= 0,
  /// restarts < 1 or max_iterations < 0.
  void validate() const;
};

/// Objective became NaN or infinite during an ascent.
class NonFiniteObjective : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AscentResult {
  Isometry isometry;
  // Objective at the start and after every accepted step.
  std::vector<double> objective_trace;
  int iterations = 0;
  // Largest unitarity residual seen after any retraction.
  double max_residual = 0.0;
};

struct OptimizationResult {
  Isometry best_isometry;
  double best_objective = 0.0;
  // NaN for restarts aborted on a non-finite objective.
  std::vector<double> per_restart_objectives;
  std::vector<int> iterations_used;
  bool converged = false;
  std::size_t best_restart = 0;
  std::uint64_t seed = 0;
  int grid_size = 0;
};

/// Finite-difference step on each real parameter.
inline constexpr double kGradientStep = 1e-6;

/// Orthonormalized 8x4 matrix of i.i.d. standard complex Gaussians.
/// Rank-deficient draws are retried with seed + 1, up to 16 times.
Isometry random_isometry(std::uint64_t seed);

/// Polar factor U of m = U P (nearest isometry in Frobenius norm).
CMatrix polar_retract(const CMatrix& m);

/// Same quantity as average_fidelity.
double objective(const Isometry& v, const AngleGrid& grid);

/// Central differences of the form over Re and Im of every entry, packed as
/// dRe + i dIm so it is directly comparable with AverageFidelityForm::gradient.
CMatrix finite_difference_gradient(const AverageFidelityForm& form, const CMatrix& v,
                                   double step = kGradientStep);

/// Throws std::invalid_argument if `start` is not an isometry within 1e-10,
/// NonFiniteObjective if the objective stops being finite.
AscentResult ascend(const Isometry& start, const OptimizerConfig& config);
AscentResult ascend(const Isometry& start, const AverageFidelityForm& form,
                    const OptimizerConfig& config);

/// Runs config.restarts ascents from random_isometry(seed + i). The lowest
/// index wins ties. Throws NonFiniteObjective if every restart aborted.
OptimizationResult optimize(const OptimizerConfig& config);

/// max over grid pairs of |F_c1 - F_c2| + |F_t1 - F_t2|.
double profile_distance(const Isometry& v1, const Isometry& v2, const AngleGrid& grid);

nlohmann::ordered_json to_json(const OptimizationResult& result);

}  // namespace circlegate

#endif  // CIRCLEGATE_OPTIMIZER_H_
