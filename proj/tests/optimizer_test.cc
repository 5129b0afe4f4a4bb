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

#include "circlegate/optimizer.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

namespace circlegate {
namespace {

constexpr double kOptimal = 0.85355339059327373;  // 1/2 + sqrt(1/8)

// Best reachable average fidelity with one device qubit, measured by an
// independent autodiff ascent (PyTorch, complex128, 10 restarts, device
// dimensions 2, 4 and 16 all agree): 0.824759526419, which matches
// 1/2 + 3 sqrt(3)/16. The profile at that point is F_c = 1/2 + sqrt(3)/4,
// F_t = 1/2 + sqrt(3)/8.
const double kReachable = 0.5 + 3.0 * std::sqrt(3.0) / 16.0;
const double kReachableControl = 0.5 + std::sqrt(3.0) / 4.0;
const double kReachableTarget = 0.5 + std::sqrt(3.0) / 8.0;

OptimizerConfig small_config() {
  OptimizerConfig config;
  config.grid_size = 8;
  config.max_iterations = 300;
  config.restarts = 2;
  return config;
}

// Shared across tests: the default run is the expensive part.
const OptimizationResult& default_run() {
  static const OptimizationResult result = optimize(OptimizerConfig{});
  return result;
}

TEST(OptimizerConfig, Validation) {
  EXPECT_NO_THROW(OptimizerConfig{}.validate());
  OptimizerConfig c;
  c.grid_size = 7;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.step_size = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.restarts = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.convergence_tol = std::numeric_limits<double>::infinity();
  EXPECT_NO_THROW(c.validate());
}

TEST(RandomIsometry, IsAnIsometry) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_LT(unitarity_residual(random_isometry(seed)), 1e-12);
  }
}

TEST(RandomIsometry, SeedsAreDistinctAndDeterministic) {
  const Isometry a = random_isometry(1);
  const Isometry b = random_isometry(2);
  EXPECT_GT((a.entries() - b.entries()).cwiseAbs().maxCoeff(), 1e-3);
  const Isometry again = random_isometry(1);
  EXPECT_TRUE((a.entries().array() == again.entries().array()).all());
}

TEST(PolarRetract, FixesIsometriesAndProjectsOthers) {
  const Isometry v = random_isometry(3);
  EXPECT_LT((polar_retract(v.entries()) - v.entries()).cwiseAbs().maxCoeff(), 1e-12);
  const CMatrix bumped = v.entries() + 0.3 * random_isometry(4).entries();
  EXPECT_LT(unitarity_residual(Isometry(polar_retract(bumped))), 1e-12);
  // The branch-form gate is pulled onto the manifold too.
  EXPECT_LT(unitarity_residual(Isometry(polar_retract(optimal_cnot_isometry().entries()))), 1e-12);
}

TEST(Objective, Examples) {
  const AngleGrid grid(64);
  EXPECT_NEAR(objective(optimal_cnot_isometry(), grid), kOptimal, 1e-10);
  const double random_value = objective(random_isometry(5), grid);
  EXPECT_GE(random_value, 0.0);
  EXPECT_LE(random_value, 1.0);
  EXPECT_LT(objective(identity_embedding(), grid), kOptimal);
  EXPECT_EQ(objective(random_isometry(6), grid), average_fidelity(random_isometry(6), grid));
}

TEST(Gradient, AnalyticMatchesFiniteDifferences) {
  const AverageFidelityForm form{AngleGrid(16)};
  for (std::uint64_t seed = 10; seed < 15; ++seed) {
    const CMatrix v = random_isometry(seed).entries();
    const CMatrix analytic = form.gradient(v);
    const CMatrix numeric = finite_difference_gradient(form, v);
    EXPECT_LT((analytic - numeric).norm() / analytic.norm(), 1e-5);
  }
}

TEST(Gradient, RichardsonConsistency) {
  const AverageFidelityForm form{AngleGrid(16)};
  const CMatrix v = random_isometry(20).entries();
  const CMatrix coarse = finite_difference_gradient(form, v, 2e-6);
  const CMatrix fine = finite_difference_gradient(form, v, 1e-6);
  const CMatrix extrapolated = (4.0 * fine - coarse) / 3.0;
  EXPECT_LT((extrapolated - fine).norm() / fine.norm(), 1e-6);
}

TEST(Ascend, RejectsNonIsometricStart) {
  EXPECT_THROW(ascend(optimal_cnot_isometry(), small_config()), std::invalid_argument);
}

TEST(Ascend, ZeroIterationsReturnsStart) {
  OptimizerConfig config = small_config();
  config.max_iterations = 0;
  const Isometry start = random_isometry(7);
  const AscentResult r = ascend(start, config);
  EXPECT_EQ(r.iterations, 0);
  ASSERT_EQ(r.objective_trace.size(), 1u);
  EXPECT_TRUE((r.isometry.entries().array() == start.entries().array()).all());
}

TEST(Ascend, InfiniteToleranceStopsAfterOneIteration) {
  OptimizerConfig config = small_config();
  config.convergence_tol = std::numeric_limits<double>::infinity();
  const AscentResult r = ascend(random_isometry(8), config);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_EQ(r.objective_trace.size(), 2u);
}

TEST(Ascend, MonotoneAndOnManifold) {
  OptimizerConfig config = small_config();
  config.step_size = 2.0;  // large enough to force step halving
  for (std::uint64_t seed = 30; seed < 33; ++seed) {
    const AscentResult r = ascend(random_isometry(seed), config);
    EXPECT_LT(r.max_residual, 1e-10);
    for (std::size_t i = 1; i < r.objective_trace.size(); ++i) {
      EXPECT_GE(r.objective_trace[i], r.objective_trace[i - 1] - 1e-12);
    }
    EXPECT_GT(r.objective_trace.back(), r.objective_trace.front());
  }
}

TEST(Ascend, StationaryAtConvergedOptimum) {
  const OptimizationResult& run = default_run();
  const AscentResult r = ascend(run.best_isometry, OptimizerConfig{});
  EXPECT_LE(r.iterations, 5);
  EXPECT_NEAR(r.objective_trace.back(), run.best_objective, 1e-9);
}

TEST(Optimize, ZeroIterationsGivesStartObjective) {
  OptimizerConfig config = small_config();
  config.restarts = 1;
  config.max_iterations = 0;
  const OptimizationResult r = optimize(config);
  EXPECT_EQ(r.best_objective, objective(random_isometry(config.rng_seed), AngleGrid(8)));
  EXPECT_EQ(r.iterations_used, std::vector<int>{0});
}

TEST(Optimize, Reproducible) {
  const OptimizationResult a = optimize(small_config());
  const OptimizationResult b = optimize(small_config());
  EXPECT_EQ(a.best_objective, b.best_objective);
  EXPECT_EQ(a.per_restart_objectives, b.per_restart_objectives);
  EXPECT_EQ(a.iterations_used, b.iterations_used);
  EXPECT_TRUE((a.best_isometry.entries().array() == b.best_isometry.entries().array()).all());
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(Optimize, BestIsMaxOfRestarts) {
  const OptimizationResult r = optimize(small_config());
  ASSERT_EQ(r.per_restart_objectives.size(), 2u);
  const double max = *std::max_element(r.per_restart_objectives.begin(),
                                       r.per_restart_objectives.end());
  EXPECT_EQ(r.best_objective, max);
  EXPECT_EQ(r.per_restart_objectives[r.best_restart], max);
  EXPECT_LT(unitarity_residual(r.best_isometry), 1e-10);
}

TEST(Optimize, DefaultRunReachesOneDeviceOptimum) {
  const OptimizationResult& r = default_run();
  EXPECT_NEAR(r.best_objective, kReachable, 1e-6);
  EXPECT_LE(r.best_objective, kOptimal + 1e-6);
  EXPECT_LT(unitarity_residual(r.best_isometry), 1e-10);
  // The branch-form value 1/2 + sqrt(1/8) is out of reach, so no convergence.
  EXPECT_FALSE(r.converged);
  for (double f : r.per_restart_objectives) EXPECT_GT(f, 0.82);
}

TEST(Optimize, OptimumProfileIsConstantButAsymmetric) {
  const FidelityReport report = fidelity_sweep(default_run().best_isometry, AngleGrid(32));
  EXPECT_NEAR(report.mean_control, kReachableControl, 1e-4);
  EXPECT_NEAR(report.mean_target, kReachableTarget, 1e-4);
}

TEST(ProfileDistance, Examples) {
  const AngleGrid grid(16);
  const Isometry v = random_isometry(40);
  EXPECT_EQ(profile_distance(v, v, grid), 0.0);
  EXPECT_GT(profile_distance(optimal_cnot_isometry(), identity_embedding(), grid), 0.1);
  // |F_c gap| + |F_t gap| = (sqrt(3)/4 - sqrt(1/8)) + (sqrt(1/8) - sqrt(3)/8) = sqrt(3)/8,
  // up to the residual non-constancy of the numerically converged profile.
  EXPECT_NEAR(profile_distance(default_run().best_isometry, optimal_cnot_isometry(), grid),
              std::sqrt(3.0) / 8.0, 1e-3);
}

TEST(Serialization, OptimizationJson) {
  const OptimizationResult r = optimize(small_config());
  const nlohmann::ordered_json j = to_json(r);
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["grid_size"], 8);
  EXPECT_EQ(j["per_restart_objectives"].size(), 2u);
  EXPECT_EQ(j["iterations_used"].size(), 2u);
  ASSERT_EQ(j["isometry"].size(), 8u);
  for (const auto& row : j["isometry"]) {
    ASSERT_EQ(row.size(), 4u);
    for (const auto& entry : row) EXPECT_EQ(entry.size(), 2u);
  }
  EXPECT_EQ(j["isometry"][3][1][0].get<double>(), r.best_isometry.entries()(3, 1).real());
}

}  // namespace
}  // namespace circlegate
