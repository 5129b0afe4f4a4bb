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

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "circlegate/numeric_format.h"

namespace circlegate {
namespace {

constexpr int kMaxResampleAttempts = 16;
constexpr double kRankTolerance = 1e-8;
// An accepted step may lower the objective by at most this much.
constexpr double kMonotoneSlack = 1e-12;
constexpr double kMinStep = 1e-16;
constexpr double kIsometryTolerance = 1e-10;
// best_objective within this distance of the known optimum counts as converged.
constexpr double kRecoveryTolerance = 1e-4;

double checked(double value) {
  if (!std::isfinite(value)) throw NonFiniteObjective("objective is not finite");
  return value;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (grid_size < 8) throw std::invalid_argument("grid_size must be >= 8");
  if (!(step_size > 0.0)) throw std::invalid_argument("step_size must be > 0");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (max_iterations < 0) throw std::invalid_argument("max_iterations must be >= 0");
  if (std::isnan(convergence_tol) || convergence_tol < 0.0) {
    throw std::invalid_argument("convergence_tol must be >= 0");
  }
}

CMatrix polar_retract(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

Isometry random_isometry(std::uint64_t seed) {
  for (int attempt = 0; attempt < kMaxResampleAttempts; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
    // Unit-variance complex Gaussian: each part has variance 1/2.
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CMatrix m(kGateOutputDim, kGateInputDim);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        m(i, j) = Complex{re, im};
      }
    }
    Eigen::JacobiSVD<CMatrix> svd(m);
    if (svd.singularValues().minCoeff() > kRankTolerance) return Isometry(polar_retract(m));
  }
  throw std::runtime_error("random_isometry: repeated rank-deficient samples");
}

double objective(const Isometry& v, const AngleGrid& grid) { return average_fidelity(v, grid); }

CMatrix finite_difference_gradient(const AverageFidelityForm& form, const CMatrix& v,
                                   double step) {
  CMatrix grad(v.rows(), v.cols());
  CMatrix probe = v;
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const Complex original = v(i, j);
      double partial[2];
      for (int part = 0; part < 2; ++part) {
        const Complex delta = part == 0 ? Complex{step, 0.0} : Complex{0.0, step};
        probe(i, j) = original + delta;
        const double up = form.evaluate(probe);
        probe(i, j) = original - delta;
        const double down = form.evaluate(probe);
        partial[part] = (up - down) / (2.0 * step);
      }
      probe(i, j) = original;
      grad(i, j) = Complex{partial[0], partial[1]};
    }
  }
  return grad;
}

AscentResult ascend(const Isometry& start, const OptimizerConfig& config) {
  config.validate();
  return ascend(start, AverageFidelityForm(AngleGrid(config.grid_size)), config);
}

AscentResult ascend(const Isometry& start, const AverageFidelityForm& form,
                    const OptimizerConfig& config) {
  config.validate();
  const double start_residual = unitarity_residual(start);
  if (!(start_residual < kIsometryTolerance)) {
    throw std::invalid_argument("ascend: start is not an isometry (residual " +
                                std::to_string(start_residual) + ")");
  }

  CMatrix current = start.entries();
  double value = checked(form.evaluate(current));
  AscentResult result{start, {value}, 0, start_residual};
  double step = config.step_size;

  for (int iter = 0; iter < config.max_iterations; ++iter) {
    const CMatrix grad = finite_difference_gradient(form, current);
    const CMatrix gram = current.adjoint() * grad;
    const CMatrix tangent = grad - current * (0.5 * (gram + gram.adjoint()));

    bool accepted = false;
    CMatrix candidate;
    double candidate_value = 0.0;
    while (step >= kMinStep) {
      candidate = polar_retract(current + step * tangent);
      candidate_value = checked(form.evaluate(candidate));
      if (candidate_value >= value - kMonotoneSlack) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    const double change = std::abs(candidate_value - value);
    current = std::move(candidate);
    value = candidate_value;
    result.objective_trace.push_back(value);
    result.iterations = iter + 1;
    result.max_residual = std::max(result.max_residual, unitarity_residual(Isometry(current)));
    if (change < config.convergence_tol) break;
  }
  result.isometry = Isometry(std::move(current));
  return result;
}

OptimizationResult optimize(const OptimizerConfig& config) {
  config.validate();
  const AverageFidelityForm form{AngleGrid(config.grid_size)};

  OptimizationResult result{identity_embedding(), -std::numeric_limits<double>::infinity()};
  result.seed = config.rng_seed;
  result.grid_size = config.grid_size;
  bool any_finished = false;
  for (int r = 0; r < config.restarts; ++r) {
    const Isometry start = random_isometry(config.rng_seed + static_cast<std::uint64_t>(r));
    try {
      AscentResult ascent = ascend(start, form, config);
      const double final_value = ascent.objective_trace.back();
      result.per_restart_objectives.push_back(final_value);
      result.iterations_used.push_back(ascent.iterations);
      if (!any_finished || final_value > result.best_objective) {
        result.best_objective = final_value;
        result.best_isometry = std::move(ascent.isometry);
        result.best_restart = static_cast<std::size_t>(r);
      }
      any_finished = true;
    } catch (const NonFiniteObjective&) {
      result.per_restart_objectives.push_back(std::numeric_limits<double>::quiet_NaN());
      result.iterations_used.push_back(0);
    }
  }
  if (!any_finished) throw NonFiniteObjective("optimize: every restart aborted");

  const double target = OptimalGateCoefficients::standard().a;
  result.converged = std::abs(result.best_objective - target) <= kRecoveryTolerance;
  return result;
}

double profile_distance(const Isometry& v1, const Isometry& v2, const AngleGrid& grid) {
  double worst = 0.0;
  for (GreatCircleAngle theta : grid.points()) {
    for (GreatCircleAngle phi : grid.points()) {
      const FidelityPair f1 = gate_fidelities(v1, theta, phi);
      const FidelityPair f2 = gate_fidelities(v2, theta, phi);
      worst = std::max(worst,
                       std::abs(f1.control - f2.control) + std::abs(f1.target - f2.target));
    }
  }
  return worst;
}

nlohmann::ordered_json to_json(const OptimizationResult& result) {
  nlohmann::ordered_json objectives = nlohmann::ordered_json::array();
  for (double f : result.per_restart_objectives) {
    if (std::isfinite(f)) {
      objectives.push_back(round_significant(f));
    } else {
      objectives.push_back(nullptr);
    }
  }
  nlohmann::ordered_json matrix = nlohmann::ordered_json::array();
  const CMatrix& v = result.best_isometry.entries();
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < v.cols(); ++j) row.push_back({v(i, j).real(), v(i, j).imag()});
    matrix.push_back(std::move(row));
  }
  return {
      {"best_objective", round_significant(result.best_objective)},
      {"converged", result.converged},
      {"best_restart", result.best_restart},
      {"per_restart_objectives", std::move(objectives)},
      {"iterations_used", result.iterations_used},
      {"seed", result.seed},
      {"grid_size", result.grid_size},
      {"unitarity_residual", unitarity_residual(result.best_isometry)},
      {"isometry", std::move(matrix)},
  };
}

}  // namespace circlegate
