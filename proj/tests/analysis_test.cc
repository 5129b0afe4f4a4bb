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

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "test_util.h"

namespace circlegate {
namespace {

using std::numbers::pi;
constexpr double kTol = 1e-12;
constexpr double kOptimal = 0.85355339059327373;  // 1/2 + sqrt(1/8)

Isometry random_test_isometry(std::mt19937_64& rng) {
  return Isometry(testing::random_unitary(rng, 8).leftCols(4));
}

TEST(AngleGrid, UniformCoverage) {
  const AngleGrid grid(16);
  EXPECT_EQ(grid.size(), 16);
  EXPECT_NEAR(grid.spacing(), pi / 8, kTol);
  for (int k = 0; k < grid.size(); ++k) {
    EXPECT_NEAR(grid.points()[k].radians(), k * pi / 8, kTol);
  }
  const AngleGrid shifted(4, -0.1);
  EXPECT_NEAR(shifted.points()[0].radians(), 2 * pi - 0.1, kTol);
  EXPECT_THROW(AngleGrid(1), std::invalid_argument);
}

TEST(GateFidelities, OptimalGateIsConstant) {
  const Isometry v = optimal_cnot_isometry();
  for (double phi : {0.0, 0.7, 3.0, 6.0}) {
    const FidelityPair f = gate_fidelities(v, GreatCircleAngle(0.0), GreatCircleAngle(phi));
    EXPECT_NEAR(f.control, kOptimal, 1e-10);
    EXPECT_NEAR(f.target, kOptimal, 1e-10);
  }
  const FidelityPair f = gate_fidelities(v, GreatCircleAngle(1.7), GreatCircleAngle(0.4));
  EXPECT_NEAR(f.control, kOptimal, 1e-10);
  EXPECT_NEAR(f.target, kOptimal, 1e-10);
}

TEST(GateFidelities, IdentityEmbeddingMissesTheFlip) {
  const FidelityPair f = gate_fidelities(identity_embedding(), GreatCircleAngle(pi), GreatCircleAngle(0.0));
  EXPECT_NEAR(f.control, 1.0, kTol);
  EXPECT_NEAR(f.target, 0.0, kTol);
}

TEST(GateFidelities, ClosedFormMatchesSimulation) {
  // Every reduced output of the optimal gate overlaps its ideal with a^2 + b^2.
  const auto [a, b, c] = OptimalGateCoefficients::standard();
  const double closed_form = a * a + b * b;
  EXPECT_NEAR(a + c, 1.0, 1e-15);
  std::mt19937_64 rng(21);
  const Isometry v = optimal_cnot_isometry();
  for (int trial = 0; trial < 10; ++trial) {
    const GreatCircleAngle theta(testing::uniform_angle(rng));
    const GreatCircleAngle phi(testing::uniform_angle(rng));
    const FidelityPair f = gate_fidelities(v, theta, phi);
    EXPECT_NEAR(f.control, closed_form, kTol);
    EXPECT_NEAR(f.target, closed_form, kTol);
  }
}

TEST(AverageFidelity, Examples) {
  const AngleGrid grid(64);
  EXPECT_NEAR(average_fidelity(optimal_cnot_isometry(), grid), kOptimal, 1e-10);

  // Identity embedding: F_c = 1 and F_t = |<chi(p + t)|chi(p)>|^2 = cos^2(t/2).
  double oracle = 0.0;
  for (GreatCircleAngle theta : grid.points()) {
    for (GreatCircleAngle phi : grid.points()) {
      (void)phi;
      oracle += 0.5 * (1.0 + std::pow(std::cos(theta.radians() / 2), 2));
    }
  }
  oracle /= 64.0 * 64.0;
  EXPECT_NEAR(oracle, 0.75, kTol);
  EXPECT_NEAR(average_fidelity(identity_embedding(), grid), 0.75, kTol);

  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 5; ++trial) {
    const double f = average_fidelity(random_test_isometry(rng), grid);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
}

TEST(AverageFidelity, FormAgreesWithFullSimulation) {
  std::mt19937_64 rng(23);
  const AngleGrid grid(16);
  for (int trial = 0; trial < 5; ++trial) {
    const Isometry v = random_test_isometry(rng);
    const FidelityReport report = fidelity_sweep(v, grid);
    EXPECT_NEAR(average_fidelity(v, grid), report.mean, kTol);
  }
  EXPECT_NEAR(average_fidelity(optimal_cnot_isometry(), grid),
              fidelity_sweep(optimal_cnot_isometry(), grid).mean, kTol);
}

TEST(AverageFidelity, FormIsHermitian) {
  const AverageFidelityForm form{AngleGrid(8)};
  EXPECT_LT((form.matrix() - form.matrix().adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(form.grid_size(), 8);
}

TEST(AverageFidelity, InvariantUnderGridRotation) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 3; ++trial) {
    const Isometry v = random_test_isometry(rng);
    const double base = average_fidelity(v, AngleGrid(64));
    for (double offset : {0.01, 0.5, 2.0}) {
      EXPECT_NEAR(average_fidelity(v, AngleGrid(64, offset)), base, 1e-9);
    }
  }
}

TEST(UnitarityResidual, Examples) {
  EXPECT_LT(unitarity_residual(identity_embedding()), kTol);

  CMatrix scaled = identity_embedding().entries();
  scaled.col(2) *= 1.1;
  EXPECT_NEAR(unitarity_residual(Isometry(scaled)), 0.21, kTol);

  EXPECT_NEAR(unitarity_residual(Isometry(CMatrix::Zero(8, 4))), 1.0, kTol);

  std::mt19937_64 rng(25);
  EXPECT_LT(unitarity_residual(random_test_isometry(rng)), kTol);
}

TEST(UnitarityResidual, OptimalGateCrossTermsAreHalf) {
  // Only the cross-target Gram entries (+-4b^2) survive; see gates_test.
  EXPECT_NEAR(unitarity_residual(optimal_cnot_isometry()), 0.5, kTol);
}

TEST(SeparabilityMeasure, Examples) {
  EXPECT_NEAR(separability_measure(PureState{1.0, 0.0, 0.0, 0.0}), 1.0, kTol);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(separability_measure(PureState{r, 0.0, 0.0, r}), 0.5, kTol);

  const PureState out = apply_operator(
      standard_cnot(), tensor(make_circle_state(GreatCircleAngle(pi / 3)), PureState{1.0, 0.0}));
  // Reduced control is diag(cos^2(pi/6), sin^2(pi/6)).
  const double oracle = std::pow(std::cos(pi / 6), 4) + std::pow(std::sin(pi / 6), 4);
  EXPECT_NEAR(oracle, 0.625, kTol);
  const double purity = separability_measure(out);
  EXPECT_NEAR(purity, oracle, kTol);
  EXPECT_GT(purity, 0.5);
  EXPECT_LT(purity, 1.0);

  EXPECT_THROW(separability_measure(PureState{1.0, 0.0}), std::invalid_argument);
}

TEST(FidelitySweep, OptimalGateReport) {
  const FidelityReport report = fidelity_sweep(optimal_cnot_isometry(), AngleGrid(32));
  EXPECT_EQ(report.rows.size(), 32u * 32u);
  EXPECT_EQ(report.grid_size, 32);
  EXPECT_LT(report.max - report.min, 1e-10);
  EXPECT_NEAR(report.mean, kOptimal, 1e-10);

  double sc = 0.0;
  double st = 0.0;
  for (const FidelityRow& row : report.rows) {
    sc += row.control;
    st += row.target;
    EXPECT_GE(row.control, 0.0);
    EXPECT_LE(row.target, 1.0);
  }
  EXPECT_NEAR(report.mean_control, sc / report.rows.size(), kTol);
  EXPECT_NEAR(report.mean_target, st / report.rows.size(), kTol);
}

TEST(FidelitySweep, ControlFidelityIgnoresTargetAngle) {
  const FidelityReport report = fidelity_sweep(optimal_cnot_isometry(), AngleGrid(64));
  for (int i = 0; i < 64; ++i) {
    double lo = 1.0;
    double hi = 0.0;
    for (int j = 0; j < 64; ++j) {
      const double f = report.rows[64 * i + j].control;
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    EXPECT_LT(hi - lo, 1e-10);
  }
}

TEST(QcmAnalogyCheck, Examples) {
  const AngleGrid grid(32);
  EXPECT_LT(qcm_analogy_check(optimal_cnot_isometry(), grid), 1e-10);
  EXPECT_NEAR(qcm_analogy_check(identity_embedding(), grid), 0.1464466094, 1e-10);
  std::mt19937_64 rng(26);
  EXPECT_GE(qcm_analogy_check(random_test_isometry(rng), grid), 0.0);
}

TEST(Serialization, CsvLayout) {
  const FidelityReport report = fidelity_sweep(optimal_cnot_isometry(), AngleGrid(8));
  std::ostringstream out;
  write_csv(out, report);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "theta,phi,F_c,F_t");
  int rows = 0;
  std::string first;
  while (std::getline(in, line)) {
    if (rows == 0) first = line;
    ++rows;
  }
  EXPECT_EQ(rows, 64);
  EXPECT_EQ(first, "0,0,0.853553390593,0.853553390593");
}

TEST(Serialization, SummaryJson) {
  const FidelityReport report = fidelity_sweep(optimal_cnot_isometry(), AngleGrid(8));
  const nlohmann::ordered_json j = summary_json(report);
  EXPECT_EQ(j.dump(),
            R"({"mean_Fc":0.853553390593,"mean_Ft":0.853553390593,"mean_F":0.853553390593,)"
            R"("min_F":0.853553390593,"max_F":0.853553390593,"grid_size":8})");
}

}  // namespace
}  // namespace circlegate
