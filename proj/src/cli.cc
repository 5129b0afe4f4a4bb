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

#include "circlegate/cli.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "circlegate/numeric_format.h"

namespace circlegate::cli {
namespace {

constexpr int kOrthogonalitySweepPoints = 360;
constexpr double kFidelitySpreadTolerance = 1e-10;
constexpr double kOptimalityCeilingSlack = 1e-6;

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;

  bool passed() const { return value < tolerance; }
};

double optimal_fidelity() { return OptimalGateCoefficients::standard().a; }

std::vector<Check> run_verification(int grid_size) {
  std::vector<Check> checks;
  const CMatrix not_op = exact_not().entries();

  double worst_overlap = 0.0;
  double worst_unot = 0.0;
  for (GreatCircleAngle alpha : AngleGrid(kOrthogonalitySweepPoints).points()) {
    const PureState chi = make_circle_state(alpha);
    const CVector flipped = not_op * chi.amplitudes();
    worst_overlap = std::max(worst_overlap, std::abs(chi.amplitudes().dot(flipped)));
    const double f = fidelity_pure(universal_not_channel(chi), PureState(flipped));
    worst_unot = std::max(worst_unot, std::abs(f - 2.0 / 3.0));
  }
  checks.push_back({"exact_not_orthogonality", worst_overlap, tolerance::kExact});
  checks.push_back({"universal_not_fidelity_2/3", worst_unot, tolerance::kExact});

  const Isometry gate = optimal_cnot_isometry();
  checks.push_back({"optimal_gate_unitarity", unitarity_residual(gate), tolerance::kExact});

  const FidelityReport report = fidelity_sweep(gate, AngleGrid(grid_size));
  checks.push_back({"fidelity_spread", report.max - report.min, kFidelitySpreadTolerance});
  checks.push_back({"fidelity_value", std::max(std::abs(report.mean_control - optimal_fidelity()),
                                               std::abs(report.mean_target - optimal_fidelity())),
                    kFidelitySpreadTolerance});

  double worst_measurement = 0.0;
  for (double theta0 : {0.0, std::numbers::pi / 3.0, std::numbers::pi / 2.0, std::numbers::pi}) {
    for (GreatCircleAngle chi0 : AngleGrid(8).points()) {
      const MeasurementOutcome m =
          measure_in_basis(superposition_target_marginal(GreatCircleAngle(theta0), chi0), chi0);
      const double c = std::cos(theta0 / 2.0);
      const double s = std::sin(theta0 / 2.0);
      worst_measurement =
          std::max({worst_measurement, std::abs(m.p0 - c * c), std::abs(m.p1 - s * s)});
    }
  }
  checks.push_back({"measurement_statistics", worst_measurement, tolerance::kExact});
  return checks;
}

int write_checks(const std::vector<Check>& checks, std::ostream& out) {
  out << "check                        value                tolerance  status\n";
  bool all_passed = true;
  for (const Check& c : checks) {
    std::string name = c.name;
    name.resize(std::max<std::size_t>(name.size(), 28), ' ');
    std::string value = format_significant(c.value);
    value.resize(std::max<std::size_t>(value.size(), 20), ' ');
    std::string tol = format_significant(c.tolerance);
    tol.resize(std::max<std::size_t>(tol.size(), 10), ' ');
    out << name << ' ' << value << ' ' << tol << ' ' << (c.passed() ? "PASS" : "FAIL") << '\n';
    all_passed = all_passed && c.passed();
  }
  return all_passed ? kExitOk : kExitCheckFailed;
}

void write_not_demo(OutputFormat format, std::ostream& out) {
  const std::vector<double> angles{0.0, 0.5, 1.1, std::numbers::pi / 2.0, 2.0,
                                   std::numbers::pi, 4.0, 5.5};
  const CMatrix not_op = exact_not().entries();
  if (format == OutputFormat::kJson) {
    nlohmann::ordered_json channel = nlohmann::ordered_json::array();
    for (double a : angles) {
      const PureState chi = make_circle_state(GreatCircleAngle(a));
      const PureState perp(CVector(not_op * chi.amplitudes()));
      channel.push_back({{"alpha", round_significant(a)},
                         {"exact_not_overlap", round_significant(std::abs(chi.inner(perp)))},
                         {"universal_not_fidelity",
                          round_significant(fidelity_pure(universal_not_channel(chi), perp))}});
    }
    nlohmann::ordered_json ensemble = nlohmann::ordered_json::array();
    for (int n = 1; n <= 5; ++n) {
      ensemble.push_back({{"n", n}, {"fidelity", round_significant(ensemble_unot_fidelity(n))}});
    }
    out << nlohmann::ordered_json{{"channel", channel}, {"ensemble", ensemble}}.dump(2) << '\n';
    return;
  }
  out << "alpha,exact_not_overlap,universal_not_fidelity\n";
  for (double a : angles) {
    const PureState chi = make_circle_state(GreatCircleAngle(a));
    const PureState perp(CVector(not_op * chi.amplitudes()));
    out << format_significant(a) << ',' << format_significant(std::abs(chi.inner(perp))) << ','
        << format_significant(fidelity_pure(universal_not_channel(chi), perp)) << '\n';
  }
  out << "\nn,ensemble_fidelity\n";
  for (int n = 1; n <= 5; ++n) out << n << ',' << format_significant(ensemble_unot_fidelity(n)) << '\n';
}

int write_optimization(const RunConfig& config, OutputFormat format, std::ostream& out,
                       std::ostream& err) {
  OptimizerConfig oc = config.optimizer;
  oc.grid_size = config.grid_size;
  oc.rng_seed = config.seed;
  const OptimizationResult result = optimize(oc);
  if (format == OutputFormat::kJson) {
    out << to_json(result).dump(2) << '\n';
  } else {
    out << "restart,objective,iterations\n";
    for (std::size_t r = 0; r < result.per_restart_objectives.size(); ++r) {
      out << r << ',' << format_significant(result.per_restart_objectives[r]) << ','
          << result.iterations_used[r] << '\n';
    }
  }
  const double ceiling = optimal_fidelity() + kOptimalityCeilingSlack;
  int code = kExitOk;
  if (result.best_objective > ceiling) {
    err << "optimize: best objective " << format_significant(result.best_objective)
        << " exceeds the optimality ceiling " << format_significant(ceiling) << '\n';
    code = kExitCheckFailed;
  }
  if (!(unitarity_residual(result.best_isometry) < 1e-10)) {
    err << "optimize: best isometry left the isometry manifold\n";
    code = kExitCheckFailed;
  }
  if (!result.converged) {
    err << "optimize: best objective " << format_significant(result.best_objective)
        << " is not within 1e-4 of " << format_significant(optimal_fidelity()) << '\n';
    code = kExitCheckFailed;
  }
  return code;
}

int write_qcm(int grid_size, OutputFormat format, std::ostream& out) {
  const double residual = qcm_analogy_check(optimal_cnot_isometry(), AngleGrid(grid_size));
  const bool passed = residual < kFidelitySpreadTolerance;
  if (format == OutputFormat::kJson) {
    out << nlohmann::ordered_json{{"qcm_residual", round_significant(residual)},
                                  {"copy_fidelity", round_significant(optimal_fidelity())},
                                  {"grid_size", grid_size},
                                  {"pass", passed}}
               .dump(2)
        << '\n';
  } else {
    out << "grid_size,qcm_residual\n" << grid_size << ',' << format_significant(residual) << '\n';
  }
  return passed ? kExitOk : kExitCheckFailed;
}

}  // namespace

void RunConfig::validate() const {
  if (grid_size < 8) throw std::invalid_argument("--grid-size must be >= 8");
  if (output_path.empty()) throw std::invalid_argument("--output must not be empty");
  OptimizerConfig oc = optimizer;
  oc.grid_size = grid_size;
  oc.validate();
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  const OutputFormat format = config.format.value_or(
      config.command == Command::kSweep ? OutputFormat::kCsv : OutputFormat::kJson);
  std::ostringstream body;
  int code = kExitOk;
  switch (config.command) {
    case Command::kVerify:
      code = write_checks(run_verification(config.grid_size), body);
      break;
    case Command::kSweep: {
      const FidelityReport report = fidelity_sweep(optimal_cnot_isometry(), AngleGrid(config.grid_size));
      if (format == OutputFormat::kCsv) {
        write_csv(body, report);
      } else {
        body << summary_json(report).dump(2) << '\n';
      }
      break;
    }
    case Command::kOptimize:
      code = write_optimization(config, format, body, err);
      break;
    case Command::kQcmCheck:
      code = write_qcm(config.grid_size, format, body);
      break;
    case Command::kNotDemo:
      write_not_demo(format, body);
      break;
  }

  if (config.output_path == "-") {
    out << body.str();
    out.flush();
  } else {
    std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
    file << body.str();
    file.close();
    if (!file) {
      err << "error: cannot write " << config.output_path << '\n';
      return kExitUsage;
    }
  }
  return code;
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Great-circle universal C-NOT simulation and optimization"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with option defaults");

  RunConfig config;
  std::string format_name;

  const std::map<std::string, Command> commands{
      {"verify", Command::kVerify},     {"sweep", Command::kSweep},
      {"optimize", Command::kOptimize}, {"qcm-check", Command::kQcmCheck},
      {"not-demo", Command::kNotDemo},
  };
  const std::map<std::string, std::string> descriptions{
      {"verify", "Run the built-in verification checks and print a pass/fail table"},
      {"sweep", "Tabulate F_c and F_t of the optimal gate over a grid"},
      {"optimize", "Re-derive the optimal gate by ascent over isometries"},
      {"qcm-check", "Compare the reduced control channel with the equatorial cloner"},
      {"not-demo", "Universal-NOT channel and ensemble fidelities"},
  };
  for (const auto& [name, command] : commands) {
    CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
    sub->callback([&config, command = command] { config.command = command; });
    sub->add_option("--grid-size", config.grid_size, "Angles per grid axis (>= 8)")
        ->capture_default_str();
    sub->add_option("--seed", config.seed, "RNG seed")
        ->envname("CIRCLEGATE_SEED")
        ->capture_default_str();
    sub->add_option("--restarts", config.optimizer.restarts, "Independent ascents")
        ->capture_default_str();
    sub->add_option("--max-iterations", config.optimizer.max_iterations, "Iterations per ascent")
        ->capture_default_str();
    sub->add_option("--step-size", config.optimizer.step_size, "Initial ascent step")
        ->capture_default_str();
    sub->add_option("--tol", config.optimizer.convergence_tol, "Objective-change tolerance")
        ->capture_default_str();
    sub->add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("-o,--output", config.output_path, "Output file or - for stdout")
        ->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!format_name.empty()) {
    config.format = format_name == "csv" ? OutputFormat::kCsv : OutputFormat::kJson;
  }
  return run_command(config, out, err);
}

}  // namespace circlegate::cli
