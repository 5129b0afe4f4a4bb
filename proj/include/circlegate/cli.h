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

#ifndef CIRCLEGATE_CLI_H_
#define CIRCLEGATE_CLI_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "circlegate/optimizer.h"

namespace circlegate::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

enum class Command { kVerify, kSweep, kOptimize, kQcmCheck, kNotDemo };
enum class OutputFormat { kCsv, kJson };

struct RunConfig {
  Command command = Command::kVerify;
  int grid_size = 64;
  // "-" is standard output.
  std::string output_path = "-";
  // Unset means the command's own default (csv for sweep, json otherwise).
  std::optional<OutputFormat> format;
  std::uint64_t seed = 42;
  OptimizerConfig optimizer;

  /// Throws std::invalid_argument on grid_size < 8 or a bad optimizer block.
  void validate() const;
};

/// Executes one command. Returns kExitOk, kExitCheckFailed when any check
/// misses its tolerance, or kExitUsage on invalid configuration or I/O
/// failure (diagnostic on `err`).
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (flags > --config file > CIRCLEGATE_SEED > defaults) and runs.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace circlegate::cli

#endif  // CIRCLEGATE_CLI_H_
