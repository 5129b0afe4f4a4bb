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

#ifndef CIRCLEGATE_NUMERIC_FORMAT_H_
#define CIRCLEGATE_NUMERIC_FORMAT_H_

#include <cstdio>
#include <cstdlib>
#include <string>

namespace circlegate {

inline constexpr int kReportDigits = 12;

/// printf "%.12g"
inline std::string format_significant(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*g", kReportDigits, value);
  return buf;
}

/// Rounds to 12 significant digits so JSON emitters print at most that many.
inline double round_significant(double value) {
  return std::strtod(format_significant(value).c_str(), nullptr);
}

}  // namespace circlegate

#endif  // CIRCLEGATE_NUMERIC_FORMAT_H_
