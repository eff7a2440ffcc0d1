// Copyright 2026 The hemirobin Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one pass/fail verdict per numbered criterion.

#ifndef HEMIROBIN_ACCEPTANCE_HPP_
#define HEMIROBIN_ACCEPTANCE_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace hemirobin::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Number of criteria in the suite.
inline constexpr int kCriterionCount = 12;

/// Runs one criterion (1-based). Exceptions are caught and reported as a
/// failure with the message in `detail`.
CriterionResult run_criterion(int id, unsigned threads = 0);

/// Runs every criterion, printing one line per criterion to `out` as it
/// completes.
std::vector<CriterionResult> run_acceptance(std::ostream& out, unsigned threads = 0);

/// "PASS  [ 1] name (0.01 s): detail"
std::string format_result(const CriterionResult& r);

}  // namespace hemirobin::acceptance

#endif  // HEMIROBIN_ACCEPTANCE_HPP_
