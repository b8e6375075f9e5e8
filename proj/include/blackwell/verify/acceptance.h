// Copyright 2026 The Blackwell Solver Authors
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

#ifndef BLACKWELL_VERIFY_ACCEPTANCE_H_
#define BLACKWELL_VERIFY_ACCEPTANCE_H_

#include <string>
#include <vector>

namespace blackwell::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
  double time_limit_seconds = 0.0;
};

struct AcceptanceOptions {
  // Replaces the cone projection checked by criterion 1 with a perturbed one.
  bool inject_projection_bug = false;
  // Criterion 9 writes experiment output below this directory.
  std::string scratch_dir = "acceptance_scratch";
};

inline constexpr int kCriterionCount = 9;

// Runs criterion `id` in 1..kCriterionCount. Exceptions are reported as
// failures.
CriterionResult RunCriterion(int id, const AcceptanceOptions& options);
std::vector<CriterionResult> RunAcceptance(const AcceptanceOptions& options);

// One line: "criterion <id> <name>: PASS|FAIL measured=... threshold=...".
std::string FormatCriterion(const CriterionResult& result);

}  // namespace blackwell::verify

#endif  // BLACKWELL_VERIFY_ACCEPTANCE_H_
