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

// Runs every acceptance criterion and prints one line per criterion.
// Usage: acceptance_tests [--scratch DIR] [--only ID] [--inject-projection-bug]

#include <cstdlib>
#include <iostream>
#include <string>

#include "blackwell/verify/acceptance.h"

int main(int argc, char** argv) {
  blackwell::verify::AcceptanceOptions options;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--scratch" && i + 1 < argc) {
      options.scratch_dir = argv[++i];
    } else if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (arg == "--inject-projection-bug") {
      options.inject_projection_bug = true;
    } else {
      std::cerr << "unknown argument: " << arg << "\n";
      return 2;
    }
  }
  int failed = 0;
  int count = 0;
  for (int id = 1; id <= blackwell::verify::kCriterionCount; ++id) {
    if (only != 0 && id != only) continue;
    const auto result = blackwell::verify::RunCriterion(id, options);
    std::cout << blackwell::verify::FormatCriterion(result) << std::endl;
    failed += result.passed ? 0 : 1;
    ++count;
  }
  std::cout << (count - failed) << "/" << count << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
