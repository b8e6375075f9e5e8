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

// bwbench: runs configured experiments, plots traces and checks the
// acceptance criteria. Exit codes: 0 ok, 1 acceptance failure, 2 error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blackwell/blackwell.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCriteria = 1;
constexpr int kExitError = 2;

int Fail(bw_status status) {
  std::cerr << "bwbench: " << bw_status_name(status) << ": " << bw_last_error()
            << "\n";
  return kExitError;
}

int Run(const std::string& config, const std::string& out,
        std::optional<std::uint64_t> seed, int threads) {
  int files = 0;
  const bw_status status =
      bw_run_experiment(config.c_str(), out.empty() ? nullptr : out.c_str(),
                        seed ? &*seed : nullptr, threads, &files);
  if (status != BW_OK) return Fail(status);
  std::cout << "wrote " << files << " csv files\n";
  return kExitOk;
}

int Plot(const std::vector<std::string>& csvs, const std::string& axis,
         const std::string& out) {
  std::vector<const char*> paths;
  for (const std::string& p : csvs) paths.push_back(p.c_str());
  const bw_status status = bw_plot(paths.data(), static_cast<int>(paths.size()),
                                   axis.c_str(), out.c_str());
  if (status != BW_OK) return Fail(status);
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int Accept(const std::string& scratch, int only, bool inject_bug) {
  int failed = 0;
  int count = 0;
  for (int id = 1; id <= bw_acceptance_count(); ++id) {
    if (only != 0 && id != only) continue;
    int passed = 0;
    std::string line(4096, '\0');
    const bw_status status = bw_acceptance_run(
        id, scratch.c_str(), inject_bug ? 1 : 0, &passed, line.data(),
        line.size());
    if (status != BW_OK && status != BW_BUFFER_TOO_SMALL) return Fail(status);
    line.resize(line.find('\0'));
    std::cout << line << std::endl;
    failed += passed ? 0 : 1;
    ++count;
  }
  if (count == 0) {
    std::cerr << "bwbench: no criterion " << only << "\n";
    return kExitError;
  }
  std::cout << (count - failed) << "/" << count << " criteria passed\n";
  return failed == 0 ? kExitOk : kExitCriteria;
}

int ListProblems() {
  std::cout << "problem families:\n";
  for (int i = 0; i < bw_problem_family_count(); ++i) {
    std::cout << "  " << bw_problem_family_name(i) << "\n";
  }
  std::cout << "algorithms:\n";
  for (int i = 0; i < bw_algorithm_count(); ++i) {
    std::cout << "  " << bw_algorithm_name(i) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saddle-point solver benchmarks"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  auto* run = app.add_subcommand("run", "Run the experiment in a config file");
  run->add_option("--config", config, "Experiment config file")->required();
  run->add_option("--out", out, "Output directory (overrides output.dir)");
  run->add_option("--seed", seed, "Run a single seed (overrides problem.seeds)");
  run->add_option("--threads", threads, "Worker threads (overrides run.threads)")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> csvs;
  std::string axis = "iterations";
  std::string svg;
  auto* plot = app.add_subcommand("plot", "Plot CSV traces as an SVG");
  plot->add_option("csv", csvs, "Trace CSV files")->required();
  plot->add_option("--axis", axis, "x axis")
      ->check(CLI::IsMember({"iterations", "time"}));
  plot->add_option("--out", svg, "Output SVG path")->required();

  std::string scratch = "acceptance_scratch";
  int only = 0;
  bool inject_bug = false;
  auto* accept = app.add_subcommand("accept", "Check the acceptance criteria");
  accept->add_option("--out", scratch, "Scratch directory for criterion 9");
  accept->add_option("--only", only, "Run a single criterion")
      ->check(CLI::Range(1, bw_acceptance_count()));
  accept->add_flag("--inject-projection-bug", inject_bug,
                   "Perturb the cone projection (mutation check)");

  auto* list = app.add_subcommand("list-problems",
                                  "List problem families and algorithms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  if (run->parsed()) return Run(config, out, seed, threads);
  if (plot->parsed()) return Plot(csvs, axis, svg);
  if (accept->parsed()) return Accept(scratch, only, inject_bug);
  if (list->parsed()) return ListProblems();
  return kExitError;
}
