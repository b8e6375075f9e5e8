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

#ifndef BLACKWELL_EXPERIMENT_H_
#define BLACKWELL_EXPERIMENT_H_

#include <cstdint>
#include <istream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blackwell/problems.h"
#include "blackwell/saddle.h"

namespace blackwell {

// A configuration problem; key() names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ProblemFamily { kMatrixGame, kDro, kMdp };

std::string ProblemFamilyName(ProblemFamily family);

struct ProblemSpec {
  ProblemFamily family = ProblemFamily::kMatrixGame;
  // Matrix game: rows and columns. DRO: features and datapoints.
  // MDP: n is the number of states.
  int n = 100;
  int m = 50;
  Distribution distribution = Distribution::kUniform01;
  std::vector<std::uint64_t> seeds = {0};
  int actions = 10;
  double branching = 0.5;
  double discount = 0.95;
  double reward_max = 10.0;
  double flip_fraction = 0.1;
  // DRO only: sparse-format file replacing the synthetic generator.
  std::string dataset;
};

enum class AlgorithmFamily { kSpCbaPlus, kCbaPlus, kCba, kRmPlus, kRm,
                             kFirstOrder };

struct AlgorithmSpec {
  AlgorithmFamily family = AlgorithmFamily::kSpCbaPlus;
  FirstOrderMethod method = FirstOrderMethod::kOmd;
  bool tuned = false;

  std::string Name() const;
};

// Names: sp_cba_plus, cba_plus, cba, rm_plus, rm and
// {omd,ftrl,oomd,oftrl}_{theory,tuned}.
AlgorithmSpec ParseAlgorithm(const std::string& name);
std::vector<std::string> AlgorithmNames();

struct ExperimentConfig {
  ProblemSpec problem;
  std::vector<AlgorithmSpec> algorithms;
  int iterations = 1000;
  double time_budget_seconds = 0.0;
  int cadence = 0;
  int threads = 1;
  bool wall_timing = true;
  std::string output_dir = "results";
};

// Flat "key = value" lines; '#' starts a comment. Unknown keys and bad
// values raise ConfigError.
ExperimentConfig ParseConfig(std::istream& in);
ExperimentConfig LoadConfig(const std::string& path);
void ValidateConfig(const ExperimentConfig& config);

std::unique_ptr<SaddleProblem> MakeProblem(const ProblemSpec& spec,
                                           std::uint64_t seed);

struct RunSettings {
  int iterations = 1000;
  int cadence = 0;
  double time_budget_seconds = 0.0;
  bool measure_time = true;
};

struct AlgorithmRun {
  std::string algorithm;
  MetricKind metric_kind = MetricKind::kDualityGap;
  // Iterations and times include any tuning probes.
  std::vector<MetricSample> samples;
  double tuned_alpha = 0.0;
  int probe_iterations = 0;
};

// Runs one algorithm. SP-CBA+ and RM+ use alternation with linear
// averaging; the others run simultaneously with uniform averaging.
AlgorithmRun RunAlgorithm(const SaddleProblem& problem,
                          const AlgorithmSpec& algorithm,
                          const RunSettings& settings);

struct TraceRow {
  std::string run_id;
  std::string algorithm;
  std::string seed;
  int iteration = 0;
  double elapsed_seconds = 0.0;
  std::string metric;
  double value = 0.0;
};

inline constexpr const char* kCsvHeader =
    "run_id,algorithm,seed,iteration,elapsed_seconds,metric,value";

// 17 significant digits, '.' decimal separator.
std::string FormatDouble(double value);
void WriteTraceCsv(std::ostream& out, const std::vector<TraceRow>& rows);
std::vector<TraceRow> ReadTraceCsv(std::istream& in);

// Means across runs of the same algorithm at iterations present in every
// run, with run_id "mean:<algorithm>" and seed "all".
std::vector<TraceRow> AggregateRows(const std::vector<TraceRow>& rows);

struct ExperimentResult {
  std::vector<std::string> files;  // per-run CSVs, then aggregate.csv
  std::vector<TraceRow> aggregate;
};

// Writes one CSV per (instance, algorithm) and aggregate.csv under
// config.output_dir, running jobs on up to config.threads workers.
ExperimentResult RunExperiment(const ExperimentConfig& config);

enum class PlotAxis { kIterations, kTime };

// Log-log SVG with one polyline per algorithm. Throws on empty input or on
// mixed metrics.
std::string RenderSvg(const std::vector<TraceRow>& rows, PlotAxis axis);

}  // namespace blackwell

#endif  // BLACKWELL_EXPERIMENT_H_
