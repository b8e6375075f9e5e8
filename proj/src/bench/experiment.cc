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

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <thread>

#include "blackwell/experiment.h"

namespace blackwell {
namespace {

constexpr FirstOrderMethod kMethods[] = {
    FirstOrderMethod::kOmd, FirstOrderMethod::kFtrl, FirstOrderMethod::kOomd,
    FirstOrderMethod::kOftrl};

constexpr int kTuningProbeIterations = 10;

RunOptions MakeOptions(const RunSettings& settings, WeightSchedule schedule) {
  RunOptions options;
  options.iterations = settings.iterations;
  options.schedule = schedule;
  options.metric_every = settings.cadence;
  options.time_budget_seconds = settings.time_budget_seconds;
  options.measure_time = settings.measure_time;
  return options;
}

RunTrace RunFirstOrder(const SaddleProblem& problem, FirstOrderMethod method,
                       StepRule x_steps, StepRule y_steps,
                       const RunOptions& options) {
  FirstOrderLearner x_learner(method, problem.ProxDomainX(), x_steps);
  FirstOrderLearner y_learner(method, problem.ProxDomainY(), y_steps);
  return RunSimultaneous(problem, x_learner, y_learner, options);
}

std::string RunId(const ExperimentConfig& config, std::uint64_t seed,
                  const std::string& algorithm) {
  return ProblemFamilyName(config.problem.family) + "_s" +
         std::to_string(seed) + "_" + algorithm;
}

}  // namespace

std::string AlgorithmSpec::Name() const {
  switch (family) {
    case AlgorithmFamily::kSpCbaPlus:
      return "sp_cba_plus";
    case AlgorithmFamily::kCbaPlus:
      return "cba_plus";
    case AlgorithmFamily::kCba:
      return "cba";
    case AlgorithmFamily::kRmPlus:
      return "rm_plus";
    case AlgorithmFamily::kRm:
      return "rm";
    case AlgorithmFamily::kFirstOrder:
      return MethodName(method) + (tuned ? "_tuned" : "_theory");
  }
  return "unknown";
}

std::vector<std::string> AlgorithmNames() {
  std::vector<std::string> names = {"sp_cba_plus", "cba_plus", "cba",
                                    "rm_plus", "rm"};
  for (FirstOrderMethod method : kMethods) {
    names.push_back(MethodName(method) + "_theory");
    names.push_back(MethodName(method) + "_tuned");
  }
  return names;
}

AlgorithmSpec ParseAlgorithm(const std::string& name) {
  AlgorithmSpec spec;
  if (name == "sp_cba_plus") {
    spec.family = AlgorithmFamily::kSpCbaPlus;
  } else if (name == "cba_plus") {
    spec.family = AlgorithmFamily::kCbaPlus;
  } else if (name == "cba") {
    spec.family = AlgorithmFamily::kCba;
  } else if (name == "rm_plus") {
    spec.family = AlgorithmFamily::kRmPlus;
  } else if (name == "rm") {
    spec.family = AlgorithmFamily::kRm;
  } else {
    spec.family = AlgorithmFamily::kFirstOrder;
    for (FirstOrderMethod method : kMethods) {
      const std::string base = MethodName(method);
      if (name == base + "_theory" || name == base + "_tuned") {
        spec.method = method;
        spec.tuned = name == base + "_tuned";
        return spec;
      }
    }
    throw DomainError("unknown algorithm '" + name + "'");
  }
  return spec;
}

std::unique_ptr<SaddleProblem> MakeProblem(const ProblemSpec& spec,
                                           std::uint64_t seed) {
  switch (spec.family) {
    case ProblemFamily::kMatrixGame:
      return std::make_unique<MatrixGame>(
          RandomMatrixGame(spec.n, spec.m, spec.distribution, seed));
    case ProblemFamily::kDro: {
      if (spec.dataset.empty()) {
        return std::make_unique<DroLogistic>(SyntheticDroData(
            spec.n, spec.m, spec.distribution, spec.flip_fraction, seed));
      }
      LabeledData data = LoadSparseDataset(spec.dataset);
      return std::make_unique<DroLogistic>(
          MakeDroData(std::move(data.features), std::move(data.labels)));
    }
    case ProblemFamily::kMdp:
      return std::make_unique<MdpSaddle>(Garnet(spec.n, spec.actions,
                                                spec.branching,
                                                spec.reward_max, seed,
                                                spec.discount));
  }
  throw DomainError("unknown problem family");
}

AlgorithmRun RunAlgorithm(const SaddleProblem& problem,
                          const AlgorithmSpec& algorithm,
                          const RunSettings& settings) {
  AlgorithmRun run;
  run.algorithm = algorithm.Name();
  run.metric_kind = problem.metric_kind();
  const RunOptions uniform = MakeOptions(settings, WeightSchedule::Uniform());
  const RunOptions linear =
      MakeOptions(settings, WeightSchedule::LinearAveraging());
  RunTrace trace;
  switch (algorithm.family) {
    case AlgorithmFamily::kSpCbaPlus:
      trace = SpCbaPlus(problem, linear);
      break;
    case AlgorithmFamily::kCbaPlus:
    case AlgorithmFamily::kCba: {
      const CbaVariant variant = algorithm.family == AlgorithmFamily::kCbaPlus
                                     ? CbaVariant::kCbaPlus
                                     : CbaVariant::kCba;
      CbaLearner x_learner(problem.ConicDomainX(), variant);
      CbaLearner y_learner(problem.ConicDomainY(), variant);
      trace = RunSimultaneous(problem, x_learner, y_learner, uniform);
      break;
    }
    case AlgorithmFamily::kRmPlus:
    case AlgorithmFamily::kRm: {
      if (problem.ConicDomainX()->name() != "simplex" ||
          problem.ConicDomainY()->name() != "simplex") {
        throw DomainError(run.algorithm + " needs simplex domains");
      }
      const bool plus = algorithm.family == AlgorithmFamily::kRmPlus;
      RegretMatchingLearner x_learner(problem.dim_x(), plus);
      RegretMatchingLearner y_learner(problem.dim_y(), plus);
      trace = plus ? RunAlternating(problem, x_learner, y_learner, linear)
                   : RunSimultaneous(problem, x_learner, y_learner, uniform);
      break;
    }
    case AlgorithmFamily::kFirstOrder: {
      if (!algorithm.tuned) {
        const LipschitzPair lipschitz = problem.Lipschitz();
        const StepRule x_steps = StepRule::Constant(TheoreticalStepSize(
            algorithm.method, problem.ProxDomainX().diameter, lipschitz.x,
            settings.iterations));
        const StepRule y_steps = StepRule::Constant(TheoreticalStepSize(
            algorithm.method, problem.ProxDomainY().diameter, lipschitz.y,
            settings.iterations));
        trace = RunFirstOrder(problem, algorithm.method, x_steps, y_steps,
                              uniform);
        break;
      }
      const TuningResult tuning =
          TuneStepSize(problem, algorithm.method, kTuningProbeIterations,
                       DefaultTuningGrid(), settings.measure_time);
      run.tuned_alpha = tuning.alpha;
      run.probe_iterations = tuning.probe_iterations;
      RunOptions options = uniform;
      if (options.time_budget_seconds > 0.0) {
        options.time_budget_seconds = std::max(
            1e-9, options.time_budget_seconds - tuning.probe_seconds);
      }
      const StepRule steps = TunedStepRule(algorithm.method, tuning.alpha);
      trace = RunFirstOrder(problem, algorithm.method, steps, steps, options);
      for (MetricSample& sample : trace.samples) {
        sample.iteration += tuning.probe_iterations;
        sample.elapsed_seconds += tuning.probe_seconds;
      }
      break;
    }
  }
  run.samples = std::move(trace.samples);
  return run;
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  ValidateConfig(config);
  const ProblemSpec& spec = config.problem;
  std::vector<std::unique_ptr<SaddleProblem>> problems;
  for (std::uint64_t seed : spec.seeds) {
    problems.push_back(MakeProblem(spec, seed));
  }
  const std::size_t num_algorithms = config.algorithms.size();
  const std::size_t num_jobs = problems.size() * num_algorithms;
  std::vector<AlgorithmRun> runs(num_jobs);
  std::vector<std::exception_ptr> errors(num_jobs);

  RunSettings settings;
  settings.iterations = config.iterations;
  settings.cadence = config.cadence;
  settings.time_budget_seconds = config.time_budget_seconds;
  settings.measure_time = config.wall_timing;

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t job = next++; job < num_jobs; job = next++) {
      try {
        runs[job] = RunAlgorithm(*problems[job / num_algorithms],
                                 config.algorithms[job % num_algorithms],
                                 settings);
      } catch (...) {
        errors[job] = std::current_exception();
      }
    }
  };
  const int workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(config.threads), num_jobs));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  for (const std::exception_ptr& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  ExperimentResult result;
  std::vector<TraceRow> all_rows;
  for (std::size_t job = 0; job < num_jobs; ++job) {
    const std::uint64_t seed = spec.seeds[job / num_algorithms];
    const AlgorithmRun& run = runs[job];
    const std::string run_id = RunId(config, seed, run.algorithm);
    std::vector<TraceRow> rows;
    for (const MetricSample& sample : run.samples) {
      rows.push_back({run_id, run.algorithm, std::to_string(seed),
                      sample.iteration, sample.elapsed_seconds,
                      MetricLabel(run.metric_kind), sample.value});
    }
    const std::filesystem::path file = dir / (run_id + ".csv");
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot write '" + file.string() + "'");
    WriteTraceCsv(out, rows);
    result.files.push_back(file.string());
    all_rows.insert(all_rows.end(), rows.begin(), rows.end());
  }
  result.aggregate = AggregateRows(all_rows);
  const std::filesystem::path aggregate = dir / "aggregate.csv";
  std::ofstream out(aggregate, std::ios::binary);
  if (!out) throw IoError("cannot write '" + aggregate.string() + "'");
  WriteTraceCsv(out, result.aggregate);
  result.files.push_back(aggregate.string());
  return result;
}

}  // namespace blackwell
