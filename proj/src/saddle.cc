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

#include "blackwell/saddle.h"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace blackwell {
namespace {

using Clock = std::chrono::steady_clock;

class SolverClock {
 public:
  explicit SolverClock(bool enabled) : enabled_(enabled) {}
  void Resume() {
    if (enabled_) start_ = Clock::now();
  }
  void Pause() {
    if (enabled_) {
      total_ += std::chrono::duration<double>(Clock::now() - start_).count();
    }
  }
  double seconds() const { return total_; }

 private:
  bool enabled_;
  Clock::time_point start_;
  double total_ = 0.0;
};

[[noreturn]] void RethrowAt(int t) {
  try {
    throw;
  } catch (const DomainError& e) {
    throw DomainError("iteration " + std::to_string(t) + ": " + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error("iteration " + std::to_string(t) + ": " +
                             e.what());
  }
}

void Validate(const SaddleProblem& problem, const Learner& x_learner,
              const Learner& y_learner, const RunOptions& options) {
  if (options.iterations < 1) throw DomainError("run: T must be >= 1");
  if (options.metric_every < 0) throw DomainError("run: negative cadence");
  options.schedule.Validate();
  if (x_learner.dim() != problem.dim_x() ||
      y_learner.dim() != problem.dim_y()) {
    throw DomainError("run: learner dimensions do not match the problem");
  }
}

int Cadence(const RunOptions& options) {
  if (options.metric_every > 0) return options.metric_every;
  return (options.iterations + 199) / 200;
}

// Running weighted sums of the two players' decisions.
struct Averager {
  Vector x_sum;
  Vector y_sum;
  double weight_sum = 0.0;

  Averager(int nx, int ny) : x_sum(Vector::Zero(nx)), y_sum(Vector::Zero(ny)) {}
  void Add(double weight, const Vector& x, const Vector& y) {
    x_sum += weight * x;
    y_sum += weight * y;
    weight_sum += weight;
  }
  Vector x() const { return x_sum / weight_sum; }
  Vector y() const { return y_sum / weight_sum; }
};

void Finish(const SaddleProblem& problem, const Averager& averages,
            const SolverClock& clock, int t, RunTrace& trace) {
  trace.iterations = t;
  trace.elapsed_seconds = clock.seconds();
  trace.x_average = averages.x();
  trace.y_average = averages.y();
  trace.decision_weight_sum = averages.weight_sum;
  if (trace.samples.empty() || trace.samples.back().iteration != t) {
    trace.samples.push_back(
        {t, clock.seconds(), problem.Metric(trace.x_average, trace.y_average)});
  }
}

bool OutOfTime(const RunOptions& options, const SolverClock& clock) {
  return options.time_budget_seconds > 0.0 &&
         clock.seconds() >= options.time_budget_seconds;
}

}  // namespace

std::string MetricLabel(MetricKind kind) {
  return kind == MetricKind::kDualityGap ? "duality_gap" : "worst_case_loss";
}

bool IsMetricIteration(int t, int horizon, int every) {
  if (t == horizon || (every > 0 && t % every == 0)) return true;
  long long decade = 1;
  while (decade <= t) {
    if (t == decade || t == 2 * decade || t == 5 * decade) return true;
    decade *= 10;
  }
  return false;
}

RunTrace RunSimultaneous(const SaddleProblem& problem, Learner& x_learner,
                         Learner& y_learner, const RunOptions& options) {
  Validate(problem, x_learner, y_learner, options);
  const int horizon = options.iterations;
  const int every = Cadence(options);
  RunTrace trace;
  trace.protocol = Protocol::kSimultaneous;
  trace.metric_kind = problem.metric_kind();
  Averager averages(problem.dim_x(), problem.dim_y());
  SolverClock clock(options.measure_time);
  int t = 1;
  for (; t <= horizon; ++t) {
    clock.Resume();
    const double payoff_weight = options.schedule.PayoffWeight(t);
    const double decision_weight = options.schedule.DecisionWeight(t);
    Vector x, y, fx, gy;
    try {
      x = x_learner.Choose();
      y = y_learner.Choose();
      fx = problem.GradX(x, y);
      gy = problem.GradY(x, y);
      x_learner.Observe(x, fx, payoff_weight);
      y_learner.Observe(y, -gy, payoff_weight);
    } catch (...) {
      RethrowAt(t);
    }
    averages.Add(decision_weight, x, y);
    clock.Pause();

    if (options.record_iterates) {
      trace.records.push_back({t, std::move(x), std::move(y), payoff_weight,
                               decision_weight, std::move(fx), std::move(gy),
                               0.0, clock.seconds()});
    }
    if (options.on_iteration) options.on_iteration(t, x_learner, y_learner);
    if (IsMetricIteration(t, horizon, every)) {
      trace.samples.push_back(
          {t, clock.seconds(), problem.Metric(averages.x(), averages.y())});
    }
    if (OutOfTime(options, clock)) break;
  }
  Finish(problem, averages, clock, std::min(t, horizon), trace);
  return trace;
}

RunTrace RunAlternating(const SaddleProblem& problem, Learner& x_learner,
                        Learner& y_learner, const RunOptions& options) {
  Validate(problem, x_learner, y_learner, options);
  const int horizon = options.iterations;
  const int every = Cadence(options);
  RunTrace trace;
  trace.protocol = Protocol::kAlternating;
  trace.metric_kind = problem.metric_kind();
  Averager averages(problem.dim_x(), problem.dim_y());
  SolverClock clock(options.measure_time);

  clock.Resume();
  Vector y_prev;
  Vector x;
  try {
    y_prev = y_learner.Choose();
    x = x_learner.Choose();
  } catch (...) {
    RethrowAt(0);
  }
  clock.Pause();

  int t = 1;
  for (; t <= horizon; ++t) {
    clock.Resume();
    const double payoff_weight = options.schedule.PayoffWeight(t);
    const double decision_weight = options.schedule.DecisionWeight(t + 1);
    Vector gy, y, fx, x_next;
    try {
      gy = problem.GradY(x, y_prev);
      y_learner.Observe(y_prev, -gy, payoff_weight);
      y = y_learner.Choose();
      fx = problem.GradX(x, y);
      x_learner.Observe(x, fx, payoff_weight);
      x_next = x_learner.Choose();
    } catch (...) {
      RethrowAt(t);
    }
    averages.Add(decision_weight, x_next, y);
    clock.Pause();

    if (options.record_iterates) {
      if (!trace.records.empty()) trace.records.back().grad_y = gy;
      const double cross = problem.Value(x_next, y) - problem.Value(x, y);
      trace.records.push_back({t, x, y, payoff_weight, decision_weight,
                               std::move(fx), Vector(), cross,
                               clock.seconds()});
    }
    if (options.on_iteration) options.on_iteration(t, x_learner, y_learner);
    if (IsMetricIteration(t, horizon, every)) {
      trace.samples.push_back(
          {t, clock.seconds(), problem.Metric(averages.x(), averages.y())});
    }
    x = std::move(x_next);
    y_prev = std::move(y);
    if (OutOfTime(options, clock)) break;
  }
  const int done = std::min(t, horizon);
  if (options.record_iterates) {
    trace.records.back().grad_y = problem.GradY(x, y_prev);
  }
  trace.final_x = x;
  Finish(problem, averages, clock, done, trace);
  return trace;
}

RunTrace SpCbaPlus(const SaddleProblem& problem, RunOptions options) {
  options.schedule = WeightSchedule::LinearAveraging();
  CbaLearner x_learner(problem.ConicDomainX(), CbaVariant::kCbaPlus);
  CbaLearner y_learner(problem.ConicDomainY(), CbaVariant::kCbaPlus);
  return RunAlternating(problem, x_learner, y_learner, options);
}

Vector WeightedAverage(std::span<const Vector> points,
                       std::span<const double> weights) {
  if (points.size() != weights.size()) {
    throw DomainError("weighted average: lengths differ");
  }
  if (points.empty()) throw DomainError("weighted average of nothing");
  Vector sum = Vector::Zero(points[0].size());
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(weights[i] > 0.0)) throw DomainError("weights must be positive");
    sum += weights[i] * points[i];
    total += weights[i];
  }
  return sum / total;
}

double DualityGap(const SaddleProblem& problem, const Vector& x_avg,
                  const Vector& y_avg) {
  return problem.Metric(x_avg, y_avg);
}

TuningResult TuneStepSize(const SaddleProblem& problem,
                          FirstOrderMethod method, int probe_iterations,
                          const std::vector<double>& grid, bool measure_time) {
  if (grid.empty()) throw DomainError("tuning grid is empty");
  TuningResult result;
  double best = std::numeric_limits<double>::infinity();
  for (double alpha : grid) {
    FirstOrderLearner x_learner(method, problem.ProxDomainX(),
                                TunedStepRule(method, alpha));
    FirstOrderLearner y_learner(method, problem.ProxDomainY(),
                                TunedStepRule(method, alpha));
    RunOptions options;
    options.iterations = probe_iterations;
    options.metric_every = probe_iterations;
    options.measure_time = measure_time;
    const RunTrace trace = RunSimultaneous(problem, x_learner, y_learner, options);
    const double metric = trace.samples.back().value;
    result.probe_metrics.push_back(metric);
    result.probe_iterations += trace.iterations;
    result.probe_seconds += trace.elapsed_seconds;
    if (metric < best) {
      best = metric;
      result.alpha = alpha;
    }
  }
  if (!std::isfinite(best)) result.alpha = grid.front();
  return result;
}

}  // namespace blackwell
