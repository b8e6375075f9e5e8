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

#ifndef BLACKWELL_SADDLE_H_
#define BLACKWELL_SADDLE_H_

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "blackwell/baselines.h"
#include "blackwell/conic_domain.h"
#include "blackwell/learner.h"
#include "blackwell/regret.h"

namespace blackwell {

enum class MetricKind { kDualityGap, kWorstCaseLoss };

// "duality_gap" or "worst_case_loss".
std::string MetricLabel(MetricKind kind);

// min over x, max over y of a convex-concave F. The x player minimizes; the
// y player maximizes and sees -grad_y F as its loss.
class SaddleProblem {
 public:
  virtual ~SaddleProblem() = default;

  virtual std::string name() const = 0;
  virtual int dim_x() const = 0;
  virtual int dim_y() const = 0;
  virtual Vector GradX(const Vector& x, const Vector& y) const = 0;
  virtual Vector GradY(const Vector& x, const Vector& y) const = 0;
  virtual double Value(const Vector& x, const Vector& y) const = 0;
  // Duality gap, or the worst-case loss max_y F(x_avg, y).
  virtual double Metric(const Vector& x_avg, const Vector& y_avg) const = 0;
  virtual MetricKind metric_kind() const = 0;

  virtual std::shared_ptr<const ConicDomain> ConicDomainX() const = 0;
  virtual std::shared_ptr<const ConicDomain> ConicDomainY() const = 0;
  virtual ProxDomain ProxDomainX() const = 0;
  virtual ProxDomain ProxDomainY() const = 0;
  // Bounds on the gradient norms, used by the theoretical step sizes.
  virtual LipschitzPair Lipschitz() const = 0;
  // True when F is affine in x.
  virtual bool AffineInX() const { return false; }
};

enum class Protocol { kSimultaneous, kAlternating };

using IterationCallback =
    std::function<void(int t, const Learner& x_learner,
                       const Learner& y_learner)>;

struct RunOptions {
  int iterations = 1000;
  WeightSchedule schedule = WeightSchedule::Uniform();
  // Metric every this many iterations (0: ceil(T / 200)), plus at
  // t in {1, 2, 5, 10, 20, 50, ...} and at the last iteration.
  int metric_every = 0;
  bool record_iterates = false;
  // Stop once the solver time reaches this many seconds (0: no budget).
  double time_budget_seconds = 0.0;
  // When false, elapsed times are reported as zero.
  bool measure_time = true;
  IterationCallback on_iteration;
};

// One iteration. Under alternation, grad_y is taken at (x_{t+1}, y_t),
// decision_weight is theta_{t+1} and cross_term is
// F(x_{t+1}, y_t) - F(x_t, y_t); under the simultaneous protocol grad_y is
// taken at (x_t, y_t) and decision_weight is theta_t.
struct IterationRecord {
  int t = 0;
  Vector x;
  Vector y;
  double payoff_weight = 0.0;
  double decision_weight = 0.0;
  Vector grad_x;
  Vector grad_y;
  double cross_term = 0.0;
  double elapsed_seconds = 0.0;
};

struct MetricSample {
  int iteration = 0;
  double elapsed_seconds = 0.0;
  double value = 0.0;
};

struct RunTrace {
  Protocol protocol = Protocol::kSimultaneous;
  MetricKind metric_kind = MetricKind::kDualityGap;
  std::vector<IterationRecord> records;
  std::vector<MetricSample> samples;
  Vector x_average;
  Vector y_average;
  // x_{T+1} under alternation.
  Vector final_x;
  double decision_weight_sum = 0.0;
  int iterations = 0;
  double elapsed_seconds = 0.0;
};

bool IsMetricIteration(int t, int horizon, int every);

RunTrace RunSimultaneous(const SaddleProblem& problem, Learner& x_learner,
                         Learner& y_learner, const RunOptions& options);
RunTrace RunAlternating(const SaddleProblem& problem, Learner& x_learner,
                        Learner& y_learner, const RunOptions& options);

// CBA+ for both players, alternation, uniform payoff weights and linear
// decision weights.
RunTrace SpCbaPlus(const SaddleProblem& problem, RunOptions options);

Vector WeightedAverage(std::span<const Vector> points,
                       std::span<const double> weights);

double DualityGap(const SaddleProblem& problem, const Vector& x_avg,
                  const Vector& y_avg);

inline const std::vector<double>& DefaultTuningGrid() {
  static const std::vector<double> grid = {0.01, 0.1, 1.0, 10.0, 100.0};
  return grid;
}

struct TuningResult {
  double alpha = 0.0;
  int probe_iterations = 0;
  double probe_seconds = 0.0;
  std::vector<double> probe_metrics;
};

// Runs `probe_iterations` simultaneous iterations per grid multiplier and
// returns the multiplier with the smallest metric (first on ties).
TuningResult TuneStepSize(const SaddleProblem& problem,
                          FirstOrderMethod method, int probe_iterations = 10,
                          const std::vector<double>& grid = DefaultTuningGrid(),
                          bool measure_time = true);

}  // namespace blackwell

#endif  // BLACKWELL_SADDLE_H_
