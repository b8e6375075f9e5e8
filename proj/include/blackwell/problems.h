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

#ifndef BLACKWELL_PROBLEMS_H_
#define BLACKWELL_PROBLEMS_H_

#include <cstdint>
#include <istream>
#include <memory>
#include <string>
#include <vector>

#include "blackwell/saddle.h"

namespace blackwell {

enum class Distribution { kUniform01, kNormal01 };

// Accepts "uniform" and "normal".
Distribution ParseDistribution(const std::string& name);
std::string DistributionName(Distribution dist);

// min over x in simplex(n), max over y in simplex(m) of <x, A y>.
class MatrixGame final : public SaddleProblem {
 public:
  explicit MatrixGame(Matrix payoff);

  const Matrix& payoff() const { return payoff_; }

  std::string name() const override { return "matrix_game"; }
  int dim_x() const override { return static_cast<int>(payoff_.rows()); }
  int dim_y() const override { return static_cast<int>(payoff_.cols()); }
  Vector GradX(const Vector& x, const Vector& y) const override;
  Vector GradY(const Vector& x, const Vector& y) const override;
  double Value(const Vector& x, const Vector& y) const override;
  // max_j (A^T x)_j - min_i (A y)_i.
  double Metric(const Vector& x_avg, const Vector& y_avg) const override;
  MetricKind metric_kind() const override { return MetricKind::kDualityGap; }
  std::shared_ptr<const ConicDomain> ConicDomainX() const override;
  std::shared_ptr<const ConicDomain> ConicDomainY() const override;
  ProxDomain ProxDomainX() const override;
  ProxDomain ProxDomainY() const override;
  // Largest column norm and largest row norm of A.
  LipschitzPair Lipschitz() const override;
  bool AffineInX() const override { return true; }

 private:
  Matrix payoff_;
};

MatrixGame RandomMatrixGame(int n, int m, Distribution dist,
                            std::uint64_t seed);

struct DroData {
  Matrix features;  // one row per datapoint
  Vector labels;    // entries in {-1, 1}
  Vector center_x;
  double radius_x = 10.0;
  Vector center_y;
  double radius_y = 0.0;
  double regularizer = 0.1;
  // Generator bookkeeping (empty for loaded datasets).
  Vector planted;
  std::vector<int> flipped;
};

// Fills the default geometry: center_x = e/n, radius_x = 10,
// center_y = e/m, radius_y = 1/(2m), regularizer 0.1.
DroData MakeDroData(Matrix features, Vector labels);

// Distributionally robust logistic regression:
// min over |x - x0| <= eps_x, max over y in simplex with |y - y0| <= eps_y of
// sum_i y_i log(1 + exp(-b_i a_i^T x)) + (mu / 2) |x|^2.
class DroLogistic final : public SaddleProblem {
 public:
  explicit DroLogistic(DroData data);

  const DroData& data() const { return data_; }
  Vector Losses(const Vector& x) const;
  double WorstCaseLoss(const Vector& x) const;

  std::string name() const override { return "dro"; }
  int dim_x() const override { return static_cast<int>(data_.features.cols()); }
  int dim_y() const override { return static_cast<int>(data_.features.rows()); }
  Vector GradX(const Vector& x, const Vector& y) const override;
  Vector GradY(const Vector& x, const Vector& y) const override;
  double Value(const Vector& x, const Vector& y) const override;
  double Metric(const Vector& x_avg, const Vector& y_avg) const override;
  MetricKind metric_kind() const override { return MetricKind::kWorstCaseLoss; }
  std::shared_ptr<const ConicDomain> ConicDomainX() const override;
  std::shared_ptr<const ConicDomain> ConicDomainY() const override;
  ProxDomain ProxDomainX() const override;
  ProxDomain ProxDomainY() const override;
  LipschitzPair Lipschitz() const override;

 private:
  DroData data_;
};

DroData SyntheticDroData(int n, int m, Distribution dist,
                         double flip_fraction, std::uint64_t seed);

// max <c, y> over the simplex intersected with the ball B(center, radius),
// by bisection on the ball multiplier.
Vector MaximizeOverSimplexBall(const Vector& c, const Vector& center,
                               double radius);

struct LabeledData {
  Matrix features;
  Vector labels;
};

// Sparse text format "label index:value ...", 1-based indices. Positive
// labels map to 1, others to -1. `num_features` of 0 infers the width.
LabeledData LoadSparseDataset(std::istream& in, int num_features = 0);
LabeledData LoadSparseDataset(const std::string& path, int num_features = 0);

struct MdpData {
  int num_states = 0;
  int num_actions = 0;
  Matrix transitions;  // row s * num_actions + a holds P(. | s, a)
  Vector rewards;      // indexed by s * num_actions + a
  double discount = 0.95;
  Vector initial;      // distribution over states
};

// min over |v| <= R, max over mu in simplex(n A) of
// (1 - lambda) p0^T v + sum_sa mu_sa (r_sa + lambda P_sa^T v - v_s), with
// R = sqrt(n) r_inf / (1 - lambda).
class MdpSaddle final : public SaddleProblem {
 public:
  explicit MdpSaddle(MdpData data);

  const MdpData& data() const { return data_; }
  double value_radius() const { return radius_; }
  double reward_max() const;

  std::string name() const override { return "mdp"; }
  int dim_x() const override { return data_.num_states; }
  int dim_y() const override {
    return data_.num_states * data_.num_actions;
  }
  Vector GradX(const Vector& v, const Vector& mu) const override;
  Vector GradY(const Vector& v, const Vector& mu) const override;
  double Value(const Vector& v, const Vector& mu) const override;
  double Metric(const Vector& v_avg, const Vector& mu_avg) const override;
  MetricKind metric_kind() const override { return MetricKind::kDualityGap; }
  std::shared_ptr<const ConicDomain> ConicDomainX() const override;
  std::shared_ptr<const ConicDomain> ConicDomainY() const override;
  ProxDomain ProxDomainX() const override;
  ProxDomain ProxDomainY() const override;
  LipschitzPair Lipschitz() const override;
  bool AffineInX() const override { return true; }

 private:
  MdpData data_;
  double radius_;
};

// Random MDP: for each (s, a), ceil(branching * n) successor states drawn
// without replacement share the mass cut by sorted uniform points; rewards
// uniform on [0, reward_max]; uniform initial distribution.
MdpData Garnet(int num_states, int num_actions, double branching,
               double reward_max, std::uint64_t seed, double discount = 0.95);

struct ValueIterationResult {
  Vector values;
  int iterations = 0;
};

// Bellman iteration from zero until successive iterates differ by at most
// `tolerance` in sup-norm.
ValueIterationResult ValueIteration(const MdpData& mdp, double tolerance);

// max_a (r_sa + lambda P_sa^T v) for every state.
Vector BellmanOperator(const MdpData& mdp, const Vector& v);

}  // namespace blackwell

#endif  // BLACKWELL_PROBLEMS_H_
