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

#ifndef BLACKWELL_BASELINES_H_
#define BLACKWELL_BASELINES_H_

#include <functional>
#include <string>

#include "blackwell/linalg.h"

namespace blackwell {

inline constexpr double kDefaultDualTolerance = 1e-6;

// A decision set accessed through its proximal map
// (anchor, c, eta) -> argmin_x <c, x> + |x - anchor|^2 / (2 eta).
struct ProxDomain {
  using ProxFn =
      std::function<Vector(const Vector& anchor, const Vector& c, double eta)>;
  using ContainsFn = std::function<bool(const Vector& x, double slack)>;

  ProxFn prox;
  double diameter = 0.0;
  Vector initial;
  ContainsFn contains;
  std::string name;

  static ProxDomain Simplex(int n);
  static ProxDomain Ball(Vector center, double radius);
  // Simplex intersected with the ball of the given center and radius.
  static ProxDomain SimplexBall(Vector center, double radius,
                                double tolerance = kDefaultDualTolerance);
};

Vector ProxSimplex(const Vector& anchor, const Vector& c, double eta);
Vector ProxBall(const Vector& anchor, const Vector& c, double eta,
                const Vector& center, double radius);

// Minimizer over simplex and ball of <c, y> + |y - anchor|^2 / (2 eta),
// computed by maximizing the concave dual in the ball multiplier.
Vector ProxSimplexBall(const Vector& anchor, const Vector& c, double eta,
                       const Vector& center, double radius,
                       double tolerance = kDefaultDualTolerance);
// The dual function of ProxSimplexBall at multiplier mu >= 0.
double ProxSimplexBallDual(const Vector& anchor, const Vector& c, double eta,
                           const Vector& center, double radius, double mu);

enum class FirstOrderMethod { kOmd, kFtrl, kOomd, kOftrl };

std::string MethodName(FirstOrderMethod method);
bool IsOptimistic(FirstOrderMethod method);

// eta_t for iteration t >= 1.
struct StepRule {
  enum class Kind { kConstant, kInverseSqrt };
  Kind kind = Kind::kConstant;
  double scale = 1.0;

  static StepRule Constant(double eta) { return {Kind::kConstant, eta}; }
  // alpha / sqrt(t + 1).
  static StepRule InverseSqrt(double alpha) {
    return {Kind::kInverseSqrt, alpha};
  }
  double At(int t) const;
};

// Theoretical step: sqrt(2) Omega / (L sqrt(T)) for OMD and FTRL,
// 1 / (sqrt(8) L) for optimistic OMD, 1 / (2 L) for optimistic FTRL.
double TheoreticalStepSize(FirstOrderMethod method, double diameter,
                           double lipschitz, int horizon);

// The tuned schedule for a grid multiplier: alpha / sqrt(t + 1) for OMD and
// FTRL, constant alpha for the optimistic variants.
StepRule TunedStepRule(FirstOrderMethod method, double alpha);

struct BaselineState {
  FirstOrderMethod method = FirstOrderMethod::kOmd;
  Vector point;       // x_t: the iterate (the played decision for OMD/FTRL)
  Vector loss_sum;    // sum of observed losses (FTRL family)
  Vector prediction;  // m: last observed loss (optimistic family)
  int t = 0;
};

BaselineState MakeBaselineState(FirstOrderMethod method,
                                const ProxDomain& domain);

// x <- prox(x, f, eta).
BaselineState OmdStep(BaselineState state, const ProxDomain& domain,
                      const Vector& loss, double eta);
// x <- argmin <sum f, x> + |x|^2 / eta, i.e. prox(0, sum f, eta / 2).
BaselineState FtrlStep(BaselineState state, const ProxDomain& domain,
                       const Vector& loss, double eta);
// Internal point x <- prox(x, f, eta); the prediction becomes f.
BaselineState OomdStep(BaselineState state, const ProxDomain& domain,
                       const Vector& loss, double eta);
// Loss sum += f; the prediction becomes f.
BaselineState OftrlStep(BaselineState state, const ProxDomain& domain,
                        const Vector& loss, double eta);
// The decision played next: z = prox(x, m, eta) for optimistic OMD,
// argmin <sum f + m, x> + |x|^2 / eta for optimistic FTRL, the iterate
// otherwise. Before any observation this is the domain's initial point.
Vector BaselineDecision(const BaselineState& state, const ProxDomain& domain,
                        double eta);
BaselineState BaselineStep(BaselineState state, const ProxDomain& domain,
                           const Vector& loss, double eta);

struct LipschitzPair {
  double x;
  double y;
};

// Constants for distributionally robust logistic regression with features
// as rows of `features`.
LipschitzPair DroLipschitzBounds(const Matrix& features, const Vector& labels,
                                 double regularizer, double radius_x,
                                 const Vector& center_x);

// Constants for the MDP saddle formulation: (value player, occupancy player).
LipschitzPair MdpLipschitzBounds(const Vector& rewards, double discount,
                                 int num_states, int num_actions);

}  // namespace blackwell

#endif  // BLACKWELL_BASELINES_H_
