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

#ifndef BLACKWELL_REGRET_H_
#define BLACKWELL_REGRET_H_

#include <memory>
#include <span>
#include <string>

#include "blackwell/conic_domain.h"
#include "blackwell/linalg.h"

namespace blackwell {

// Below this cone-axis value an aggregate payoff counts as the zero element
// and the learner plays the domain default.
inline constexpr double kDegeneracyThreshold = 1e-12;

// Payoff weights omega_t = t^p and decision weights theta_t = t^q.
struct WeightSchedule {
  int payoff_exponent = 0;
  int decision_exponent = 0;

  static WeightSchedule Uniform() { return {0, 0}; }
  // Uniform payoff weights with linear averaging of the decisions.
  static WeightSchedule LinearAveraging() { return {0, 1}; }

  double PayoffWeight(int t) const;
  double DecisionWeight(int t) const;
  // Throws DomainError unless 0 <= p <= q.
  void Validate() const;
};

enum class CbaVariant { kCba, kCbaPlus };

struct CbaState {
  LiftedPayoff u;
  int t = 0;
  CbaVariant variant = CbaVariant::kCbaPlus;
  std::shared_ptr<const ConicDomain> domain;
  WeightSchedule schedule;
};

// Fresh learner state with u = 0, so the first decision is the default.
CbaState MakeCbaState(std::shared_ptr<const ConicDomain> domain,
                      CbaVariant variant,
                      WeightSchedule schedule = WeightSchedule::Uniform());

// v = (<f, x> / kappa, -f) in internal coordinates.
LiftedPayoff PayoffVector(const ConicDomain& domain, const Vector& x,
                          const Vector& loss);

// The cone element a CBA learner reads its decision from: u itself for
// CBA+, its projection for CBA.
LiftedPayoff DecisionAnchor(const CbaState& state);

// (kappa / tilde) hat mapped to X, or the default on degenerate input.
Vector DecisionFromCone(const ConicDomain& domain, const LiftedPayoff& u);

Vector CbaPlusChoose(const CbaState& state);
CbaState CbaPlusUpdate(CbaState state, const Vector& x, const Vector& loss,
                       double weight);
Vector CbaChoose(const CbaState& state);
CbaState CbaUpdate(CbaState state, const Vector& x, const Vector& loss,
                   double weight);
// Dispatch on state.variant.
Vector Choose(const CbaState& state);
CbaState Update(CbaState state, const Vector& x, const Vector& loss,
                double weight);

// Regret matching on the simplex. `regrets` accumulates <f, x> e - f.
struct RegretMatchingStep {
  Vector regrets;
  Vector decision;
};
Vector RegretMatchingDecision(const Vector& regrets);
RegretMatchingStep RmStep(const Vector& regrets, const Vector& x,
                          const Vector& loss, double weight = 1.0);
RegretMatchingStep RmPlusStep(const Vector& regrets, const Vector& x,
                              const Vector& loss, double weight = 1.0);

// Running sums for weighted regret sum_t theta_t <f_t, x_t> -
// min_x sum_t theta_t <f_t, x>.
class RegretLedger {
 public:
  explicit RegretLedger(int n) : loss_sum_(Vector::Zero(n)) {}

  void Record(const Vector& x, const Vector& loss, double weight);
  double Regret(const ConicDomain& domain) const;

  double weighted_loss() const { return weighted_loss_; }
  const Vector& weighted_loss_vector() const { return loss_sum_; }
  double max_loss_norm() const { return max_loss_norm_; }
  int length() const { return length_; }

 private:
  double weighted_loss_ = 0.0;
  Vector loss_sum_;
  double max_loss_norm_ = 0.0;
  int length_ = 0;
};

double WeightedRegret(std::span<const Vector> decisions,
                      std::span<const Vector> losses,
                      std::span<const double> weights,
                      const ConicDomain& domain);

}  // namespace blackwell

#endif  // BLACKWELL_REGRET_H_
