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

#include "blackwell/regret.h"

#include <algorithm>
#include <cmath>
#include <utility>

namespace blackwell {
namespace {

double IntPower(int t, int exponent) {
  double w = 1.0;
  for (int i = 0; i < exponent; ++i) w *= t;
  return w;
}

void RequireVariant(const CbaState& state, CbaVariant variant) {
  if (state.variant != variant) {
    throw DomainError("CBA operation applied to the wrong variant");
  }
}

void CheckUpdateArgs(const CbaState& state, const Vector& x,
                     const Vector& loss, double weight) {
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw DomainError("payoff weight must be positive and finite");
  }
  RequireFinite(loss, "loss");
  RequireFinite(x, "decision");
  if (loss.size() != state.domain->dim() || x.size() != state.domain->dim()) {
    throw DomainError("update: dimension mismatch with the domain");
  }
}

}  // namespace

double WeightSchedule::PayoffWeight(int t) const {
  return IntPower(t, payoff_exponent);
}

double WeightSchedule::DecisionWeight(int t) const {
  return IntPower(t, decision_exponent);
}

void WeightSchedule::Validate() const {
  if (payoff_exponent < 0 || decision_exponent < payoff_exponent) {
    throw DomainError("weight schedule needs 0 <= p <= q");
  }
}

CbaState MakeCbaState(std::shared_ptr<const ConicDomain> domain,
                      CbaVariant variant, WeightSchedule schedule) {
  if (!domain) throw DomainError("CBA state needs a domain");
  schedule.Validate();
  CbaState state;
  state.u = LiftedPayoff::Zero(domain->internal_dim());
  state.variant = variant;
  state.schedule = schedule;
  state.domain = std::move(domain);
  return state;
}

LiftedPayoff PayoffVector(const ConicDomain& domain, const Vector& x,
                          const Vector& loss) {
  const Vector g = domain.InternalLoss(loss);
  const Vector s = domain.InternalPoint(x);
  return {g.dot(s) / domain.kappa(), -g};
}

LiftedPayoff DecisionAnchor(const CbaState& state) {
  if (state.variant == CbaVariant::kCbaPlus) return state.u;
  return state.domain->Project(state.u);
}

Vector DecisionFromCone(const ConicDomain& domain, const LiftedPayoff& u) {
  if (u.tilde <= kDegeneracyThreshold) return domain.DefaultDecision();
  return domain.ExternalPoint((domain.kappa() / u.tilde) * u.hat);
}

Vector CbaPlusChoose(const CbaState& state) {
  RequireVariant(state, CbaVariant::kCbaPlus);
  return DecisionFromCone(*state.domain, state.u);
}

CbaState CbaPlusUpdate(CbaState state, const Vector& x, const Vector& loss,
                       double weight) {
  RequireVariant(state, CbaVariant::kCbaPlus);
  CheckUpdateArgs(state, x, loss, weight);
  LiftedPayoff v = PayoffVector(*state.domain, x, loss);
  state.u = state.domain->Project(state.u + weight * std::move(v));
  ++state.t;
  return state;
}

Vector CbaChoose(const CbaState& state) {
  RequireVariant(state, CbaVariant::kCba);
  return DecisionFromCone(*state.domain, state.domain->Project(state.u));
}

CbaState CbaUpdate(CbaState state, const Vector& x, const Vector& loss,
                   double weight) {
  RequireVariant(state, CbaVariant::kCba);
  CheckUpdateArgs(state, x, loss, weight);
  state.u += weight * PayoffVector(*state.domain, x, loss);
  ++state.t;
  return state;
}

Vector Choose(const CbaState& state) {
  return state.variant == CbaVariant::kCbaPlus ? CbaPlusChoose(state)
                                               : CbaChoose(state);
}

CbaState Update(CbaState state, const Vector& x, const Vector& loss,
                double weight) {
  if (state.variant == CbaVariant::kCbaPlus) {
    return CbaPlusUpdate(std::move(state), x, loss, weight);
  }
  return CbaUpdate(std::move(state), x, loss, weight);
}

Vector RegretMatchingDecision(const Vector& regrets) {
  const Vector positive = regrets.cwiseMax(0.0);
  const double total = positive.sum();
  if (total <= 0.0) {
    return Vector::Constant(regrets.size(), 1.0 / regrets.size());
  }
  return positive / total;
}

RegretMatchingStep RmStep(const Vector& regrets, const Vector& x,
                          const Vector& loss, double weight) {
  Vector next = regrets;
  next.array() += weight * loss.dot(x);
  next -= weight * loss;
  Vector decision = RegretMatchingDecision(next);
  return {std::move(next), std::move(decision)};
}

RegretMatchingStep RmPlusStep(const Vector& regrets, const Vector& x,
                              const Vector& loss, double weight) {
  RegretMatchingStep step = RmStep(regrets, x, loss, weight);
  step.regrets = step.regrets.cwiseMax(0.0);
  return step;
}

void RegretLedger::Record(const Vector& x, const Vector& loss, double weight) {
  if (x.size() != loss_sum_.size() || loss.size() != loss_sum_.size()) {
    throw DomainError("regret ledger: dimension mismatch");
  }
  weighted_loss_ += weight * loss.dot(x);
  loss_sum_ += weight * loss;
  max_loss_norm_ = std::max(max_loss_norm_, loss.norm());
  ++length_;
}

double RegretLedger::Regret(const ConicDomain& domain) const {
  return weighted_loss_ - loss_sum_.dot(domain.LinearMin(loss_sum_));
}

double WeightedRegret(std::span<const Vector> decisions,
                      std::span<const Vector> losses,
                      std::span<const double> weights,
                      const ConicDomain& domain) {
  if (decisions.size() != losses.size() || losses.size() != weights.size()) {
    throw DomainError("weighted regret: sequence lengths differ");
  }
  RegretLedger ledger(domain.dim());
  for (std::size_t t = 0; t < decisions.size(); ++t) {
    ledger.Record(decisions[t], losses[t], weights[t]);
  }
  return ledger.Regret(domain);
}

}  // namespace blackwell
