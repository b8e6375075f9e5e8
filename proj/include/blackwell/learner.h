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

#ifndef BLACKWELL_LEARNER_H_
#define BLACKWELL_LEARNER_H_

#include <memory>
#include <string>

#include "blackwell/baselines.h"
#include "blackwell/regret.h"

namespace blackwell {

// An online learner minimizing linear losses. Each Choose() is followed by
// one Observe() carrying the decision that was played and its loss.
class Learner {
 public:
  virtual ~Learner() = default;
  virtual int dim() const = 0;
  virtual std::string name() const = 0;
  virtual Vector Choose() = 0;
  virtual void Observe(const Vector& x, const Vector& loss, double weight) = 0;
};

class CbaLearner final : public Learner {
 public:
  CbaLearner(std::shared_ptr<const ConicDomain> domain, CbaVariant variant)
      : state_(MakeCbaState(std::move(domain), variant)) {}

  int dim() const override { return state_.domain->dim(); }
  std::string name() const override {
    return state_.variant == CbaVariant::kCbaPlus ? "cba_plus" : "cba";
  }
  Vector Choose() override { return blackwell::Choose(state_); }
  void Observe(const Vector& x, const Vector& loss, double weight) override {
    // Update a copy so that a rejected observation leaves the state intact.
    state_ = Update(state_, x, loss, weight);
  }
  const CbaState& state() const { return state_; }

 private:
  CbaState state_;
};

// Regret matching (plus) on the simplex with weighted regret increments.
class RegretMatchingLearner final : public Learner {
 public:
  RegretMatchingLearner(int n, bool plus)
      : regrets_(Vector::Zero(n)), plus_(plus) {}

  int dim() const override { return static_cast<int>(regrets_.size()); }
  std::string name() const override { return plus_ ? "rm_plus" : "rm"; }
  Vector Choose() override { return RegretMatchingDecision(regrets_); }
  void Observe(const Vector& x, const Vector& loss, double weight) override;
  const Vector& regrets() const { return regrets_; }

 private:
  Vector regrets_;
  bool plus_;
};

// OMD, FTRL and their optimistic variants. Payoff weights are ignored.
class FirstOrderLearner final : public Learner {
 public:
  FirstOrderLearner(FirstOrderMethod method, ProxDomain domain, StepRule steps)
      : domain_(std::move(domain)),
        steps_(steps),
        state_(MakeBaselineState(method, domain_)) {}

  int dim() const override { return static_cast<int>(domain_.initial.size()); }
  std::string name() const override { return MethodName(state_.method); }
  Vector Choose() override;
  void Observe(const Vector& x, const Vector& loss, double weight) override;
  const BaselineState& state() const { return state_; }

 private:
  ProxDomain domain_;
  StepRule steps_;
  BaselineState state_;
};

}  // namespace blackwell

#endif  // BLACKWELL_LEARNER_H_
