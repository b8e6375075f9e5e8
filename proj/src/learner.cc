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

#include "blackwell/learner.h"

namespace blackwell {

void RegretMatchingLearner::Observe(const Vector& x, const Vector& loss,
                                    double weight) {
  RequireFinite(loss, "loss");
  RegretMatchingStep step = plus_ ? RmPlusStep(regrets_, x, loss, weight)
                                  : RmStep(regrets_, x, loss, weight);
  regrets_ = std::move(step.regrets);
}

Vector FirstOrderLearner::Choose() {
  return BaselineDecision(state_, domain_, steps_.At(state_.t + 1));
}

void FirstOrderLearner::Observe(const Vector& /*x*/, const Vector& loss,
                                double /*weight*/) {
  const double eta = steps_.At(state_.t + 1);
  state_ = BaselineStep(state_, domain_, loss, eta);
}

}  // namespace blackwell
