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

#include <utility>

#include "blackwell/problems.h"
#include "blackwell/rng.h"

namespace blackwell {

Distribution ParseDistribution(const std::string& name) {
  if (name == "uniform") return Distribution::kUniform01;
  if (name == "normal") return Distribution::kNormal01;
  throw DomainError("unknown distribution '" + name +
                    "' (expected uniform or normal)");
}

std::string DistributionName(Distribution dist) {
  return dist == Distribution::kUniform01 ? "uniform" : "normal";
}

MatrixGame::MatrixGame(Matrix payoff) : payoff_(std::move(payoff)) {
  if (payoff_.rows() < 1 || payoff_.cols() < 1) {
    throw DomainError("matrix game: empty payoff matrix");
  }
  if (!payoff_.allFinite()) throw DomainError("matrix game: non-finite entry");
}

Vector MatrixGame::GradX(const Vector& /*x*/, const Vector& y) const {
  return payoff_ * y;
}

Vector MatrixGame::GradY(const Vector& x, const Vector& /*y*/) const {
  return payoff_.transpose() * x;
}

double MatrixGame::Value(const Vector& x, const Vector& y) const {
  return x.dot(payoff_ * y);
}

double MatrixGame::Metric(const Vector& x_avg, const Vector& y_avg) const {
  return (payoff_.transpose() * x_avg).maxCoeff() -
         (payoff_ * y_avg).minCoeff();
}

std::shared_ptr<const ConicDomain> MatrixGame::ConicDomainX() const {
  return std::make_shared<const ConicDomain>(ConicDomain::Simplex(dim_x()));
}

std::shared_ptr<const ConicDomain> MatrixGame::ConicDomainY() const {
  return std::make_shared<const ConicDomain>(ConicDomain::Simplex(dim_y()));
}

ProxDomain MatrixGame::ProxDomainX() const {
  return ProxDomain::Simplex(dim_x());
}

ProxDomain MatrixGame::ProxDomainY() const {
  return ProxDomain::Simplex(dim_y());
}

LipschitzPair MatrixGame::Lipschitz() const {
  return {payoff_.colwise().norm().maxCoeff(),
          payoff_.rowwise().norm().maxCoeff()};
}

MatrixGame RandomMatrixGame(int n, int m, Distribution dist,
                            std::uint64_t seed) {
  if (n < 1 || m < 1) throw DomainError("matrix game: n and m must be >= 1");
  Rng rng(seed);
  Matrix payoff(n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      payoff(i, j) =
          dist == Distribution::kUniform01 ? rng.Uniform01() : rng.Normal();
    }
  }
  return MatrixGame(std::move(payoff));
}

}  // namespace blackwell
