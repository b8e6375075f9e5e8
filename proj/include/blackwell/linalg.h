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

#ifndef BLACKWELL_LINALG_H_
#define BLACKWELL_LINALG_H_

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace blackwell {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Raised when an operation receives arguments outside its domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A point of the lifted space R x R^n, split into the cone-axis coordinate
// and the decision-space coordinate.
struct LiftedPayoff {
  double tilde = 0.0;
  Vector hat;

  LiftedPayoff() = default;
  LiftedPayoff(double tilde_part, Vector hat_part)
      : tilde(tilde_part), hat(std::move(hat_part)) {}

  static LiftedPayoff Zero(int n) { return {0.0, Vector::Zero(n)}; }

  int dim() const { return static_cast<int>(hat.size()); }
  double SquaredNorm() const { return tilde * tilde + hat.squaredNorm(); }
  double Norm() const;
  double InfNorm() const;
  double Dot(const LiftedPayoff& other) const {
    return tilde * other.tilde + hat.dot(other.hat);
  }
  bool AllFinite() const;

  LiftedPayoff& operator+=(const LiftedPayoff& other);
  LiftedPayoff& operator-=(const LiftedPayoff& other);
  LiftedPayoff& operator*=(double scale);
};

LiftedPayoff operator+(LiftedPayoff a, const LiftedPayoff& b);
LiftedPayoff operator-(LiftedPayoff a, const LiftedPayoff& b);
LiftedPayoff operator*(double scale, LiftedPayoff a);

// Throws DomainError naming `what` if any entry is NaN or infinite.
void RequireFinite(const Vector& v, const std::string& what);
void RequireFinite(const LiftedPayoff& u, const std::string& what);

}  // namespace blackwell

#endif  // BLACKWELL_LINALG_H_
