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

#include "blackwell/conic_domain.h"

#include <cmath>
#include <utility>

namespace blackwell {
namespace {

void RequirePositiveDim(int n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + ": dimension must be >= 1");
}

bool InSimplex(const Vector& x, double slack) {
  return x.minCoeff() >= -slack && std::abs(x.sum() - 1.0) <= slack;
}

}  // namespace

ConicDomain ConicDomain::Simplex(int n) {
  RequirePositiveDim(n, "simplex");
  return ConicDomain(SimplexCone{n}, n, Vector::Constant(n, 1.0 / n));
}

ConicDomain ConicDomain::L1Ball(int n) {
  RequirePositiveDim(n, "l1 ball");
  return ConicDomain(L1BallCone{n}, n, Vector::Zero(n));
}

ConicDomain ConicDomain::L2Ball(int n) {
  RequirePositiveDim(n, "l2 ball");
  return ConicDomain(L2BallCone{n}, n, Vector::Zero(n));
}

ConicDomain ConicDomain::LInfBall(int n) {
  RequirePositiveDim(n, "l-infinity ball");
  return ConicDomain(LInfBallCone{n}, n, Vector::Zero(n));
}

ConicDomain ConicDomain::Ball(Vector center, double radius) {
  const int n = static_cast<int>(center.size());
  RequirePositiveDim(n, "ball");
  RequireFinite(center, "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("ball: radius must be positive");
  }
  ConicDomain domain(L2BallCone{n}, n, Vector::Zero(n));
  domain.affine_ = AffineMap{std::move(center), radius, nullptr};
  return domain;
}

ConicDomain ConicDomain::EllipsoidInSimplex(Vector center, double radius) {
  const int n = static_cast<int>(center.size());
  if (n < 2) throw DomainError("ellipsoid slice: need n >= 2");
  RequireFinite(center, "ellipsoid center");
  if (!(radius > 0.0)) throw DomainError("ellipsoid slice: radius must be > 0");
  if (!InSimplex(center, 1e-12)) {
    throw DomainError("ellipsoid slice: center must lie in the simplex");
  }
  if (center.minCoeff() < radius) {
    throw DomainError(
        "ellipsoid slice: min_i center_i must be >= radius for the slice to "
        "lie in the simplex");
  }
  auto basis = std::make_shared<const Matrix>(SimplexTangentBasis(n));
  ConicDomain domain(EllipsoidSimplexCone{center, radius}, n,
                     Vector::Zero(n - 1));
  domain.affine_ = AffineMap{std::move(center), radius, std::move(basis)};
  return domain;
}

ConicDomain ConicDomain::Generic(int n, SetProjector projector,
                                 LinearMinimizer linear_min, double kappa,
                                 Vector default_decision, double tolerance) {
  RequirePositiveDim(n, "generic domain");
  if (!projector || !linear_min) {
    throw DomainError("generic domain: projector and linear_min are required");
  }
  if (default_decision.size() != n) {
    throw DomainError("generic domain: default decision has wrong size");
  }
  if (!(kappa > 0.0)) throw DomainError("generic domain: kappa must be > 0");
  if (!(tolerance > 0.0)) throw DomainError("generic domain: tol must be > 0");
  ConicDomain domain(GenericBisection{n, std::move(projector), kappa, tolerance},
                     n, std::move(default_decision));
  domain.generic_linear_min_ = std::move(linear_min);
  return domain;
}

std::string ConicDomain::name() const {
  if (std::holds_alternative<SimplexCone>(kind_)) return "simplex";
  if (std::holds_alternative<L1BallCone>(kind_)) return "l1_ball";
  if (std::holds_alternative<L2BallCone>(kind_)) {
    return affine_ ? "ball" : "l2_ball";
  }
  if (std::holds_alternative<LInfBallCone>(kind_)) return "linf_ball";
  if (std::holds_alternative<EllipsoidSimplexCone>(kind_)) {
    return "ellipsoid_simplex";
  }
  return "generic";
}

Vector ConicDomain::InternalLoss(const Vector& loss) const {
  if (loss.size() != dim_) throw DomainError("loss has wrong dimension");
  if (affine_ && affine_->basis) return affine_->basis->transpose() * loss;
  return loss;
}

Vector ConicDomain::InternalPoint(const Vector& x) const {
  if (x.size() != dim_) throw DomainError("decision has wrong dimension");
  if (!affine_) return x;
  const Vector offset = (x - affine_->center) / affine_->scale;
  if (affine_->basis) return affine_->basis->transpose() * offset;
  return offset;
}

Vector ConicDomain::ExternalPoint(const Vector& s) const {
  if (!affine_) return s;
  if (affine_->basis) {
    return affine_->center + affine_->scale * (*affine_->basis * s);
  }
  return affine_->center + affine_->scale * s;
}

Vector ConicDomain::LinearMin(const Vector& c) const {
  if (c.size() != dim_) throw DomainError("linear_min: wrong dimension");
  if (affine_) {
    // Minimize over the ball within the affine span: move against the
    // component of c that lies in that span.
    Vector direction = c;
    if (affine_->basis) direction.array() -= c.mean();
    const double norm = direction.norm();
    if (norm == 0.0) return affine_->center;
    return affine_->center - (affine_->scale / norm) * direction;
  }
  if (std::holds_alternative<SimplexCone>(kind_)) {
    Vector::Index best;
    c.minCoeff(&best);
    Vector x = Vector::Zero(dim_);
    x[best] = 1.0;
    return x;
  }
  if (std::holds_alternative<L1BallCone>(kind_)) {
    Vector x = Vector::Zero(dim_);
    Vector::Index best;
    const double largest = c.cwiseAbs().maxCoeff(&best);
    if (largest > 0.0) x[best] = c[best] > 0.0 ? -1.0 : 1.0;
    return x;
  }
  if (std::holds_alternative<L2BallCone>(kind_)) {
    const double norm = c.norm();
    if (norm == 0.0) return Vector::Zero(dim_);
    return -c / norm;
  }
  if (std::holds_alternative<LInfBallCone>(kind_)) {
    return c.unaryExpr([](double v) { return v > 0.0 ? -1.0 : (v < 0.0 ? 1.0 : 0.0); });
  }
  return generic_linear_min_(c);
}

bool ConicDomain::Contains(const Vector& x, double slack) const {
  if (x.size() != dim_ || !x.allFinite()) return false;
  if (affine_) {
    if (affine_->basis && !InSimplex(x, slack)) return false;
    return (x - affine_->center).norm() <=
           affine_->scale + slack * (1.0 + affine_->scale);
  }
  if (std::holds_alternative<SimplexCone>(kind_)) return InSimplex(x, slack);
  if (std::holds_alternative<L1BallCone>(kind_)) {
    return x.lpNorm<1>() <= 1.0 + slack;
  }
  if (std::holds_alternative<L2BallCone>(kind_)) return x.norm() <= 1.0 + slack;
  if (std::holds_alternative<LInfBallCone>(kind_)) {
    return x.lpNorm<Eigen::Infinity>() <= 1.0 + slack;
  }
  const auto& generic = std::get<GenericBisection>(kind_);
  return (generic.projector(x) - x).norm() <= slack;
}

}  // namespace blackwell
