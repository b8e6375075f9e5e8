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

#ifndef BLACKWELL_CONIC_DOMAIN_H_
#define BLACKWELL_CONIC_DOMAIN_H_

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "blackwell/cone_projection.h"
#include "blackwell/linalg.h"

namespace blackwell {

// argmin over X of <c, x>.
using LinearMinimizer = std::function<Vector(const Vector&)>;

// A decision set X together with the cone C = cone({kappa} x X) a Blackwell
// learner works in.
//
// Some sets are handled through an affine reparametrization
// x = center + scale * B s, where s ranges over a unit l2 ball and B has
// orthonormal columns (the identity for balls, the simplex tangent basis for
// the ellipsoid slice of the simplex). The learner then runs on s with
// losses B^T f. "Internal" below refers to the coordinates the cone is
// built on, "external" to the coordinates of X.
class ConicDomain {
 public:
  static ConicDomain Simplex(int n);
  static ConicDomain L1Ball(int n);
  static ConicDomain L2Ball(int n);
  static ConicDomain LInfBall(int n);
  // {x : |x - center|_2 <= radius}.
  static ConicDomain Ball(Vector center, double radius);
  // {x in simplex : |x - center|_2 <= radius}; requires
  // min_i center_i >= radius so that the slice lies inside the simplex.
  static ConicDomain EllipsoidInSimplex(Vector center, double radius);
  // Any compact convex set given by its projector; the cone projection uses
  // the one-dimensional search.
  static ConicDomain Generic(int n, SetProjector projector,
                             LinearMinimizer linear_min, double kappa,
                             Vector default_decision,
                             double tolerance = kDefaultBisectionTolerance);

  const ConeKind& kind() const { return kind_; }
  std::string name() const;
  int dim() const { return dim_; }
  int internal_dim() const { return ConeDim(kind_); }
  double kappa() const { return ConeKappa(kind_); }
  // Ratio between regret measured on X and regret measured internally.
  double regret_scale() const { return affine_ ? affine_->scale : 1.0; }

  LiftedPayoff Project(const LiftedPayoff& u) const {
    return ProjectCone(u, kind_);
  }
  Vector InternalLoss(const Vector& loss) const;
  Vector InternalPoint(const Vector& x) const;
  Vector ExternalPoint(const Vector& s) const;
  Vector DefaultDecision() const { return ExternalPoint(default_internal_); }
  const Vector& DefaultInternal() const { return default_internal_; }
  Vector LinearMin(const Vector& c) const;
  bool Contains(const Vector& x, double slack) const;

 private:
  struct AffineMap {
    Vector center;
    double scale;
    std::shared_ptr<const Matrix> basis;  // null means identity
  };

  ConicDomain(ConeKind kind, int dim, Vector default_internal)
      : kind_(std::move(kind)),
        dim_(dim),
        default_internal_(std::move(default_internal)) {}

  ConeKind kind_;
  int dim_;
  Vector default_internal_;
  std::optional<AffineMap> affine_;
  LinearMinimizer generic_linear_min_;
};

}  // namespace blackwell

#endif  // BLACKWELL_CONIC_DOMAIN_H_
