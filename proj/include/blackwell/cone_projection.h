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

#ifndef BLACKWELL_CONE_PROJECTION_H_
#define BLACKWELL_CONE_PROJECTION_H_

#include <functional>
#include <variant>

#include "blackwell/linalg.h"

namespace blackwell {

// Euclidean projector onto a compact convex set.
using SetProjector = std::function<Vector(const Vector&)>;

inline constexpr double kDefaultBisectionTolerance = 1e-7;

// Cones C = cone({kappa} x X) for the supported decision sets X.
struct SimplexCone {
  int n;
};
struct L1BallCone {
  int n;
};
struct L2BallCone {
  int n;
};
struct LInfBallCone {
  int n;
};
// The slice {x : sum(x) = 1, |x - center| <= radius} of the simplex, handled
// in the coordinates of an orthonormal basis of the simplex tangent space.
// The cone lives in dimension n - 1 over the unit l2 ball.
struct EllipsoidSimplexCone {
  Vector center;
  double radius;
};
struct GenericBisection {
  int n;
  SetProjector projector;
  double kappa;
  double tolerance = kDefaultBisectionTolerance;
};

using ConeKind = std::variant<SimplexCone, L1BallCone, L2BallCone,
                              LInfBallCone, EllipsoidSimplexCone,
                              GenericBisection>;

// max |x|_2 over the set the cone is built on.
double ConeKappa(const ConeKind& kind);
// Length of the decision-space coordinate of the cone.
int ConeDim(const ConeKind& kind);

// Projection onto cone({1} x simplex).
LiftedPayoff ProjectConeSimplex(const LiftedPayoff& u);

// Projection onto cone({kappa} x unit l2 ball) = {|y|_2 <= t / kappa}.
LiftedPayoff ProjectConeL2(const LiftedPayoff& u, double kappa = 1.0);

enum class BallNorm { kL1, kLInf };

// Projection onto the cone over the unit l1 ball (kappa = 1) or the unit
// l-infinity ball (kappa = sqrt(n)).
LiftedPayoff ProjectConeL1LInf(const LiftedPayoff& u, BallNorm norm);

// Columns v_i = sqrt(i / (i + 1)) (1/i, ..., 1/i, -1, 0, ..., 0), i < n.
Matrix SimplexTangentBasis(int n);

// Projection through a one-dimensional golden-section search over the
// scale alpha of the cone element alpha (kappa, x).
LiftedPayoff ProjectConeBisection(const LiftedPayoff& u,
                                  const SetProjector& project_set,
                                  double kappa, double tolerance);

// Dispatch on the cone kind.
LiftedPayoff ProjectCone(const LiftedPayoff& u, const ConeKind& kind);

// u - pi_c, the projection onto the polar cone when pi_c is the projection
// onto the cone.
LiftedPayoff MoreauComplement(const LiftedPayoff& u, const LiftedPayoff& pi_c);

// Euclidean projection onto the probability simplex.
Vector ProjectSimplex(const Vector& z);

// d(u, polar cone) = |projection of u onto the cone|.
double DistanceToPolar(const LiftedPayoff& u, const ConeKind& kind);

}  // namespace blackwell

#endif  // BLACKWELL_CONE_PROJECTION_H_
