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

// Slow reference implementations used to check the solver. None of them
// calls into the code they check.

#ifndef BLACKWELL_VERIFY_ORACLES_H_
#define BLACKWELL_VERIFY_ORACLES_H_

#include <functional>
#include <string>

#include "blackwell/baselines.h"
#include "blackwell/cone_projection.h"
#include "blackwell/linalg.h"
#include "blackwell/problems.h"

namespace blackwell::verify {

// Simplex projection by bisection on the threshold.
Vector BisectSimplexProjection(const Vector& z);
// Projection onto the unit l1 ball by bisection on the soft threshold.
Vector BisectL1BallProjection(const Vector& z);
Vector UnitL2BallProjection(const Vector& z);
Vector UnitLInfBallProjection(const Vector& z);

// A decision set described independently of the cone code.
struct ReferenceSet {
  std::string name;
  double kappa = 1.0;
  std::function<Vector(const Vector&)> project;
  // max over the set of <w, x>.
  std::function<double(const Vector&)> support;
  // How far (tilde, hat) is from cone({kappa} x set); 0 inside.
  std::function<double(const LiftedPayoff&)> cone_violation;
};

ReferenceSet SimplexReference(int n);
ReferenceSet L1BallReference(int n);
ReferenceSet L2BallReference(int n);
ReferenceSet LInfBallReference(int n);
// The set the given cone is built on; for the ellipsoid slice this is the
// unit ball of the internal coordinates. Throws for GenericBisection.
ReferenceSet ReferenceFor(const ConeKind& kind);

// argmin over alpha >= 0, x in the set of |u - alpha (kappa, x)|, by a dense
// scan over alpha followed by golden-section refinement.
LiftedPayoff ReferenceConeProjection(const LiftedPayoff& u,
                                     const ReferenceSet& set);

struct MoreauReport {
  double decomposition = 0.0;   // |pi + (u - pi) - u|
  double orthogonality = 0.0;   // |<pi, u - pi>|
  double cone_violation = 0.0;  // pi outside the cone
  double polar_violation = 0.0;  // kappa w~ + support(w^), w = u - pi
  // Largest residual after scaling by 1 + |u| (or 1 + |u|^2).
  double Relative(const LiftedPayoff& u) const;
};

MoreauReport CheckMoreau(const LiftedPayoff& u, const LiftedPayoff& pi,
                         const ReferenceSet& set);

// Duality gap of a matrix game by enumerating pure best responses.
double EnumeratedMatrixGap(const Matrix& payoff, const Vector& x,
                           const Vector& y);

// Loop-based re-derivations of the bound and step-size formulas.
LipschitzPair ReferenceDroBounds(const Matrix& features, const Vector& labels,
                                 double regularizer, double radius_x,
                                 const Vector& center_x);
LipschitzPair ReferenceMdpBounds(const Vector& rewards, double discount,
                                 int num_states, int num_actions);
double ReferenceStepSize(FirstOrderMethod method, double diameter,
                         double lipschitz, int horizon);

// max over the occupancy simplex of F(v, mu). F is unchanged by v -> v + c e,
// and this equals (1 - lambda) p0^T (v + c e) for the smallest shift c that
// makes v + c e satisfy every Bellman inequality.
double MdpUpperValue(const MdpData& mdp, const Vector& v);

}  // namespace blackwell::verify

#endif  // BLACKWELL_VERIFY_ORACLES_H_
