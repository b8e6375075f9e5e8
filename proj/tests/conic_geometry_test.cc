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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "blackwell/cone_projection.h"
#include "blackwell/conic_domain.h"
#include "blackwell/rng.h"
#include "blackwell/verify/oracles.h"

namespace blackwell {
namespace {

using Catch::Approx;
using verify::ReferenceSet;

double Dist(const LiftedPayoff& a, const LiftedPayoff& b) {
  return (a - b).Norm();
}

LiftedPayoff RandomLifted(int n, double scale, Rng& rng) {
  LiftedPayoff u(scale * rng.Normal(), Vector(n));
  for (int i = 0; i < n; ++i) u.hat[i] = scale * rng.Normal();
  return u;
}

TEST_CASE("simplex cone: identity inside the cone") {
  const LiftedPayoff u(1.0, Vector{{1.0, 0.0, 0.0}});
  CHECK(Dist(ProjectConeSimplex(u), u) == 0.0);
}

TEST_CASE("simplex cone: polar points map to zero") {
  const LiftedPayoff u(-1.0, Vector{{-2.0, -2.0, -2.0}});
  CHECK(ProjectConeSimplex(u).Norm() == 0.0);
}

TEST_CASE("simplex cone: interior example matches the reference search") {
  const LiftedPayoff u(0.5, Vector{{0.7, -0.2, 0.1}});
  const LiftedPayoff ref =
      verify::ReferenceConeProjection(u, verify::SimplexReference(3));
  const LiftedPayoff pi = ProjectConeSimplex(u);
  CHECK(Dist(pi, ref) <= 1e-6);
  // Frozen from the reference search.
  CHECK(pi.tilde == Approx(0.6).margin(1e-12));
  CHECK(pi.hat[0] == Approx(0.6).margin(1e-12));
  CHECK(pi.hat[1] == Approx(0.0).margin(1e-12));
  CHECK(pi.hat[2] == Approx(0.0).margin(1e-12));
}

TEST_CASE("cone projections reject non-finite input") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const LiftedPayoff u(nan, Vector{{1.0, 0.0}});
  CHECK_THROWS_AS(ProjectConeSimplex(u), DomainError);
  CHECK_THROWS_AS(ProjectConeL2(u, 1.0), DomainError);
  CHECK_THROWS_AS(ProjectConeL1LInf(u, BallNorm::kL1), DomainError);
}

TEST_CASE("l2 cone: apex formula and the two trivial regions") {
  const LiftedPayoff u(0.0, Vector{{2.0, 0.0}});
  const LiftedPayoff pi = ProjectConeL2(u, 1.0);
  CHECK(pi.tilde == Approx(1.0));
  CHECK(pi.hat[0] == Approx(1.0));
  CHECK(pi.hat[1] == Approx(0.0).margin(1e-15));

  const LiftedPayoff inside(3.0, Vector{{0.6, 0.8}});
  CHECK(Dist(ProjectConeL2(inside, 1.0), inside) == 0.0);
  const LiftedPayoff polar(-3.0, Vector{{0.6, 0.8}});
  CHECK(ProjectConeL2(polar, 1.0).Norm() == 0.0);
  CHECK_THROWS_AS(ProjectConeL2(inside, 0.0), DomainError);
}

TEST_CASE("l1 cone: trivial regions and an oracle-checked example") {
  const LiftedPayoff polar(-2.0, Vector{{1.0, -1.0}});
  CHECK(ProjectConeL1LInf(polar, BallNorm::kL1).Norm() == 0.0);
  const LiftedPayoff inside(1.0, Vector{{0.5, 0.0}});
  CHECK(Dist(ProjectConeL1LInf(inside, BallNorm::kL1), inside) == 0.0);

  const LiftedPayoff u(0.3, Vector{{1.2, -0.8, 0.4}});
  const LiftedPayoff pi = ProjectConeL1LInf(u, BallNorm::kL1);
  CHECK(Dist(pi, verify::ReferenceConeProjection(
                     u, verify::L1BallReference(3))) <= 1e-6);
  CHECK(pi.tilde == Approx(13.0 / 15.0).margin(1e-12));
  CHECK(pi.hat[0] == Approx(19.0 / 30.0).margin(1e-12));
  CHECK(pi.hat[1] == Approx(-7.0 / 30.0).margin(1e-12));
  CHECK(pi.hat[2] == Approx(0.0).margin(1e-12));
}

TEST_CASE("l-infinity cone: oracle-checked example") {
  const LiftedPayoff u(0.3, Vector{{1.2, -0.8, 0.4}});
  const LiftedPayoff pi = ProjectConeL1LInf(u, BallNorm::kLInf);
  CHECK(Dist(pi, verify::ReferenceConeProjection(
                     u, verify::LInfBallReference(3))) <= 1e-6);
  CHECK(pi.tilde == Approx(0.872820323027551).margin(1e-12));
  CHECK(pi.hat[2] == Approx(0.4).margin(1e-12));
}

TEST_CASE("simplex tangent basis") {
  const Matrix v2 = SimplexTangentBasis(2);
  REQUIRE(v2.cols() == 1);
  CHECK(v2(0, 0) == Approx(std::sqrt(0.5)));
  CHECK(v2(1, 0) == Approx(-std::sqrt(0.5)));

  const Matrix v3 = SimplexTangentBasis(3);
  CHECK(v3(0, 1) == Approx(std::sqrt(2.0 / 3.0) * 0.5));
  CHECK(v3(1, 1) == Approx(std::sqrt(2.0 / 3.0) * 0.5));
  CHECK(v3(2, 1) == Approx(-std::sqrt(2.0 / 3.0)));

  for (int n = 2; n <= 12; ++n) {
    const Matrix v = SimplexTangentBasis(n);
    CHECK((v.transpose() * v - Matrix::Identity(n - 1, n - 1)).norm() <= 1e-12);
    CHECK(v.colwise().sum().norm() <= 1e-12);
  }
  CHECK_THROWS_AS(SimplexTangentBasis(1), DomainError);
}

TEST_CASE("ellipsoid adapter maps the unit ball onto the simplex slice") {
  const Vector center{{0.2, 0.3, 0.5}};
  const double radius = 0.15;
  const ConicDomain domain = ConicDomain::EllipsoidInSimplex(center, radius);
  CHECK(domain.internal_dim() == 2);
  CHECK(domain.kappa() == 1.0);
  CHECK((domain.ExternalPoint(Vector::Zero(2)) - center).norm() <= 1e-15);
  CHECK(domain.InternalLoss(Vector::Constant(3, 4.2)).norm() <= 1e-12);

  Rng rng(7);
  for (int k = 0; k < 100; ++k) {
    Vector f(3), s(2);
    for (int i = 0; i < 3; ++i) f[i] = rng.Normal();
    for (int i = 0; i < 2; ++i) s[i] = rng.Normal();
    s /= std::max(1.0, s.norm());
    const Vector x = domain.ExternalPoint(s);
    CHECK(domain.InternalLoss(f).dot(s) ==
          Approx(f.dot(x - center) / radius).margin(1e-12));
    CHECK(domain.Contains(x, 1e-12));
  }
  CHECK_THROWS_AS(ConicDomain::EllipsoidInSimplex(center, 0.25), DomainError);
}

TEST_CASE("bisection projection agrees with the simplex projector") {
  const LiftedPayoff u(0.5, Vector{{0.7, -0.2, 0.1}});
  const LiftedPayoff pi = ProjectConeBisection(u, ProjectSimplex, 1.0, 1e-7);
  CHECK(Dist(pi, ProjectConeSimplex(u)) <= 1e-5);

  const LiftedPayoff inside(2.0, Vector{{1.0, 0.5, 0.5}});
  CHECK(Dist(ProjectConeBisection(inside, ProjectSimplex, 1.0, 1e-7), inside) <=
        1e-7);
  const LiftedPayoff polar(-1.0, Vector{{-2.0, -3.0, -2.5}});
  CHECK(ProjectConeBisection(polar, ProjectSimplex, 1.0, 1e-7).Norm() <= 1e-7);
  CHECK_THROWS_AS(ProjectConeBisection(u, ProjectSimplex, 1.0, 0.0),
                  DomainError);
}

TEST_CASE("bisection agrees with every exact projector within 10 tol") {
  constexpr double kTol = 1e-7;
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const int n = 2 + rng.UniformInt(8);
    const LiftedPayoff u = RandomLifted(n, 1.0, rng);
    CHECK(Dist(ProjectConeBisection(u, ProjectSimplex, 1.0, kTol),
               ProjectConeSimplex(u)) <= 10 * kTol * (1.0 + u.Norm()));
    CHECK(Dist(ProjectConeBisection(u, verify::UnitL2BallProjection, 1.0, kTol),
               ProjectConeL2(u, 1.0)) <= 10 * kTol * (1.0 + u.Norm()));
    CHECK(Dist(ProjectConeBisection(u, verify::BisectL1BallProjection, 1.0,
                                    kTol),
               ProjectConeL1LInf(u, BallNorm::kL1)) <=
          10 * kTol * (1.0 + u.Norm()));
    CHECK(Dist(ProjectConeBisection(u, verify::UnitLInfBallProjection,
                                    std::sqrt(double(n)), kTol),
               ProjectConeL1LInf(u, BallNorm::kLInf)) <=
          10 * kTol * (1.0 + u.Norm()));
  }
}

TEST_CASE("moreau complement") {
  const LiftedPayoff inside(1.0, Vector{{0.5, 0.5}});
  CHECK(MoreauComplement(inside, ProjectConeSimplex(inside)).Norm() == 0.0);
  const LiftedPayoff polar(-1.0, Vector{{-1.0, -2.0}});
  CHECK(Dist(MoreauComplement(polar, ProjectConeSimplex(polar)), polar) == 0.0);
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const LiftedPayoff u = RandomLifted(5, 3.0, rng);
    const LiftedPayoff pi = ProjectConeSimplex(u);
    CHECK(std::abs(pi.Dot(MoreauComplement(u, pi))) <=
          1e-8 * (1.0 + u.SquaredNorm()));
  }
}

TEST_CASE("euclidean simplex projection") {
  const Vector inside{{0.2, 0.3, 0.5}};
  CHECK((ProjectSimplex(inside) - inside).norm() <= 1e-15);
  const Vector corner = ProjectSimplex(Vector{{10.0, 0.0, 0.0}});
  CHECK((corner - Vector{{1.0, 0.0, 0.0}}).norm() == 0.0);

  const Vector z{{0.5, 0.2, -0.1}};
  const Vector p = ProjectSimplex(z);
  CHECK((p - verify::BisectSimplexProjection(z)).norm() <= 1e-12);
  CHECK(p[0] == Approx(19.0 / 30.0).margin(1e-12));
  CHECK(p[1] == Approx(1.0 / 3.0).margin(1e-12));
  CHECK(p[2] == Approx(1.0 / 30.0).margin(1e-12));

  // Brute force over a grid of the simplex, to grid resolution.
  constexpr int kSteps = 400;
  double best = std::numeric_limits<double>::infinity();
  Vector arg;
  for (int i = 0; i <= kSteps; ++i) {
    for (int j = 0; i + j <= kSteps; ++j) {
      const Vector y{{double(i) / kSteps, double(j) / kSteps,
                      double(kSteps - i - j) / kSteps}};
      const double d = (y - z).squaredNorm();
      if (d < best) {
        best = d;
        arg = y;
      }
    }
  }
  CHECK((p - arg).norm() <= 1e-2);
  CHECK((p - z).squaredNorm() <= best + 1e-12);
}

TEST_CASE("distance to polar") {
  const ConeKind simplex = SimplexCone{3};
  CHECK(DistanceToPolar(LiftedPayoff(-1.0, Vector{{-2.0, -2.0, -2.0}}),
                        simplex) == 0.0);
  const LiftedPayoff inside(2.0, Vector{{1.0, 0.5, 0.5}});
  CHECK(DistanceToPolar(inside, simplex) == Approx(inside.Norm()));

  // Sampled support-function lower bound: <u, w> for unit w in C.
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    const LiftedPayoff u = RandomLifted(3, 1.0, rng);
    const double d = DistanceToPolar(u, simplex);
    for (int j = 0; j < 50; ++j) {
      Vector x(3);
      for (int i = 0; i < 3; ++i) x[i] = rng.Uniform01();
      x /= x.sum();
      LiftedPayoff w(1.0, x);
      w *= 1.0 / w.Norm();
      CHECK(u.Dot(w) <= d + 1e-12);
    }
  }
}

// One test per cone kind, shared across the property checks below.
struct NamedKind {
  const char* name;
  ConeKind kind;
  ReferenceSet reference;
};

std::vector<NamedKind> AllKinds(int n, Rng& rng) {
  Vector center(n + 1);
  for (int i = 0; i <= n; ++i) center[i] = 1.0 + rng.Uniform01();
  center /= center.sum();
  const ConeKind ellipsoid = EllipsoidSimplexCone{center, 0.5 * center.minCoeff()};
  return {
      {"simplex", SimplexCone{n}, verify::SimplexReference(n)},
      {"l1", L1BallCone{n}, verify::L1BallReference(n)},
      {"l2", L2BallCone{n}, verify::L2BallReference(n)},
      {"linf", LInfBallCone{n}, verify::LInfBallReference(n)},
      {"ellipsoid", ellipsoid, verify::ReferenceFor(ellipsoid)},
      {"generic", GenericBisection{n, ProjectSimplex, 1.0, 1e-10},
       verify::SimplexReference(n)},
  };
}

TEST_CASE("moreau identity, idempotence, shrinking and membership") {
  Rng rng(17);
  for (int k = 0; k < 150; ++k) {
    const int n = 2 + rng.UniformInt(9);
    for (const NamedKind& c : AllKinds(n, rng)) {
      INFO(c.name << " n=" << n);
      const int dim = ConeDim(c.kind);
      const LiftedPayoff u =
          RandomLifted(dim, std::pow(10.0, rng.Uniform(-2, 2)), rng);
      const LiftedPayoff pi = ProjectCone(u, c.kind);
      const LiftedPayoff polar = MoreauComplement(u, pi);
      CHECK((pi + polar - u).Norm() <= 1e-9 * (1.0 + u.Norm()));
      CHECK(std::abs(pi.Dot(polar)) <= 1e-8 * (1.0 + u.SquaredNorm()));
      CHECK(c.reference.cone_violation(pi) <= 1e-8 * (1.0 + u.Norm()));
      CHECK(Dist(ProjectCone(pi, c.kind), pi) <= 1e-9 * (1.0 + u.Norm()));
      CHECK(pi.Norm() <= u.Norm() * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("cone projections are nonexpansive") {
  Rng rng(19);
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + rng.UniformInt(9);
    for (const NamedKind& c : AllKinds(n, rng)) {
      INFO(c.name);
      const int dim = ConeDim(c.kind);
      const LiftedPayoff u = RandomLifted(dim, 1.0, rng);
      const LiftedPayoff w = RandomLifted(dim, 1.0, rng);
      CHECK(Dist(ProjectCone(u, c.kind), ProjectCone(w, c.kind)) <=
            Dist(u, w) * (1.0 + 1e-9) + 1e-9);
    }
  }
}

TEST_CASE("exact projectors agree with the reference search") {
  Rng rng(23);
  for (int k = 0; k < 60; ++k) {
    const int n = 2 + rng.UniformInt(9);
    for (const NamedKind& c : AllKinds(n, rng)) {
      INFO(c.name);
      const LiftedPayoff u = RandomLifted(ConeDim(c.kind), 2.0, rng);
      CHECK(Dist(ProjectCone(u, c.kind),
                 verify::ReferenceConeProjection(u, c.reference)) <=
            1e-6 * (1.0 + u.Norm()));
    }
  }
}

TEST_CASE("ties in the simplex cone projection") {
  const LiftedPayoff u(0.1, Vector{{0.4, 0.4, 0.4, -1.0}});
  const LiftedPayoff pi = ProjectConeSimplex(u);
  CHECK(pi.hat[0] == pi.hat[1]);
  CHECK(pi.hat[1] == pi.hat[2]);
  CHECK(Dist(pi, verify::ReferenceConeProjection(
                     u, verify::SimplexReference(4))) <= 1e-6);
}

TEST_CASE("domain kinds report kappa and default decisions") {
  CHECK(ConicDomain::Simplex(4).kappa() == 1.0);
  CHECK(ConicDomain::LInfBall(4).kappa() == 2.0);
  CHECK(ConicDomain::L1Ball(4).kappa() == 1.0);
  const ConicDomain ball = ConicDomain::Ball(Vector{{1.0, 2.0}}, 3.0);
  CHECK(ball.regret_scale() == 3.0);
  CHECK(ball.Contains(ball.DefaultDecision(), 0.0));
  for (const ConicDomain& d :
       {ConicDomain::Simplex(4), ConicDomain::L1Ball(4), ConicDomain::L2Ball(4),
        ConicDomain::LInfBall(4)}) {
    INFO(d.name());
    CHECK(d.Contains(d.DefaultDecision(), 1e-12));
    const Vector c{{0.3, -1.0, 2.0, 0.5}};
    const Vector x = d.LinearMin(c);
    CHECK(d.Contains(x, 1e-12));
  }
}

}  // namespace
}  // namespace blackwell
