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

#include "blackwell/cone_projection.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace blackwell {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<double> SortedDescending(const Vector& v) {
  std::vector<double> a(v.data(), v.data() + v.size());
  std::stable_sort(a.begin(), a.end(), std::greater<double>());
  return a;
}

// Root of the strictly increasing map s -> s + sum_i max(a_i + s, 0), with
// `a` sorted in descending order. Scans the linear pieces from the right.
double ShiftRoot(const std::vector<double>& a, double target) {
  const int n = static_cast<int>(a.size());
  double prefix = 0.0;
  for (int k = 0; k < n; ++k) {
    const double s = (target - prefix) / (k + 1);
    if (a[k] + s <= 0.0) return s;
    prefix += a[k];
  }
  return (target - prefix) / (n + 1);
}

void RequireDim(const LiftedPayoff& u, int n, const char* cone) {
  if (u.dim() != n) {
    throw DomainError(std::string(cone) + ": expected dimension " +
                      std::to_string(n) + ", got " + std::to_string(u.dim()));
  }
}

}  // namespace

double ConeKappa(const ConeKind& kind) {
  return std::visit(
      Overloaded{
          [](const SimplexCone&) { return 1.0; },
          [](const L1BallCone&) { return 1.0; },
          [](const L2BallCone&) { return 1.0; },
          [](const LInfBallCone& k) { return std::sqrt(double(k.n)); },
          [](const EllipsoidSimplexCone&) { return 1.0; },
          [](const GenericBisection& k) { return k.kappa; },
      },
      kind);
}

int ConeDim(const ConeKind& kind) {
  return std::visit(
      Overloaded{
          [](const SimplexCone& k) { return k.n; },
          [](const L1BallCone& k) { return k.n; },
          [](const L2BallCone& k) { return k.n; },
          [](const LInfBallCone& k) { return k.n; },
          [](const EllipsoidSimplexCone& k) {
            return static_cast<int>(k.center.size()) - 1;
          },
          [](const GenericBisection& k) { return k.n; },
      },
      kind);
}

LiftedPayoff ProjectConeSimplex(const LiftedPayoff& u) {
  RequireFinite(u, "cone projection input");
  const int n = u.dim();
  if (n == 0) return {std::max(u.tilde, 0.0), Vector()};
  if (u.hat.maxCoeff() <= -u.tilde) return LiftedPayoff::Zero(n);
  if (u.tilde >= 0.0 && u.hat.minCoeff() >= 0.0 && u.hat.sum() == u.tilde) {
    return u;
  }
  const double shift = ShiftRoot(SortedDescending(u.hat), u.tilde);
  return {u.tilde - shift, (u.hat.array() + shift).max(0.0).matrix()};
}

LiftedPayoff ProjectConeL2(const LiftedPayoff& u, double kappa) {
  if (!(kappa > 0.0)) throw DomainError("l2 cone: kappa must be positive");
  RequireFinite(u, "cone projection input");
  const double slope = 1.0 / kappa;  // cone is {|y| <= slope * t}
  const double norm = u.hat.norm();
  if (norm <= slope * u.tilde) return u;
  if (norm <= -kappa * u.tilde) return LiftedPayoff::Zero(u.dim());
  const double t = (u.tilde + slope * norm) / (1.0 + slope * slope);
  return {t, (slope * t / norm) * u.hat};
}

LiftedPayoff ProjectConeL1LInf(const LiftedPayoff& u, BallNorm norm) {
  RequireFinite(u, "cone projection input");
  const int n = u.dim();
  const Vector abs_hat = u.hat.cwiseAbs();
  const double l1 = abs_hat.sum();
  const double linf = n > 0 ? abs_hat.maxCoeff() : 0.0;
  if (norm == BallNorm::kL1) {
    // Polar cone {|y|_inf <= -t}. For fixed t <= 0 the nearest polar point
    // clips the hat part to the box of radius -t, so the tilde part of the
    // polar projection is the root of s + sum (|u_i| + s)^+ = tilde.
    if (l1 <= u.tilde) return u;
    if (linf <= -u.tilde) return LiftedPayoff::Zero(n);
    const double shift = ShiftRoot(SortedDescending(abs_hat), u.tilde);
    Vector hat = (abs_hat.array() + shift).max(0.0).matrix();
    for (int i = 0; i < n; ++i) {
      if (u.hat[i] < 0.0) hat[i] = -hat[i];
    }
    return {u.tilde - shift, std::move(hat)};
  }
  // Cone {|y|_inf <= t / kappa} with kappa = sqrt(n); polar
  // {|y|_1 <= -kappa t}. Writing the cone point as (kappa r, clip(u, r)),
  // the radius r solves kappa^2 r - sum (|u_i| - r)^+ = kappa tilde.
  const double kappa = std::sqrt(double(n));
  if (linf * kappa <= u.tilde) return u;
  if (l1 <= -kappa * u.tilde) return LiftedPayoff::Zero(n);
  const std::vector<double> a = SortedDescending(abs_hat);
  double prefix = 0.0;
  double radius = 0.0;
  for (int k = 0; k <= n; ++k) {
    radius = (kappa * u.tilde + prefix) / (kappa * kappa + k);
    if (k == n || radius >= a[k]) break;
    prefix += a[k];
  }
  if (radius <= 0.0) return LiftedPayoff::Zero(n);
  return {kappa * radius, u.hat.cwiseMax(-radius).cwiseMin(radius)};
}

Matrix SimplexTangentBasis(int n) {
  if (n < 2) throw DomainError("simplex tangent basis needs n >= 2");
  Matrix basis = Matrix::Zero(n, n - 1);
  for (int i = 1; i < n; ++i) {
    const double scale = std::sqrt(double(i) / double(i + 1));
    basis.col(i - 1).head(i).setConstant(scale / i);
    basis(i, i - 1) = -scale;
  }
  return basis;
}

LiftedPayoff ProjectConeBisection(const LiftedPayoff& u,
                                  const SetProjector& project_set,
                                  double kappa, double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("bisection: tol must be positive");
  if (!(kappa > 0.0)) throw DomainError("bisection: kappa must be positive");
  RequireFinite(u, "cone projection input");
  const int n = u.dim();
  const double hat_norm = u.hat.norm();
  const double at_zero = u.tilde * u.tilde + hat_norm * hat_norm;
  const auto objective = [&](double alpha) {
    if (alpha <= 0.0) return at_zero;
    const Vector x = project_set(u.hat / alpha);
    const double axis = alpha * kappa - u.tilde;
    return axis * axis + (alpha * x - u.hat).squaredNorm();
  };

  double lo = 0.0;
  double hi = std::max(0.0, u.tilde / kappa) + hat_norm / kappa;
  if (hi <= 0.0) return LiftedPayoff::Zero(n);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - ratio * (hi - lo);
  double b = lo + ratio * (hi - lo);
  double fa = objective(a);
  double fb = objective(b);
  while (hi - lo > tolerance) {
    if (fa <= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - ratio * (hi - lo);
      fa = objective(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + ratio * (hi - lo);
      fb = objective(b);
    }
  }
  double alpha = 0.5 * (lo + hi);
  if (at_zero <= objective(alpha)) return LiftedPayoff::Zero(n);
  // Comparing objective values resolves alpha only to about sqrt(eps), so
  // the search result is polished by alternating the set projection with
  // the exact scale along the ray (kappa, x). The minimizer is a fixed point
  // of this map and each step does not increase the objective.
  Vector x = project_set(u.hat / alpha);
  for (int step = 0; step < 50; ++step) {
    const double refit =
        (kappa * u.tilde + x.dot(u.hat)) / (kappa * kappa + x.squaredNorm());
    if (!(refit > 0.0)) return LiftedPayoff::Zero(n);
    const bool settled = std::abs(refit - alpha) <= 1e-15 * refit;
    alpha = refit;
    if (settled) break;
    x = project_set(u.hat / alpha);
  }
  return {alpha * kappa, alpha * x};
}

LiftedPayoff ProjectCone(const LiftedPayoff& u, const ConeKind& kind) {
  return std::visit(
      Overloaded{
          [&](const SimplexCone& k) {
            RequireDim(u, k.n, "simplex cone");
            return ProjectConeSimplex(u);
          },
          [&](const L1BallCone& k) {
            RequireDim(u, k.n, "l1 ball cone");
            return ProjectConeL1LInf(u, BallNorm::kL1);
          },
          [&](const L2BallCone& k) {
            RequireDim(u, k.n, "l2 ball cone");
            return ProjectConeL2(u, 1.0);
          },
          [&](const LInfBallCone& k) {
            RequireDim(u, k.n, "l-infinity ball cone");
            return ProjectConeL1LInf(u, BallNorm::kLInf);
          },
          [&](const EllipsoidSimplexCone& k) {
            RequireDim(u, static_cast<int>(k.center.size()) - 1,
                       "ellipsoid cone");
            return ProjectConeL2(u, 1.0);
          },
          [&](const GenericBisection& k) {
            RequireDim(u, k.n, "bisection cone");
            return ProjectConeBisection(u, k.projector, k.kappa, k.tolerance);
          },
      },
      kind);
}

LiftedPayoff MoreauComplement(const LiftedPayoff& u,
                              const LiftedPayoff& pi_c) {
  return u - pi_c;
}

Vector ProjectSimplex(const Vector& z) {
  RequireFinite(z, "simplex projection input");
  const int n = static_cast<int>(z.size());
  if (n == 0) throw DomainError("simplex projection of an empty vector");
  const std::vector<double> a = SortedDescending(z);
  double prefix = 0.0;
  double threshold = 0.0;
  for (int k = 0; k < n; ++k) {
    prefix += a[k];
    const double candidate = (prefix - 1.0) / (k + 1);
    if (a[k] - candidate > 0.0) threshold = candidate;
  }
  return (z.array() - threshold).max(0.0).matrix();
}

double DistanceToPolar(const LiftedPayoff& u, const ConeKind& kind) {
  return ProjectCone(u, kind).Norm();
}

}  // namespace blackwell
