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

#include "blackwell/verify/oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

namespace blackwell::verify {
namespace {

double SumPositivePart(const Vector& z, double shift) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    total += std::max(z[i] - shift, 0.0);
  }
  return total;
}

double SumAbsShrink(const Vector& z, double shift) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    total += std::max(std::abs(z[i]) - shift, 0.0);
  }
  return total;
}

double L1(const Vector& z) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) total += std::abs(z[i]);
  return total;
}

double LInf(const Vector& z) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) best = std::max(best, std::abs(z[i]));
  return best;
}

double L2(const Vector& z) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) total += z[i] * z[i];
  return std::sqrt(total);
}

double Dot(const LiftedPayoff& a, const LiftedPayoff& b) {
  double total = a.tilde * b.tilde;
  for (Eigen::Index i = 0; i < a.hat.size(); ++i) total += a.hat[i] * b.hat[i];
  return total;
}

ReferenceSet BallLike(std::string name, double kappa,
                      std::function<Vector(const Vector&)> project,
                      std::function<double(const Vector&)> norm,
                      std::function<double(const Vector&)> dual_norm) {
  ReferenceSet set;
  set.name = std::move(name);
  set.kappa = kappa;
  set.project = std::move(project);
  set.support = dual_norm;
  // (t, y) is in cone({kappa} x B) iff norm(y) <= t / kappa.
  set.cone_violation = [kappa, norm](const LiftedPayoff& p) {
    return std::max({0.0, -p.tilde, norm(p.hat) - p.tilde / kappa});
  };
  return set;
}

}  // namespace

Vector BisectSimplexProjection(const Vector& z) {
  // Find tau with sum (z - tau)^+ = 1.
  double lo = z.minCoeff() - 1.0;
  double hi = z.maxCoeff();
  for (int iter = 0; iter < 100; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (SumPositivePart(z, mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double tau = 0.5 * (lo + hi);
  Vector x(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) x[i] = std::max(z[i] - tau, 0.0);
  return x / x.sum();
}

Vector BisectL1BallProjection(const Vector& z) {
  if (L1(z) <= 1.0) return z;
  double lo = 0.0;
  double hi = LInf(z);
  for (int iter = 0; iter < 100; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (SumAbsShrink(z, mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double tau = 0.5 * (lo + hi);
  Vector x(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double mag = std::max(std::abs(z[i]) - tau, 0.0);
    x[i] = z[i] < 0.0 ? -mag : mag;
  }
  return x;
}

Vector UnitL2BallProjection(const Vector& z) {
  const double norm = L2(z);
  return norm <= 1.0 ? z : Vector(z / norm);
}

Vector UnitLInfBallProjection(const Vector& z) {
  Vector x(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) x[i] = std::clamp(z[i], -1.0, 1.0);
  return x;
}

ReferenceSet SimplexReference(int /*n*/) {
  ReferenceSet set;
  set.name = "simplex";
  set.kappa = 1.0;
  set.project = BisectSimplexProjection;
  set.support = [](const Vector& w) { return w.maxCoeff(); };
  // cone({1} x simplex) = {(t, y) : y >= 0, sum y = t}.
  set.cone_violation = [](const LiftedPayoff& p) {
    double sum = 0.0;
    double negative = 0.0;
    for (Eigen::Index i = 0; i < p.hat.size(); ++i) {
      sum += p.hat[i];
      negative = std::max(negative, -p.hat[i]);
    }
    return std::max(std::abs(sum - p.tilde), negative);
  };
  return set;
}

ReferenceSet L1BallReference(int /*n*/) {
  return BallLike("l1_ball", 1.0, BisectL1BallProjection, L1, LInf);
}

ReferenceSet L2BallReference(int /*n*/) {
  return BallLike("l2_ball", 1.0, UnitL2BallProjection, L2, L2);
}

ReferenceSet LInfBallReference(int n) {
  return BallLike("linf_ball", std::sqrt(double(n)), UnitLInfBallProjection,
                  LInf, L1);
}

ReferenceSet ReferenceFor(const ConeKind& kind) {
  if (const auto* k = std::get_if<SimplexCone>(&kind)) {
    return SimplexReference(k->n);
  }
  if (const auto* k = std::get_if<L1BallCone>(&kind)) {
    return L1BallReference(k->n);
  }
  if (const auto* k = std::get_if<L2BallCone>(&kind)) {
    return L2BallReference(k->n);
  }
  if (const auto* k = std::get_if<LInfBallCone>(&kind)) {
    return LInfBallReference(k->n);
  }
  if (const auto* k = std::get_if<EllipsoidSimplexCone>(&kind)) {
    ReferenceSet set =
        L2BallReference(static_cast<int>(k->center.size()) - 1);
    set.name = "ellipsoid_simplex";
    return set;
  }
  throw DomainError("no reference set for a generic cone");
}

LiftedPayoff ReferenceConeProjection(const LiftedPayoff& u,
                                     const ReferenceSet& set) {
  const double kappa = set.kappa;
  // |alpha (kappa, x)| <= |u| and |(kappa, x)| >= kappa.
  const double top = std::sqrt(u.tilde * u.tilde + u.hat.squaredNorm()) / kappa;
  if (!(top > 0.0)) return LiftedPayoff::Zero(u.dim());
  const double at_zero = u.tilde * u.tilde + u.hat.squaredNorm();
  const auto objective = [&](double alpha) {
    // Scales this small are indistinguishable from the apex.
    if (alpha <= 1e-200 * top) return at_zero;
    const Vector x = set.project(u.hat / alpha);
    const double axis = alpha * kappa - u.tilde;
    const double value = axis * axis + (alpha * x - u.hat).squaredNorm();
    return std::isfinite(value) ? value : at_zero;
  };
  constexpr int kGrid = 100;
  int best = 0;
  double best_value = objective(0.0);
  for (int k = 1; k <= kGrid; ++k) {
    const double value = objective(top * k / kGrid);
    if (value < best_value) {
      best_value = value;
      best = k;
    }
  }
  double lo = top * std::max(0, best - 1) / kGrid;
  double hi = top * std::min(kGrid, best + 1) / kGrid;
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int iter = 0; iter < 120; ++iter) {
    const double a = hi - ratio * (hi - lo);
    const double b = lo + ratio * (hi - lo);
    if (objective(a) <= objective(b)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  const double alpha = 0.5 * (lo + hi);
  if (!(alpha > 0.0) || objective(0.0) <= objective(alpha)) {
    return LiftedPayoff::Zero(u.dim());
  }
  return {alpha * kappa, alpha * set.project(u.hat / alpha)};
}

double MoreauReport::Relative(const LiftedPayoff& u) const {
  const double norm = std::sqrt(u.tilde * u.tilde + u.hat.squaredNorm());
  return std::max({decomposition / (1.0 + norm),
                   orthogonality / (1.0 + norm * norm),
                   cone_violation / (1.0 + norm),
                   polar_violation / (1.0 + norm)});
}

MoreauReport CheckMoreau(const LiftedPayoff& u, const LiftedPayoff& pi,
                         const ReferenceSet& set) {
  MoreauReport report;
  LiftedPayoff polar{u.tilde - pi.tilde, u.hat - pi.hat};
  LiftedPayoff sum{pi.tilde + polar.tilde, pi.hat + polar.hat};
  report.decomposition = std::sqrt((sum.tilde - u.tilde) * (sum.tilde - u.tilde) +
                                   (sum.hat - u.hat).squaredNorm());
  report.orthogonality = std::abs(Dot(pi, polar));
  report.cone_violation = set.cone_violation(pi);
  report.polar_violation =
      std::max(0.0, set.kappa * polar.tilde + set.support(polar.hat));
  return report;
}

double EnumeratedMatrixGap(const Matrix& payoff, const Vector& x,
                           const Vector& y) {
  double best_y = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < payoff.cols(); ++j) {
    double value = 0.0;
    for (Eigen::Index i = 0; i < payoff.rows(); ++i) value += x[i] * payoff(i, j);
    best_y = std::max(best_y, value);
  }
  double best_x = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < payoff.rows(); ++i) {
    double value = 0.0;
    for (Eigen::Index j = 0; j < payoff.cols(); ++j) value += payoff(i, j) * y[j];
    best_x = std::min(best_x, value);
  }
  return best_y - best_x;
}

LipschitzPair ReferenceDroBounds(const Matrix& features, const Vector& labels,
                                 double regularizer, double radius_x,
                                 const Vector& center_x) {
  const Eigen::Index m = features.rows();
  const Eigen::Index n = features.cols();
  double abs_sum = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      abs_sum += std::abs(labels[i] * features(i, j));
    }
  }
  const double lx =
      abs_sum + regularizer * static_cast<double>(m) *
                    (L1(center_x) + std::sqrt(static_cast<double>(n)) * radius_x);
  double ly_sq = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double z = std::abs(labels[i]) * radius_x * L2(features.row(i).transpose());
    const double bound = std::log1p(std::exp(z));
    ly_sq += bound * bound;
  }
  return {lx, std::sqrt(ly_sq)};
}

LipschitzPair ReferenceMdpBounds(const Vector& rewards, double discount,
                                 int num_states, int num_actions) {
  const double r_inf = LInf(rewards);
  const double l_mu =
      L2(rewards) + std::sqrt(static_cast<double>(num_states)) * r_inf /
                        (1.0 - discount) *
                        (num_actions * (discount * num_states + 1.0));
  return {2.0, l_mu};
}

double ReferenceStepSize(FirstOrderMethod method, double diameter,
                         double lipschitz, int horizon) {
  switch (method) {
    case FirstOrderMethod::kOmd:
    case FirstOrderMethod::kFtrl:
      return std::sqrt(2.0) * diameter / lipschitz /
             std::sqrt(static_cast<double>(horizon));
    case FirstOrderMethod::kOomd:
      return 1.0 / std::sqrt(8.0) / lipschitz;
    case FirstOrderMethod::kOftrl:
      return 0.5 / lipschitz;
  }
  return 0.0;
}

double MdpUpperValue(const MdpData& mdp, const Vector& v) {
  const int n = mdp.num_states;
  const int actions = mdp.num_actions;
  double best = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < n; ++s) {
    for (int a = 0; a < actions; ++a) {
      const int row = s * actions + a;
      double next = 0.0;
      for (int k = 0; k < n; ++k) next += mdp.transitions(row, k) * v[k];
      best = std::max(best, mdp.rewards[row] + mdp.discount * next - v[s]);
    }
  }
  double start = 0.0;
  for (int s = 0; s < n; ++s) start += mdp.initial[s] * v[s];
  return (1.0 - mdp.discount) * start + best;
}

}  // namespace blackwell::verify
