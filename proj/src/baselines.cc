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

#include "blackwell/baselines.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "blackwell/cone_projection.h"

namespace blackwell {
namespace {

void RequirePositiveStep(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw DomainError("step size must be positive and finite");
  }
}

double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

Vector SimplexBallPrimal(const Vector& anchor, const Vector& c, double eta,
                         const Vector& center, double mu) {
  const double blend = eta / (eta * mu + 1.0);
  return ProjectSimplex(blend * (anchor / eta + mu * center - c));
}

double SimplexBallLagrangian(const Vector& y, const Vector& anchor,
                             const Vector& c, double eta, const Vector& center,
                             double radius, double mu) {
  return -0.5 * radius * radius * mu + c.dot(y) +
         (y - anchor).squaredNorm() / (2.0 * eta) +
         0.5 * mu * (y - center).squaredNorm();
}

}  // namespace

ProxDomain ProxDomain::Simplex(int n) {
  if (n < 1) throw DomainError("simplex prox domain: n must be >= 1");
  ProxDomain domain;
  domain.prox = ProxSimplex;
  domain.diameter = n > 1 ? std::sqrt(2.0) : 0.0;
  domain.initial = Vector::Constant(n, 1.0 / n);
  domain.contains = [](const Vector& x, double slack) {
    return x.minCoeff() >= -slack && std::abs(x.sum() - 1.0) <= slack;
  };
  domain.name = "simplex";
  return domain;
}

ProxDomain ProxDomain::Ball(Vector center, double radius) {
  if (!(radius > 0.0)) throw DomainError("ball prox domain: radius must be > 0");
  ProxDomain domain;
  domain.prox = [center, radius](const Vector& anchor, const Vector& c,
                                 double eta) {
    return ProxBall(anchor, c, eta, center, radius);
  };
  domain.diameter = 2.0 * radius;
  domain.contains = [center, radius](const Vector& x, double slack) {
    return (x - center).norm() <= radius + slack * (1.0 + radius);
  };
  domain.initial = std::move(center);
  domain.name = "ball";
  return domain;
}

ProxDomain ProxDomain::SimplexBall(Vector center, double radius,
                                   double tolerance) {
  if (!(radius > 0.0)) {
    throw DomainError("simplex-ball prox domain: radius must be > 0");
  }
  if (center.minCoeff() < 0.0 || std::abs(center.sum() - 1.0) > 1e-12) {
    throw DomainError("simplex-ball prox domain: center must be in simplex");
  }
  ProxDomain domain;
  domain.prox = [center, radius, tolerance](const Vector& anchor,
                                            const Vector& c, double eta) {
    return ProxSimplexBall(anchor, c, eta, center, radius, tolerance);
  };
  domain.diameter = std::min(center.size() > 1 ? std::sqrt(2.0) : 0.0,
                             2.0 * radius);
  domain.contains = [center, radius](const Vector& x, double slack) {
    return x.minCoeff() >= -slack && std::abs(x.sum() - 1.0) <= slack &&
           (x - center).norm() <= radius + slack;
  };
  domain.initial = std::move(center);
  domain.name = "simplex_ball";
  return domain;
}

Vector ProxSimplex(const Vector& anchor, const Vector& c, double eta) {
  RequirePositiveStep(eta);
  return ProjectSimplex(anchor - eta * c);
}

Vector ProxBall(const Vector& anchor, const Vector& c, double eta,
                const Vector& center, double radius) {
  RequirePositiveStep(eta);
  if (!(radius > 0.0)) throw DomainError("prox_ball: radius must be > 0");
  const Vector offset = anchor - eta * c - center;
  return center + (radius / std::max(radius, offset.norm())) * offset;
}

double ProxSimplexBallDual(const Vector& anchor, const Vector& c, double eta,
                           const Vector& center, double radius, double mu) {
  const Vector y = SimplexBallPrimal(anchor, c, eta, center, mu);
  return SimplexBallLagrangian(y, anchor, c, eta, center, radius, mu);
}

Vector ProxSimplexBall(const Vector& anchor, const Vector& c, double eta,
                       const Vector& center, double radius, double tolerance) {
  RequirePositiveStep(eta);
  if (!(tolerance > 0.0)) throw DomainError("prox_simplex_ball: tol must be > 0");
  if (!(radius > 0.0)) throw DomainError("prox_simplex_ball: radius must be > 0");
  Vector y = SimplexBallPrimal(anchor, c, eta, center, 0.0);
  if ((y - center).norm() <= radius) return y;

  const auto dual = [&](double mu) {
    return ProxSimplexBallDual(anchor, c, eta, center, radius, mu);
  };
  const double at_zero = dual(0.0);
  double lo = 0.0;
  double hi = (2.0 / (radius * radius)) *
              (c.dot(center) + (center - anchor).squaredNorm() / (2.0 * eta) -
               at_zero);
  hi = std::max(hi, 0.0);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - ratio * (hi - lo);
  double b = lo + ratio * (hi - lo);
  double fa = dual(a);
  double fb = dual(b);
  while (hi - lo > tolerance) {
    if (fa >= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - ratio * (hi - lo);
      fa = dual(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + ratio * (hi - lo);
      fb = dual(b);
    }
  }
  y = SimplexBallPrimal(anchor, c, eta, center, 0.5 * (lo + hi));
  // Pull back along the segment to the center, which stays in the simplex.
  const double distance = (y - center).norm();
  if (distance > radius) y = center + (radius / distance) * (y - center);
  return y;
}

std::string MethodName(FirstOrderMethod method) {
  switch (method) {
    case FirstOrderMethod::kOmd:
      return "omd";
    case FirstOrderMethod::kFtrl:
      return "ftrl";
    case FirstOrderMethod::kOomd:
      return "oomd";
    case FirstOrderMethod::kOftrl:
      return "oftrl";
  }
  return "unknown";
}

bool IsOptimistic(FirstOrderMethod method) {
  return method == FirstOrderMethod::kOomd ||
         method == FirstOrderMethod::kOftrl;
}

double StepRule::At(int t) const {
  if (kind == Kind::kConstant) return scale;
  return scale / std::sqrt(double(t) + 1.0);
}

double TheoreticalStepSize(FirstOrderMethod method, double diameter,
                           double lipschitz, int horizon) {
  if (!(lipschitz > 0.0)) throw DomainError("step size: L must be > 0");
  if (horizon < 1) throw DomainError("step size: T must be >= 1");
  switch (method) {
    case FirstOrderMethod::kOmd:
    case FirstOrderMethod::kFtrl:
      return std::sqrt(2.0) * diameter / (lipschitz * std::sqrt(double(horizon)));
    case FirstOrderMethod::kOomd:
      return 1.0 / (std::sqrt(8.0) * lipschitz);
    case FirstOrderMethod::kOftrl:
      return 1.0 / (2.0 * lipschitz);
  }
  return 0.0;
}

StepRule TunedStepRule(FirstOrderMethod method, double alpha) {
  return IsOptimistic(method) ? StepRule::Constant(alpha)
                              : StepRule::InverseSqrt(alpha);
}

BaselineState MakeBaselineState(FirstOrderMethod method,
                                const ProxDomain& domain) {
  BaselineState state;
  state.method = method;
  state.point = domain.initial;
  state.loss_sum = Vector::Zero(domain.initial.size());
  state.prediction = Vector::Zero(domain.initial.size());
  return state;
}

BaselineState OmdStep(BaselineState state, const ProxDomain& domain,
                      const Vector& loss, double eta) {
  state.point = domain.prox(state.point, loss, eta);
  ++state.t;
  return state;
}

BaselineState FtrlStep(BaselineState state, const ProxDomain& domain,
                       const Vector& loss, double eta) {
  RequirePositiveStep(eta);
  state.loss_sum += loss;
  state.point = domain.prox(Vector::Zero(loss.size()), state.loss_sum, eta / 2);
  ++state.t;
  return state;
}

BaselineState OomdStep(BaselineState state, const ProxDomain& domain,
                       const Vector& loss, double eta) {
  state.point = domain.prox(state.point, loss, eta);
  state.prediction = loss;
  ++state.t;
  return state;
}

BaselineState OftrlStep(BaselineState state, const ProxDomain& domain,
                        const Vector& loss, double eta) {
  RequirePositiveStep(eta);
  state.loss_sum += loss;
  state.prediction = loss;
  state.point = domain.prox(Vector::Zero(loss.size()), state.loss_sum, eta / 2);
  ++state.t;
  return state;
}

Vector BaselineDecision(const BaselineState& state, const ProxDomain& domain,
                        double eta) {
  if (state.t == 0) return domain.initial;
  switch (state.method) {
    case FirstOrderMethod::kOomd:
      return domain.prox(state.point, state.prediction, eta);
    case FirstOrderMethod::kOftrl:
      return domain.prox(Vector::Zero(state.point.size()),
                         state.loss_sum + state.prediction, eta / 2);
    default:
      return state.point;
  }
}

BaselineState BaselineStep(BaselineState state, const ProxDomain& domain,
                           const Vector& loss, double eta) {
  RequireFinite(loss, "loss");
  switch (state.method) {
    case FirstOrderMethod::kOmd:
      return OmdStep(std::move(state), domain, loss, eta);
    case FirstOrderMethod::kFtrl:
      return FtrlStep(std::move(state), domain, loss, eta);
    case FirstOrderMethod::kOomd:
      return OomdStep(std::move(state), domain, loss, eta);
    case FirstOrderMethod::kOftrl:
      return OftrlStep(std::move(state), domain, loss, eta);
  }
  return state;
}

LipschitzPair DroLipschitzBounds(const Matrix& features, const Vector& labels,
                                 double regularizer, double radius_x,
                                 const Vector& center_x) {
  const int m = static_cast<int>(features.rows());
  const int n = static_cast<int>(features.cols());
  if (m == 0 || n == 0) throw DomainError("DRO bounds: empty data");
  if (labels.size() != m) throw DomainError("DRO bounds: label count mismatch");
  double lx = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) lx += std::abs(labels[i] * features(i, j));
  }
  lx += regularizer * m *
        (center_x.lpNorm<1>() + std::sqrt(double(n)) * radius_x);
  double ly_sq = 0.0;
  for (int i = 0; i < m; ++i) {
    const double loss_bound =
        Softplus(std::abs(labels[i]) * radius_x * features.row(i).norm());
    ly_sq += loss_bound * loss_bound;
  }
  return {lx, std::sqrt(ly_sq)};
}

LipschitzPair MdpLipschitzBounds(const Vector& rewards, double discount,
                                 int num_states, int num_actions) {
  if (!(discount > 0.0 && discount < 1.0)) {
    throw DomainError("MDP bounds: discount must lie in (0, 1)");
  }
  const double r_inf = rewards.size() > 0 ? rewards.cwiseAbs().maxCoeff() : 0.0;
  const double radius = std::sqrt(double(num_states)) * r_inf / (1.0 - discount);
  const double l_mu = rewards.norm() + radius * num_actions *
                                           (discount * num_states + 1.0);
  return {2.0, l_mu};
}

}  // namespace blackwell
