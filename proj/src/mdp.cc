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

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "blackwell/problems.h"
#include "blackwell/rng.h"

namespace blackwell {
namespace {

void ValidateMdp(const MdpData& mdp) {
  const int n = mdp.num_states;
  const int na = n * mdp.num_actions;
  if (n < 1 || mdp.num_actions < 1) {
    throw DomainError("MDP: need at least one state and one action");
  }
  if (mdp.transitions.rows() != na || mdp.transitions.cols() != n) {
    throw DomainError("MDP: transition matrix must be (n A) x n");
  }
  if (mdp.rewards.size() != na) throw DomainError("MDP: reward size mismatch");
  if (mdp.initial.size() != n) {
    throw DomainError("MDP: initial distribution size mismatch");
  }
  if (!(mdp.discount > 0.0 && mdp.discount < 1.0)) {
    throw DomainError("MDP: discount must lie in (0, 1)");
  }
  if (!mdp.transitions.allFinite() || mdp.transitions.minCoeff() < 0.0) {
    throw DomainError("MDP: transitions must be finite and nonnegative");
  }
  for (int row = 0; row < na; ++row) {
    if (std::abs(mdp.transitions.row(row).sum() - 1.0) > 1e-9) {
      throw DomainError("MDP: transition row " + std::to_string(row) +
                        " does not sum to 1");
    }
  }
  if (!mdp.rewards.allFinite() || mdp.rewards.minCoeff() < 0.0) {
    throw DomainError("MDP: rewards must be finite and nonnegative");
  }
  if (mdp.initial.minCoeff() < 0.0 ||
      std::abs(mdp.initial.sum() - 1.0) > 1e-9) {
    throw DomainError("MDP: initial distribution must lie in the simplex");
  }
}

// (E v)_{sa} = v_s.
Vector Broadcast(const Vector& v, int num_actions) {
  Vector out(v.size() * num_actions);
  for (Eigen::Index s = 0; s < v.size(); ++s) {
    out.segment(s * num_actions, num_actions).setConstant(v[s]);
  }
  return out;
}

// (E^T mu)_s = sum_a mu_{sa}.
Vector SumActions(const Vector& mu, int num_states, int num_actions) {
  return Eigen::Map<const Matrix>(mu.data(), num_actions, num_states)
      .colwise()
      .sum()
      .transpose();
}

}  // namespace

MdpSaddle::MdpSaddle(MdpData data) : data_(std::move(data)) {
  ValidateMdp(data_);
  radius_ = std::sqrt(static_cast<double>(data_.num_states)) * reward_max() /
            (1.0 - data_.discount);
  if (!(radius_ > 0.0)) throw DomainError("MDP: all rewards are zero");
}

double MdpSaddle::reward_max() const { return data_.rewards.maxCoeff(); }

Vector MdpSaddle::GradX(const Vector& /*v*/, const Vector& mu) const {
  const double lambda = data_.discount;
  return (1.0 - lambda) * data_.initial +
         lambda * (data_.transitions.transpose() * mu) -
         SumActions(mu, data_.num_states, data_.num_actions);
}

Vector MdpSaddle::GradY(const Vector& v, const Vector& /*mu*/) const {
  return data_.rewards + data_.discount * (data_.transitions * v) -
         Broadcast(v, data_.num_actions);
}

double MdpSaddle::Value(const Vector& v, const Vector& mu) const {
  return (1.0 - data_.discount) * data_.initial.dot(v) + mu.dot(GradY(v, mu));
}

double MdpSaddle::Metric(const Vector& v_avg, const Vector& mu_avg) const {
  // F(v, mu) = <GradX(., mu), v> + <mu, r>: the v-ball minimum is
  // -R |GradX| + <mu, r>.
  const double best_mu = (1.0 - data_.discount) * data_.initial.dot(v_avg) +
                         GradY(v_avg, mu_avg).maxCoeff();
  const double best_v =
      -radius_ * GradX(v_avg, mu_avg).norm() + mu_avg.dot(data_.rewards);
  return best_mu - best_v;
}

std::shared_ptr<const ConicDomain> MdpSaddle::ConicDomainX() const {
  return std::make_shared<const ConicDomain>(
      ConicDomain::Ball(Vector::Zero(data_.num_states), radius_));
}

std::shared_ptr<const ConicDomain> MdpSaddle::ConicDomainY() const {
  return std::make_shared<const ConicDomain>(ConicDomain::Simplex(dim_y()));
}

ProxDomain MdpSaddle::ProxDomainX() const {
  return ProxDomain::Ball(Vector::Zero(data_.num_states), radius_);
}

ProxDomain MdpSaddle::ProxDomainY() const {
  return ProxDomain::Simplex(dim_y());
}

LipschitzPair MdpSaddle::Lipschitz() const {
  return MdpLipschitzBounds(data_.rewards, data_.discount, data_.num_states,
                            data_.num_actions);
}

MdpData Garnet(int num_states, int num_actions, double branching,
               double reward_max, std::uint64_t seed, double discount) {
  if (num_states < 1 || num_actions < 1) {
    throw DomainError("Garnet: need at least one state and one action");
  }
  if (!(branching > 0.0 && branching <= 1.0)) {
    throw DomainError("Garnet: branching factor must lie in (0, 1]");
  }
  if (!(reward_max > 0.0)) throw DomainError("Garnet: reward_max must be > 0");
  const int support = std::clamp(
      static_cast<int>(std::ceil(branching * num_states - 1e-9)), 1,
      num_states);
  const int rows = num_states * num_actions;

  Rng rng(seed);
  MdpData mdp;
  mdp.num_states = num_states;
  mdp.num_actions = num_actions;
  mdp.discount = discount;
  mdp.transitions = Matrix::Zero(rows, num_states);
  std::vector<double> cuts(support + 1);
  for (int row = 0; row < rows; ++row) {
    const std::vector<int> next =
        rng.SampleWithoutReplacement(num_states, support);
    cuts.front() = 0.0;
    cuts.back() = 1.0;
    for (int k = 1; k < support; ++k) cuts[k] = rng.Uniform01();
    std::sort(cuts.begin() + 1, cuts.end() - 1);
    for (int k = 0; k < support; ++k) {
      mdp.transitions(row, next[k]) = cuts[k + 1] - cuts[k];
    }
  }
  mdp.rewards.resize(rows);
  for (int row = 0; row < rows; ++row) {
    mdp.rewards[row] = rng.Uniform(0.0, reward_max);
  }
  mdp.initial = Vector::Constant(num_states, 1.0 / num_states);
  return mdp;
}

Vector BellmanOperator(const MdpData& mdp, const Vector& v) {
  const Vector q = mdp.rewards + mdp.discount * (mdp.transitions * v);
  return Eigen::Map<const Matrix>(q.data(), mdp.num_actions, mdp.num_states)
      .colwise()
      .maxCoeff()
      .transpose();
}

ValueIterationResult ValueIteration(const MdpData& mdp, double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("value iteration: tol must be > 0");
  ValidateMdp(mdp);
  ValueIterationResult result;
  result.values = Vector::Zero(mdp.num_states);
  while (true) {
    Vector next = BellmanOperator(mdp, result.values);
    ++result.iterations;
    const double change = (next - result.values).lpNorm<Eigen::Infinity>();
    result.values = std::move(next);
    if (change <= tolerance) break;
  }
  return result;
}

}  // namespace blackwell
