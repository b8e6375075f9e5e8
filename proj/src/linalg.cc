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

#include "blackwell/linalg.h"

#include <algorithm>
#include <cmath>

namespace blackwell {

double LiftedPayoff::Norm() const { return std::sqrt(SquaredNorm()); }

double LiftedPayoff::InfNorm() const {
  double m = std::abs(tilde);
  if (hat.size() > 0) m = std::max(m, hat.cwiseAbs().maxCoeff());
  return m;
}

bool LiftedPayoff::AllFinite() const {
  return std::isfinite(tilde) && hat.allFinite();
}

LiftedPayoff& LiftedPayoff::operator+=(const LiftedPayoff& other) {
  tilde += other.tilde;
  hat += other.hat;
  return *this;
}

LiftedPayoff& LiftedPayoff::operator-=(const LiftedPayoff& other) {
  tilde -= other.tilde;
  hat -= other.hat;
  return *this;
}

LiftedPayoff& LiftedPayoff::operator*=(double scale) {
  tilde *= scale;
  hat *= scale;
  return *this;
}

LiftedPayoff operator+(LiftedPayoff a, const LiftedPayoff& b) {
  a += b;
  return a;
}

LiftedPayoff operator-(LiftedPayoff a, const LiftedPayoff& b) {
  a -= b;
  return a;
}

LiftedPayoff operator*(double scale, LiftedPayoff a) {
  a *= scale;
  return a;
}

void RequireFinite(const Vector& v, const std::string& what) {
  if (!v.allFinite()) throw DomainError(what + " has non-finite entries");
}

void RequireFinite(const LiftedPayoff& u, const std::string& what) {
  if (!u.AllFinite()) throw DomainError(what + " has non-finite entries");
}

}  // namespace blackwell
