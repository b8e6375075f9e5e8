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
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "blackwell/cone_projection.h"
#include "blackwell/problems.h"
#include "blackwell/rng.h"

namespace blackwell {
namespace {

// log(1 + exp(z)).
double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

// 1 / (1 + exp(-z)).
double Logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

DroData MakeDroData(Matrix features, Vector labels) {
  const int m = static_cast<int>(features.rows());
  const int n = static_cast<int>(features.cols());
  if (m < 1 || n < 1) throw DomainError("DRO data: empty feature matrix");
  DroData data;
  data.features = std::move(features);
  data.labels = std::move(labels);
  data.center_x = Vector::Constant(n, 1.0 / n);
  data.radius_x = 10.0;
  data.center_y = Vector::Constant(m, 1.0 / m);
  data.radius_y = 1.0 / (2.0 * m);
  data.regularizer = 0.1;
  return data;
}

DroLogistic::DroLogistic(DroData data) : data_(std::move(data)) {
  const auto m = data_.features.rows();
  const auto n = data_.features.cols();
  if (m < 1 || n < 1) throw DomainError("DRO: empty feature matrix");
  if (data_.labels.size() != m) throw DomainError("DRO: label count mismatch");
  for (int i = 0; i < m; ++i) {
    if (data_.labels[i] != 1.0 && data_.labels[i] != -1.0) {
      throw DomainError("DRO: labels must be -1 or 1");
    }
  }
  if (data_.center_x.size() != n || data_.center_y.size() != m) {
    throw DomainError("DRO: center dimensions do not match the data");
  }
  if (!(data_.radius_x > 0.0) || !(data_.radius_y > 0.0)) {
    throw DomainError("DRO: radii must be positive");
  }
  if (data_.center_y.minCoeff() < 0.0 ||
      std::abs(data_.center_y.sum() - 1.0) > 1e-12) {
    throw DomainError("DRO: center_y must lie in the simplex");
  }
  if (data_.regularizer < 0.0) throw DomainError("DRO: regularizer must be >= 0");
}

Vector DroLogistic::Losses(const Vector& x) const {
  const Vector margins = data_.labels.cwiseProduct(data_.features * x);
  return margins.unaryExpr([](double z) { return Softplus(-z); });
}

Vector DroLogistic::GradX(const Vector& x, const Vector& y) const {
  const Vector margins = data_.labels.cwiseProduct(data_.features * x);
  Vector coef(margins.size());
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    coef[i] = -y[i] * data_.labels[i] * Logistic(-margins[i]);
  }
  return data_.features.transpose() * coef + data_.regularizer * x;
}

Vector DroLogistic::GradY(const Vector& x, const Vector& /*y*/) const {
  return Losses(x);
}

double DroLogistic::Value(const Vector& x, const Vector& y) const {
  return y.dot(Losses(x)) + 0.5 * data_.regularizer * x.squaredNorm();
}

double DroLogistic::WorstCaseLoss(const Vector& x) const {
  const Vector losses = Losses(x);
  const Vector y =
      MaximizeOverSimplexBall(losses, data_.center_y, data_.radius_y);
  return y.dot(losses) + 0.5 * data_.regularizer * x.squaredNorm();
}

double DroLogistic::Metric(const Vector& x_avg, const Vector& /*y_avg*/) const {
  return WorstCaseLoss(x_avg);
}

std::shared_ptr<const ConicDomain> DroLogistic::ConicDomainX() const {
  return std::make_shared<const ConicDomain>(
      ConicDomain::Ball(data_.center_x, data_.radius_x));
}

std::shared_ptr<const ConicDomain> DroLogistic::ConicDomainY() const {
  return std::make_shared<const ConicDomain>(
      ConicDomain::EllipsoidInSimplex(data_.center_y, data_.radius_y));
}

ProxDomain DroLogistic::ProxDomainX() const {
  return ProxDomain::Ball(data_.center_x, data_.radius_x);
}

ProxDomain DroLogistic::ProxDomainY() const {
  return ProxDomain::SimplexBall(data_.center_y, data_.radius_y);
}

LipschitzPair DroLogistic::Lipschitz() const {
  return DroLipschitzBounds(data_.features, data_.labels, data_.regularizer,
                            data_.radius_x, data_.center_x);
}

DroData SyntheticDroData(int n, int m, Distribution dist,
                         double flip_fraction, std::uint64_t seed) {
  if (n < 1 || m < 1) throw DomainError("DRO synthetic: n and m must be >= 1");
  if (!(flip_fraction >= 0.0 && flip_fraction <= 1.0)) {
    throw DomainError("DRO synthetic: flip fraction must lie in [0, 1]");
  }
  Rng rng(seed);
  Vector planted(n);
  for (int j = 0; j < n; ++j) planted[j] = rng.Normal();
  Matrix features(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      features(i, j) =
          dist == Distribution::kUniform01 ? rng.Uniform01() : rng.Normal();
    }
  }
  Vector labels = (features * planted).unaryExpr(
      [](double z) { return z >= 0.0 ? 1.0 : -1.0; });
  const int flips = static_cast<int>(std::floor(flip_fraction * m + 1e-9));
  std::vector<int> flipped = rng.SampleWithoutReplacement(m, flips);
  for (int i : flipped) labels[i] = -labels[i];
  std::sort(flipped.begin(), flipped.end());

  DroData data = MakeDroData(std::move(features), std::move(labels));
  data.planted = std::move(planted);
  data.flipped = std::move(flipped);
  return data;
}

Vector MaximizeOverSimplexBall(const Vector& c, const Vector& center,
                               double radius) {
  if (!(radius > 0.0)) throw DomainError("simplex-ball max: radius must be > 0");
  // y(mu) = argmax <c, y> - (mu / 2) |y - center|^2 over the simplex; its
  // distance to the center decreases in mu. The optimum is y(mu*) for the
  // smallest mu* with distance <= radius.
  const double c_norm = c.norm();
  const auto primal = [&](double mu) {
    return ProjectSimplex(center + c / mu);
  };
  const auto distance = [&](double mu) { return (primal(mu) - center).norm(); };
  if (c_norm == 0.0) return center;
  double hi = c_norm / radius;  // distance(hi) <= radius by nonexpansiveness
  double lo = hi * 1e-12;
  if (distance(lo) <= radius) return primal(lo);
  for (int iter = 0; iter < 200 && hi / lo > 1.0 + 1e-14; ++iter) {
    const double mid = std::sqrt(lo * hi);
    if (distance(mid) <= radius) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  Vector y = primal(hi);
  const double d = (y - center).norm();
  if (d > radius) y = center + (radius / d) * (y - center);
  return y;
}

LabeledData LoadSparseDataset(std::istream& in, int num_features) {
  struct Row {
    double label;
    std::vector<std::pair<int, double>> entries;
  };
  std::vector<Row> rows;
  int width = 0;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream tokens(line);
    Row row;
    if (!(tokens >> row.label)) {
      throw DomainError("dataset line " + std::to_string(line_number) +
                        ": missing label");
    }
    std::string token;
    while (tokens >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos) {
        throw DomainError("dataset line " + std::to_string(line_number) +
                          ": expected index:value, got '" + token + "'");
      }
      const int index = std::stoi(token.substr(0, colon));
      const double value = std::stod(token.substr(colon + 1));
      if (index < 1) {
        throw DomainError("dataset line " + std::to_string(line_number) +
                          ": indices are 1-based");
      }
      width = std::max(width, index);
      row.entries.emplace_back(index - 1, value);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DomainError("dataset is empty");
  if (num_features > 0) {
    if (width > num_features) {
      throw DomainError("dataset has feature index beyond num_features");
    }
    width = num_features;
  }
  LabeledData data;
  data.features = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), width);
  data.labels.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    data.labels[i] = rows[i].label > 0.0 ? 1.0 : -1.0;
    for (const auto& [j, value] : rows[i].entries) data.features(i, j) = value;
  }
  return data;
}

LabeledData LoadSparseDataset(const std::string& path, int num_features) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open dataset '" + path + "'");
  return LoadSparseDataset(in, num_features);
}

}  // namespace blackwell
