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
#include <memory>
#include <vector>

#include "blackwell/learner.h"
#include "blackwell/regret.h"
#include "blackwell/rng.h"
#include "blackwell/verify/oracles.h"

namespace blackwell {
namespace {

using Catch::Approx;

std::shared_ptr<const ConicDomain> Shared(ConicDomain d) {
  return std::make_shared<const ConicDomain>(std::move(d));
}

Vector RandomVector(int n, Rng& rng) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.Normal();
  return v;
}

TEST_CASE("cba+ decision from the aggregate payoff") {
  CbaState s = MakeCbaState(Shared(ConicDomain::Simplex(2)), CbaVariant::kCbaPlus);
  s.u = LiftedPayoff(2.0, Vector{{1.0, 1.0}});
  const Vector x = CbaPlusChoose(s);
  CHECK(x[0] == Approx(0.5));
  CHECK(x[1] == Approx(0.5));

  s.u = LiftedPayoff::Zero(2);
  CHECK((CbaPlusChoose(s) - s.domain->DefaultDecision()).norm() == 0.0);

  s.u = LiftedPayoff(0.5, Vector{{0.3, 0.2}});
  const Vector y = CbaPlusChoose(s);
  CHECK(y[0] == Approx(0.6));
  CHECK(y[1] == Approx(0.4));
  CHECK(y.sum() == Approx(1.0));
}

TEST_CASE("cba+ update") {
  const auto domain = Shared(ConicDomain::Simplex(3));
  CbaState s = MakeCbaState(domain, CbaVariant::kCbaPlus);
  s.u = LiftedPayoff(1.0, Vector{{0.2, 0.5, 0.3}});
  const CbaState same = CbaPlusUpdate(s, CbaPlusChoose(s), Vector::Zero(3), 1.0);
  CHECK((same.u - s.u).Norm() == 0.0);
  CHECK(same.t == 1);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(CbaPlusUpdate(s, CbaPlusChoose(s), Vector{{nan, 0.0, 0.0}}, 1.0),
                  DomainError);
  CHECK_THROWS_AS(CbaPlusUpdate(s, CbaPlusChoose(s), Vector::Ones(3), 0.0),
                  DomainError);

  // Forcing identity and the norm bound over a random sequence.
  Rng rng(1);
  CbaState run = MakeCbaState(domain, CbaVariant::kCbaPlus);
  double max_v = 0.0;
  double omega_sq = 0.0;
  for (int t = 1; t <= 100; ++t) {
    const Vector x = CbaPlusChoose(run);
    const Vector f = RandomVector(3, rng);
    const LiftedPayoff v = PayoffVector(*domain, x, f);
    CHECK(std::abs(run.u.Dot(v)) <= 1e-12 * (1.0 + run.u.Norm() * v.Norm()));
    max_v = std::max(max_v, v.Norm());
    omega_sq += 1.0;
    run = CbaPlusUpdate(std::move(run), x, f, 1.0);
  }
  CHECK(run.u.Norm() <= max_v * std::sqrt(omega_sq));
}

TEST_CASE("cba decision projects first") {
  const auto domain = Shared(ConicDomain::Simplex(3));
  CbaState plus = MakeCbaState(domain, CbaVariant::kCbaPlus);
  CbaState plain = MakeCbaState(domain, CbaVariant::kCba);
  plus.u = plain.u = LiftedPayoff(1.0, Vector{{0.2, 0.5, 0.3}});
  CHECK((CbaChoose(plain) - CbaPlusChoose(plus)).norm() <= 1e-15);

  plain.u = LiftedPayoff(-1.0, Vector{{-2.0, -1.5, -3.0}});
  CHECK((CbaChoose(plain) - domain->DefaultDecision()).norm() == 0.0);

  Rng rng(2);
  for (int k = 0; k < 1000; ++k) {
    plain.u = LiftedPayoff(rng.Normal(), RandomVector(3, rng));
    CHECK(domain->Contains(CbaChoose(plain), 1e-12));
  }
}

TEST_CASE("cba update accumulates without projection") {
  const auto domain = Shared(ConicDomain::L2Ball(4));
  Rng rng(3);
  CbaState s = MakeCbaState(domain, CbaVariant::kCba, WeightSchedule{1, 1});
  const CbaState same = CbaUpdate(s, CbaChoose(s), Vector::Zero(4), 1.0);
  CHECK((same.u - s.u).Norm() == 0.0);

  LiftedPayoff sum = LiftedPayoff::Zero(4);
  double max_v = 0.0;
  double omega_sq = 0.0;
  for (int t = 1; t <= 200; ++t) {
    const Vector x = CbaChoose(s);
    const Vector f = RandomVector(4, rng);
    const double w = s.schedule.PayoffWeight(t);
    const LiftedPayoff v = PayoffVector(*domain, x, f);
    sum += w * v;
    max_v = std::max(max_v, v.Norm());
    omega_sq += w * w;
    s = CbaUpdate(std::move(s), x, f, w);
  }
  CHECK((s.u - sum).Norm() <= 1e-12 * (1.0 + sum.Norm()));
  CHECK(DistanceToPolar(s.u, domain->kind()) <=
        max_v * std::sqrt(omega_sq) * (1.0 + 1e-12));
}

TEST_CASE("regret matching steps") {
  const Vector x{{1.0 / 3, 1.0 / 3, 1.0 / 3}};
  // Regrets all nonpositive give the uniform decision.
  const RegretMatchingStep neg = RmStep(Vector{{-1.0, -2.0, -0.5}}, x,
                                        Vector::Zero(3));
  CHECK((neg.decision - x).norm() <= 1e-15);
  CHECK((RegretMatchingDecision(Vector{{2.0, 0.0, 0.0}}) -
         Vector{{1.0, 0.0, 0.0}})
            .norm() == 0.0);

  // At x = e1 the increment <f, x> e - f = (0, -1, -1) is nonpositive.
  const RegretMatchingStep zero =
      RmPlusStep(Vector::Zero(3), Vector{{1.0, 0.0, 0.0}}, Vector{{0.0, 1.0, 1.0}});
  CHECK(zero.regrets.norm() == 0.0);
  CHECK((zero.decision - x).norm() <= 1e-15);

  // Increment <f, x> e - f = (-3, 1) at x = (1/4, 3/4), f = (3, -1).
  const RegretMatchingStep step =
      RmPlusStep(Vector{{1.0, 2.0}}, Vector{{0.25, 0.75}}, Vector{{3.0, -1.0}});
  CHECK(step.regrets[0] == 0.0);
  CHECK(step.regrets[1] == Approx(3.0));
  CHECK(step.decision[0] == 0.0);
  CHECK(step.decision[1] == Approx(1.0));

  const RegretMatchingStep plain =
      RmStep(Vector{{1.0, 2.0}}, Vector{{0.25, 0.75}}, Vector{{3.0, -1.0}});
  CHECK(plain.regrets[0] == Approx(-2.0));
}

TEST_CASE("regret matching average regret decays on a bilinear game") {
  const Matrix a{{0.0, 1.0, -1.0}, {-1.0, 0.0, 1.0}, {1.0, -1.0, 0.3}};
  for (bool plus : {false, true}) {
    RegretMatchingLearner xl(3, plus), yl(3, plus);
    RegretLedger ledger(3);
    const ConicDomain simplex = ConicDomain::Simplex(3);
    std::vector<double> log_t, log_r;
    for (int t = 1; t <= 4000; ++t) {
      const Vector x = xl.Choose();
      const Vector y = yl.Choose();
      const Vector f = a * y;
      ledger.Record(x, f, 1.0);
      xl.Observe(x, f, 1.0);
      yl.Observe(y, -a.transpose() * x, 1.0);
      if (t >= 100 && t % 100 == 0) {
        log_t.push_back(std::log(double(t)));
        log_r.push_back(std::log(std::max(ledger.Regret(simplex), 1e-12) / t));
      }
    }
    double mt = 0, mr = 0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
      mt += log_t[i];
      mr += log_r[i];
    }
    mt /= log_t.size();
    mr /= log_r.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
      num += (log_t[i] - mt) * (log_r[i] - mr);
      den += (log_t[i] - mt) * (log_t[i] - mt);
    }
    INFO("plus=" << plus);
    CHECK(num / den <= -0.35);
  }
}

TEST_CASE("weighted regret accounting") {
  const ConicDomain simplex = ConicDomain::Simplex(3);
  const Vector c{{0.5, -1.0, 2.0}};
  std::vector<Vector> xs = {Vector{{1.0, 0.0, 0.0}}, Vector{{0.0, 0.0, 1.0}},
                            Vector{{0.2, 0.3, 0.5}}};
  std::vector<Vector> fs(3, c);
  std::vector<double> ws = {1.0, 2.0, 3.0};
  double expected = 0.0;
  for (int t = 0; t < 3; ++t) expected += ws[t] * (c.dot(xs[t]) - c.minCoeff());
  CHECK(WeightedRegret(xs, fs, ws, simplex) == Approx(expected));

  const Vector f{{0.3, 0.1, 0.7}};
  const std::vector<Vector> best = {simplex.LinearMin(f)};
  const std::vector<Vector> one = {f};
  const std::vector<double> unit = {1.0};
  CHECK(WeightedRegret(best, one, unit, simplex) == Approx(0.0).margin(1e-15));

  const std::vector<double> two = {1.0, 1.0};
  CHECK_THROWS_AS(WeightedRegret(best, one, two, simplex), DomainError);
}

TEST_CASE("weight schedules") {
  CHECK(WeightSchedule{1, 2}.DecisionWeight(7) == 49.0);
  CHECK(WeightSchedule{1, 2}.PayoffWeight(7) == 7.0);
  CHECK(WeightSchedule::Uniform().PayoffWeight(1000) == 1.0);
  CHECK_THROWS_AS(WeightSchedule({2, 1}).Validate(), DomainError);
  // t^p stays exact in double precision at the largest supported horizon.
  CHECK(WeightSchedule{2, 2}.PayoffWeight(1000000) == 1e12);
}

struct TraceStats {
  double regret = 0.0;
  double bound = 0.0;
};

TraceStats RunCba(const std::shared_ptr<const ConicDomain>& domain,
                  CbaVariant variant, WeightSchedule schedule, int horizon,
                  Rng& rng) {
  CbaState s = MakeCbaState(domain, variant, schedule);
  RegretLedger ledger(domain->dim());
  double max_v = 0.0;
  double omega_sq = 0.0;
  for (int t = 1; t <= horizon; ++t) {
    const Vector x = Choose(s);
    const Vector f = RandomVector(domain->dim(), rng) + Vector::Ones(domain->dim());
    const double w = schedule.PayoffWeight(t);
    max_v = std::max(max_v, PayoffVector(*domain, x, f).Norm());
    omega_sq += w * w;
    ledger.Record(x, f, schedule.DecisionWeight(t));
    s = Update(std::move(s), x, f, w);
  }
  const double ratio =
      schedule.DecisionWeight(horizon) / schedule.PayoffWeight(horizon);
  return {ledger.Regret(*domain), std::sqrt(2.0) * domain->kappa() * max_v *
                                      ratio * std::sqrt(omega_sq) *
                                      domain->regret_scale()};
}

TEST_CASE("cba regret bound for p in {0, 1, 2}") {
  Rng rng(4);
  for (int p : {0, 1, 2}) {
    for (const auto& domain :
         {Shared(ConicDomain::Simplex(5)), Shared(ConicDomain::L1Ball(5)),
          Shared(ConicDomain::Ball(Vector::Constant(5, 1.0), 2.0))}) {
      for (int k = 0; k < 10; ++k) {
        const TraceStats s = RunCba(domain, CbaVariant::kCba, {p, p}, 300, rng);
        CHECK(s.regret <= s.bound);
      }
    }
  }
}

TEST_CASE("cba+ regret bound for mixed weights") {
  Rng rng(5);
  for (WeightSchedule w : {WeightSchedule{0, 0}, WeightSchedule{0, 1},
                           WeightSchedule{1, 1}, WeightSchedule{1, 2}}) {
    for (int k = 0; k < 20; ++k) {
      const TraceStats s = RunCba(Shared(ConicDomain::LInfBall(4)),
                                  CbaVariant::kCbaPlus, w, 300, rng);
      CHECK(s.regret <= s.bound);
    }
  }
}

TEST_CASE("cba+ aggregate stays in the cone and stays non-degenerate") {
  Rng rng(6);
  Vector center(5);
  for (int i = 0; i < 5; ++i) center[i] = 1.0 + rng.Uniform01();
  center /= center.sum();
  for (const auto& domain :
       {Shared(ConicDomain::Simplex(5)), Shared(ConicDomain::L2Ball(5)),
        Shared(ConicDomain::EllipsoidInSimplex(center, 0.5 * center.minCoeff()))}) {
    const verify::ReferenceSet ref = verify::ReferenceFor(domain->kind());
    for (CbaVariant variant : {CbaVariant::kCbaPlus, CbaVariant::kCba}) {
      CbaState s = MakeCbaState(domain, variant);
      bool started = false;
      for (int t = 1; t <= 500; ++t) {
        const Vector x = Choose(s);
        CHECK(domain->Contains(x, 1e-8));
        s = Update(std::move(s), x, RandomVector(domain->dim(), rng), 1.0);
        const double norm = DecisionAnchor(s).Norm();
        if (started) CHECK(norm > 0.0);
        started = started || norm > 0.0;
        if (variant == CbaVariant::kCbaPlus) {
          CHECK(ref.cone_violation(s.u) <= 1e-8 * (1.0 + s.u.Norm()));
        }
      }
    }
  }
}

TEST_CASE("learner wrappers") {
  CbaLearner learner(Shared(ConicDomain::Simplex(2)), CbaVariant::kCbaPlus);
  CHECK(learner.name() == "cba_plus");
  CHECK(learner.dim() == 2);
  const Vector x = learner.Choose();
  learner.Observe(x, Vector{{1.0, 0.0}}, 1.0);
  CHECK(learner.Choose()[1] == Approx(1.0));
  RegretMatchingLearner rm(2, true);
  CHECK(rm.name() == "rm_plus");
  rm.Observe(rm.Choose(), Vector{{1.0, 0.0}}, 1.0);
  CHECK(rm.Choose()[1] == Approx(1.0));
}

TEST_CASE("rejected observations leave learners intact") {
  const auto simplex =
      std::make_shared<const ConicDomain>(ConicDomain::Simplex(3));
  const Vector loss{{1.0, 0.0, 0.5}};
  for (CbaVariant variant : {CbaVariant::kCba, CbaVariant::kCbaPlus}) {
    CbaLearner learner(simplex, variant);
    learner.Observe(learner.Choose(), loss, 1.0);
    const Vector before = learner.Choose();
    CHECK_THROWS_AS(learner.Observe(before, loss, -1.0), DomainError);
    CHECK(learner.dim() == 3);
    CHECK(learner.Choose() == before);
  }
  FirstOrderLearner omd(FirstOrderMethod::kOmd, ProxDomain::Simplex(3),
                        StepRule::Constant(0.1));
  omd.Observe(omd.Choose(), loss, 1.0);
  const Vector before = omd.Choose();
  const Vector bad{{1.0, std::nan(""), 0.0}};
  CHECK_THROWS_AS(omd.Observe(before, bad, 1.0), DomainError);
  CHECK(omd.Choose() == before);
}

}  // namespace
}  // namespace blackwell
