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

#include "blackwell/verify/acceptance.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iterator>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "blackwell/experiment.h"
#include "blackwell/learner.h"
#include "blackwell/problems.h"
#include "blackwell/regret.h"
#include "blackwell/rng.h"
#include "blackwell/saddle.h"
#include "blackwell/verify/oracles.h"

namespace blackwell::verify {
namespace {

namespace fs = std::filesystem;

CriterionResult Blank(int id, const char* name) {
  CriterionResult result;
  result.id = id;
  result.name = name;
  return result;
}

std::string Sci(double value) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << value;
  return out.str();
}

// A random interior point of the simplex with every coordinate at least
// 0.5 / n, and a radius that keeps the ball inside the simplex.
struct Slice {
  Vector center;
  double radius;
};

Slice RandomSlice(int n, Rng& rng) {
  Vector center(n);
  for (int i = 0; i < n; ++i) center[i] = 1.0 + rng.Uniform01();
  center /= center.sum();
  return {center, 0.9 * center.minCoeff()};
}

struct KindCase {
  ConeKind kind;
  ReferenceSet reference;
};

KindCase MakeKindCase(int family, int n, Rng& rng) {
  switch (family) {
    case 0:
      return {SimplexCone{n}, SimplexReference(n)};
    case 1:
      return {L1BallCone{n}, L1BallReference(n)};
    case 2:
      return {L2BallCone{n}, L2BallReference(n)};
    case 3:
      return {LInfBallCone{n}, LInfBallReference(n)};
    case 4: {
      // The slice cone lives in dimension n - 1, so the ambient simplex has
      // n + 1 coordinates.
      Slice slice = RandomSlice(n + 1, rng);
      ConeKind kind = EllipsoidSimplexCone{slice.center, slice.radius};
      ReferenceSet reference = ReferenceFor(kind);
      return {std::move(kind), std::move(reference)};
    }
    default:
      return {GenericBisection{n, ProjectSimplex, 1.0, 1e-10},
              SimplexReference(n)};
  }
}

constexpr const char* kFamilyNames[] = {"simplex", "l1", "l2", "linf",
                                        "ellipsoid", "generic"};

CriterionResult ProjectionCorrectness(const AcceptanceOptions& options) {
  constexpr int kSamples = 1000;
  constexpr double kMoreauTol = 1e-9;
  constexpr double kOracleTol = 1e-6;
  CriterionResult result = Blank(1, "projection_correctness");
  result.threshold = kMoreauTol;
  result.time_limit_seconds = 120.0;
  Rng rng(1001);
  double worst_moreau = 0.0;
  double worst_oracle = 0.0;
  std::string worst_family;
  for (int family = 0; family < 6; ++family) {
    for (int sample = 0; sample < kSamples; ++sample) {
      const int n = 2 + rng.UniformInt(9);
      KindCase c = MakeKindCase(family, n, rng);
      const int dim = ConeDim(c.kind);
      const double scale = std::pow(10.0, rng.Uniform(-2.0, 2.0));
      LiftedPayoff u(scale * rng.Normal(), Vector(dim));
      for (int i = 0; i < dim; ++i) u.hat[i] = scale * rng.Normal();

      LiftedPayoff pi = ProjectCone(u, c.kind);
      if (options.inject_projection_bug) pi.hat *= 1.01;
      const double moreau = CheckMoreau(u, pi, c.reference).Relative(u);
      const LiftedPayoff ref = ReferenceConeProjection(u, c.reference);
      const double oracle = (pi - ref).Norm() / (1.0 + u.Norm());
      if (moreau > worst_moreau) worst_family = kFamilyNames[family];
      worst_moreau = std::max(worst_moreau, moreau);
      worst_oracle = std::max(worst_oracle, oracle);
    }
  }
  result.measured = worst_moreau;
  result.passed = worst_moreau <= kMoreauTol && worst_oracle <= kOracleTol;
  result.detail = "6 cone kinds x " + std::to_string(kSamples) +
                  " vectors; worst Moreau residual " + Sci(worst_moreau) +
                  " (" + worst_family + "), worst oracle distance " +
                  Sci(worst_oracle) + " (limit " + Sci(kOracleTol) + ")";
  return result;
}

std::vector<std::shared_ptr<const ConicDomain>> TestDomains(int n, Rng& rng) {
  Slice slice = RandomSlice(n, rng);
  return {std::make_shared<const ConicDomain>(ConicDomain::Simplex(n)),
          std::make_shared<const ConicDomain>(ConicDomain::L2Ball(n)),
          std::make_shared<const ConicDomain>(
              ConicDomain::EllipsoidInSimplex(slice.center, slice.radius))};
}

Vector NormalVector(int n, double scale, Rng& rng) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = scale * rng.Normal();
  return v;
}

CriterionResult ForcingAndRecursion(const AcceptanceOptions&) {
  constexpr int kHorizon = 1000;
  constexpr double kOrthTol = 1e-8;
  constexpr double kRecursionTol = 1e-9;
  CriterionResult result = Blank(2, "forcing_and_recursion");
  result.threshold = kOrthTol;
  result.time_limit_seconds = 60.0;
  Rng rng(2002);
  double worst_orth = 0.0;
  double worst_recursion = 0.0;
  int runs = 0;
  for (const auto& domain : TestDomains(8, rng)) {
    for (CbaVariant variant : {CbaVariant::kCbaPlus, CbaVariant::kCba}) {
      for (int p : {0, 1}) {
        const WeightSchedule schedule{p, p};
        CbaState state = MakeCbaState(domain, variant, schedule);
        for (int t = 1; t <= kHorizon; ++t) {
          const double w = schedule.PayoffWeight(t);
          const LiftedPayoff anchor = DecisionAnchor(state);
          const Vector x = Choose(state);
          const Vector loss = NormalVector(domain->dim(), 1.0, rng);
          const LiftedPayoff v = PayoffVector(*domain, x, loss);
          const double orth = std::abs(anchor.Dot(v)) /
                              std::max(1.0, anchor.Norm() * v.Norm());
          worst_orth = std::max(worst_orth, orth);
          state = Update(std::move(state), x, loss, w);
          const double before = anchor.SquaredNorm() + w * w * v.SquaredNorm();
          const double after = DecisionAnchor(state).SquaredNorm();
          worst_recursion =
              std::max(worst_recursion, (after - before) / (1.0 + before));
        }
        ++runs;
      }
    }
  }
  result.measured = worst_orth;
  result.passed = worst_orth <= kOrthTol && worst_recursion <= kRecursionTol;
  result.detail = std::to_string(runs) +
                  " runs of 1000 steps on simplex, l2 ball, ellipsoid slice; "
                  "worst scaled |<anchor, v>| " +
                  Sci(worst_orth) + ", worst norm recursion excess " +
                  Sci(std::max(worst_recursion, 0.0)) + " (limit " +
                  Sci(kRecursionTol) + ")";
  return result;
}

// Adversarial-looking loss sequences: drifting bias, sign flips, noise.
std::vector<Vector> LossSequence(int n, int horizon, Rng& rng) {
  const int mode = rng.UniformInt(3);
  const double scale = std::pow(10.0, rng.Uniform(-1.0, 1.0));
  const Vector bias = NormalVector(n, 1.0, rng);
  const int period = 1 + rng.UniformInt(20);
  std::vector<Vector> losses;
  losses.reserve(horizon);
  for (int t = 0; t < horizon; ++t) {
    Vector f = NormalVector(n, 1.0, rng);
    if (mode == 1) f = bias + 0.3 * f;
    if (mode == 2) f = ((t / period) % 2 == 0 ? 1.0 : -1.0) * bias + 0.1 * f;
    losses.push_back(scale * f);
  }
  return losses;
}

CriterionResult RegretBounds(const AcceptanceOptions&) {
  constexpr int kSequences = 100;
  constexpr int kHorizon = 200;
  const WeightSchedule kSchedules[] = {{0, 0}, {0, 1}, {1, 1}, {1, 2}};
  CriterionResult result = Blank(3, "regret_bounds");
  result.threshold = 1.0;
  result.time_limit_seconds = 120.0;
  Rng rng(3003);
  Slice slice = RandomSlice(6, rng);
  const std::vector<std::shared_ptr<const ConicDomain>> domains = {
      std::make_shared<const ConicDomain>(ConicDomain::Simplex(6)),
      std::make_shared<const ConicDomain>(ConicDomain::L1Ball(6)),
      std::make_shared<const ConicDomain>(ConicDomain::L2Ball(6)),
      std::make_shared<const ConicDomain>(ConicDomain::LInfBall(6)),
      std::make_shared<const ConicDomain>(
          ConicDomain::EllipsoidInSimplex(slice.center, slice.radius))};
  int violations = 0;
  int checks = 0;
  double worst_ratio = 0.0;
  for (const WeightSchedule& schedule : kSchedules) {
    for (int s = 0; s < kSequences; ++s) {
      const auto& domain = domains[s % domains.size()];
      const std::vector<Vector> losses =
          LossSequence(domain->dim(), kHorizon, rng);
      for (CbaVariant variant : {CbaVariant::kCbaPlus, CbaVariant::kCba}) {
        // The CBA guarantee weights decisions and payoffs alike.
        const WeightSchedule used =
            variant == CbaVariant::kCba
                ? WeightSchedule{schedule.payoff_exponent,
                                 schedule.payoff_exponent}
                : schedule;
        CbaState state = MakeCbaState(domain, variant, used);
        RegretLedger ledger(domain->dim());
        double max_payoff = 0.0;
        double omega_sq = 0.0;
        for (int t = 1; t <= kHorizon; ++t) {
          const Vector x = Choose(state);
          const Vector& f = losses[t - 1];
          const double w = used.PayoffWeight(t);
          max_payoff =
              std::max(max_payoff, PayoffVector(*domain, x, f).Norm());
          omega_sq += w * w;
          ledger.Record(x, f, used.DecisionWeight(t));
          state = Update(std::move(state), x, f, w);
        }
        const double ratio_tw =
            used.DecisionWeight(kHorizon) / used.PayoffWeight(kHorizon);
        const double bound = std::sqrt(2.0) * domain->kappa() * max_payoff *
                             ratio_tw * std::sqrt(omega_sq) *
                             domain->regret_scale();
        const double regret = ledger.Regret(*domain);
        ++checks;
        if (regret > bound * (1.0 + 1e-9) + 1e-9) ++violations;
        if (bound > 0.0) worst_ratio = std::max(worst_ratio, regret / bound);
      }
    }
  }
  result.measured = worst_ratio;
  result.passed = violations == 0;
  result.detail = std::to_string(checks) + " runs (CBA+ and CBA, 4 weight " +
                  "schedules, 100 sequences each); violations " +
                  std::to_string(violations) + ", worst regret/bound " +
                  Sci(worst_ratio);
  return result;
}

CriterionResult AlternationImprovement(const AcceptanceOptions&) {
  constexpr int kHorizon = 1000;
  constexpr double kSlack = 1e-8;
  CriterionResult result = Blank(4, "alternation_improvement");
  result.threshold = kSlack;
  result.time_limit_seconds = 60.0;
  const int kSizes[][2] = {{2, 2}, {10, 10}, {50, 20}};
  double worst_excess = -std::numeric_limits<double>::infinity();
  int checked = 0;
  int persistence_failures = 0;
  int traces = 0;
  for (const auto& size : kSizes) {
    for (int seed = 0; seed < 4; ++seed) {
      for (int p : {0, 1}) {
        const Distribution dist =
            seed % 2 == 0 ? Distribution::kUniform01 : Distribution::kNormal01;
        const MatrixGame game = RandomMatrixGame(
            size[0], size[1], dist, 4000 + 10 * seed + size[0]);
        CbaLearner x_learner(game.ConicDomainX(), CbaVariant::kCbaPlus);
        CbaLearner y_learner(game.ConicDomainY(), CbaVariant::kCbaPlus);
        std::vector<LiftedPayoff> ux(1, x_learner.state().u);
        std::vector<LiftedPayoff> uy(1, y_learner.state().u);
        RunOptions options;
        options.iterations = kHorizon;
        options.schedule = WeightSchedule{p, p + 1};
        options.record_iterates = true;
        options.measure_time = false;
        options.metric_every = kHorizon;
        options.on_iteration = [&](int, const Learner& xl, const Learner& yl) {
          ux.push_back(static_cast<const CbaLearner&>(xl).state().u);
          uy.push_back(static_cast<const CbaLearner&>(yl).state().u);
        };
        const RunTrace trace =
            RunAlternating(game, x_learner, y_learner, options);
        const double kappa = game.ConicDomainX()->kappa();
        for (const IterationRecord& r : trace.records) {
          const LiftedPayoff& now = ux[r.t];
          const LiftedPayoff& prev = ux[r.t - 1];
          if (now.InfNorm() == 0.0 || prev.InfNorm() == 0.0) continue;
          const double bound = -kappa / (r.payoff_weight * now.InfNorm()) *
                               (now - prev).SquaredNorm();
          worst_excess = std::max(worst_excess, r.cross_term - bound);
          ++checked;
        }
        for (const auto* us : {&ux, &uy}) {
          for (std::size_t t = 1; t + 1 < us->size(); ++t) {
            if ((*us)[t].InfNorm() != 0.0 && (*us)[t + 1].InfNorm() == 0.0) {
              ++persistence_failures;
            }
          }
        }
        ++traces;
      }
    }
  }
  result.measured = worst_excess;
  result.passed = worst_excess <= kSlack && persistence_failures == 0;
  result.detail = std::to_string(traces) + " traces, " +
                  std::to_string(checked) +
                  " non-degenerate iterations; worst excess over the bound " +
                  Sci(worst_excess) + ", non-degeneracy lost " +
                  std::to_string(persistence_failures) + " times";
  return result;
}

// Least-squares slope of log(value) against log(iteration).
double LogLogSlope(const std::vector<MetricSample>& samples, int from, int to) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (const MetricSample& s : samples) {
    if (s.iteration < from || s.iteration > to || !(s.value > 0.0)) continue;
    const double lx = std::log(double(s.iteration));
    const double ly = std::log(s.value);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2) throw std::runtime_error("slope: too few samples");
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

double FinalMetric(const RunTrace& trace) {
  if (trace.samples.empty()) throw std::runtime_error("run has no samples");
  return trace.samples.back().value;
}

CriterionResult MatrixGameConvergence(const AcceptanceOptions&) {
  constexpr int kHorizon = 1000;
  constexpr double kSlopeLimit = -0.5 + 0.15;
  constexpr double kFactor = 2.0;
  CriterionResult result = Blank(5, "matrix_game_convergence");
  result.threshold = kSlopeLimit;
  result.time_limit_seconds = 300.0;
  double worst_slope = -std::numeric_limits<double>::infinity();
  double sp_sum = 0.0;
  double rm_sum = 0.0;
  for (int seed = 0; seed < 10; ++seed) {
    const MatrixGame game =
        RandomMatrixGame(100, 50, Distribution::kUniform01, seed);
    RunOptions options;
    options.iterations = kHorizon;
    options.metric_every = 10;
    options.measure_time = false;
    const RunTrace sp = SpCbaPlus(game, options);
    worst_slope = std::max(worst_slope, LogLogSlope(sp.samples, 100, 1000));
    sp_sum += FinalMetric(sp);

    options.schedule = WeightSchedule::LinearAveraging();
    RegretMatchingLearner x_learner(game.dim_x(), true);
    RegretMatchingLearner y_learner(game.dim_y(), true);
    rm_sum += FinalMetric(RunAlternating(game, x_learner, y_learner, options));
  }
  const double ratio = sp_sum / rm_sum;
  result.measured = worst_slope;
  const bool on_par = ratio >= 1.0 / kFactor && ratio <= kFactor;
  result.passed = worst_slope <= kSlopeLimit && on_par;
  result.detail = "10 seeds of 100x50 uniform games; worst SP-CBA+ slope " +
                  Sci(worst_slope) + "; mean gap at T=1000 SP-CBA+ " +
                  Sci(sp_sum / 10) + " vs RM+ " + Sci(rm_sum / 10) +
                  ", ratio " + Sci(ratio) + " (required within [0.5, 2])";
  return result;
}

CriterionResult BaselineOrdering(const AcceptanceOptions&) {
  constexpr int kHorizon = 1000;
  constexpr double kMargin = 10.0;
  CriterionResult result = Blank(6, "baseline_ordering");
  result.threshold = kMargin;
  result.time_limit_seconds = 600.0;
  ProblemSpec dro;
  dro.family = ProblemFamily::kDro;
  dro.n = 50;
  dro.m = 100;
  ProblemSpec mdp;
  mdp.family = ProblemFamily::kMdp;
  mdp.n = 20;
  mdp.actions = 10;
  mdp.branching = 0.5;
  mdp.discount = 0.95;
  RunSettings settings;
  settings.iterations = kHorizon;
  settings.cadence = kHorizon;
  settings.measure_time = false;
  bool strict = true;
  double best_margin = 0.0;
  std::string detail;
  for (const ProblemSpec* spec : {&dro, &mdp}) {
    const auto problem = MakeProblem(*spec, 0);
    const AlgorithmRun sp =
        RunAlgorithm(*problem, ParseAlgorithm("sp_cba_plus"), settings);
    const double sp_value = sp.samples.back().value;
    detail += ProblemFamilyName(spec->family) + ": sp_cba_plus " +
              Sci(sp_value);
    for (const char* name :
         {"omd_theory", "ftrl_theory", "oomd_theory", "oftrl_theory"}) {
      const AlgorithmRun run =
          RunAlgorithm(*problem, ParseAlgorithm(name), settings);
      const double value = run.samples.back().value;
      strict = strict && sp_value < value;
      if (sp_value > 0.0) best_margin = std::max(best_margin, value / sp_value);
      detail += std::string(", ") + name + " " + Sci(value);
    }
    detail += "; ";
  }
  result.measured = best_margin;
  result.passed = strict && best_margin >= kMargin;
  result.detail = detail + (strict ? "strict ordering holds" : "ordering broken") +
                  ", best margin " + Sci(best_margin);
  return result;
}

CriterionResult MdpCertification(const AcceptanceOptions&) {
  constexpr int kHorizon = 5000;
  CriterionResult result = Blank(7, "mdp_certification");
  result.threshold = 0.01;
  result.time_limit_seconds = 300.0;
  bool passed = true;
  double worst_fraction = 0.0;
  std::string detail;
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    const MdpData data = Garnet(20, 10, 0.5, 10.0, seed, 0.95);
    const MdpSaddle problem(data);
    RunOptions options;
    options.iterations = kHorizon;
    options.metric_every = kHorizon;
    options.measure_time = false;
    const RunTrace trace = SpCbaPlus(problem, options);
    const double gap = problem.Metric(trace.x_average, trace.y_average);
    const double scale = problem.reward_max() / (1.0 - data.discount);
    const Vector v_star = ValueIteration(data, 1e-12).values;
    const double optimum = (1.0 - data.discount) * data.initial.dot(v_star);
    // The objective ignores constant shifts of v, so the average is read
    // through its Bellman-feasible shift before comparing with the optimum.
    const double certified = MdpUpperValue(data, trace.x_average);
    const double raw = (1.0 - data.discount) * data.initial.dot(trace.x_average);
    const bool ok =
        gap <= 0.01 * scale && std::abs(certified - optimum) <= gap;
    passed = passed && ok;
    worst_fraction = std::max(worst_fraction, gap / scale);
    detail += "seed " + std::to_string(seed) + ": gap " + Sci(gap) +
              ", shifted value " + Sci(certified) + " vs optimum " +
              Sci(optimum) + " (unshifted " + Sci(raw) + "); ";
  }
  result.measured = worst_fraction;
  result.passed = passed;
  result.detail = detail + "gap limit is 1% of r_max/(1-discount)";
  return result;
}

double RelativeDiff(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

CriterionResult OracleConstants(const AcceptanceOptions&) {
  constexpr double kBoundTol = 1e-14;
  constexpr double kStepTol = 4.0 * std::numeric_limits<double>::epsilon();
  CriterionResult result = Blank(8, "oracle_constants");
  result.threshold = kBoundTol;
  result.time_limit_seconds = 1.0;
  double worst_bound = 0.0;
  double worst_step = 0.0;
  bool lv_exact = true;
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    const DroData d =
        SyntheticDroData(20 + 10 * int(seed), 40, Distribution::kNormal01, 0.1,
                         seed);
    const LipschitzPair got = DroLipschitzBounds(
        d.features, d.labels, d.regularizer, d.radius_x, d.center_x);
    const LipschitzPair want = ReferenceDroBounds(
        d.features, d.labels, d.regularizer, d.radius_x, d.center_x);
    worst_bound = std::max({worst_bound, RelativeDiff(got.x, want.x),
                            RelativeDiff(got.y, want.y)});

    const MdpData m = Garnet(8 + int(seed), 3 + int(seed), 0.5, 10.0, seed);
    const LipschitzPair mg = MdpLipschitzBounds(m.rewards, m.discount,
                                                m.num_states, m.num_actions);
    const LipschitzPair mw = ReferenceMdpBounds(m.rewards, m.discount,
                                                m.num_states, m.num_actions);
    lv_exact = lv_exact && mg.x == 2.0;
    worst_bound = std::max(worst_bound, RelativeDiff(mg.y, mw.y));
  }
  Rng rng(8008);
  for (int i = 0; i < 200; ++i) {
    const double diameter = std::pow(10.0, rng.Uniform(-2.0, 3.0));
    const double lipschitz = std::pow(10.0, rng.Uniform(-2.0, 3.0));
    const int horizon = 1 + rng.UniformInt(100000);
    for (FirstOrderMethod method :
         {FirstOrderMethod::kOmd, FirstOrderMethod::kFtrl,
          FirstOrderMethod::kOomd, FirstOrderMethod::kOftrl}) {
      worst_step = std::max(
          worst_step,
          RelativeDiff(TheoreticalStepSize(method, diameter, lipschitz, horizon),
                       ReferenceStepSize(method, diameter, lipschitz, horizon)));
    }
  }
  result.measured = worst_bound;
  result.passed = lv_exact && worst_bound <= kBoundTol && worst_step <= kStepTol;
  result.detail = std::string("L_v == 2: ") + (lv_exact ? "yes" : "no") +
                  "; worst bound relative difference " + Sci(worst_bound) +
                  "; worst step-size relative difference " + Sci(worst_step) +
                  " (limit " + Sci(kStepTol) + ")";
  return result;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Blanks the elapsed_seconds column of every data row.
std::string MaskElapsed(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::string out;
  bool header = true;
  while (std::getline(in, line)) {
    if (!header) {
      std::vector<std::string> fields;
      std::size_t start = 0;
      for (std::size_t pos; (pos = line.find(',', start)) != std::string::npos;
           start = pos + 1) {
        fields.push_back(line.substr(start, pos - start));
      }
      fields.push_back(line.substr(start));
      if (fields.size() > 4) fields[4] = "-";
      line.clear();
      for (std::size_t i = 0; i < fields.size(); ++i) {
        line += (i ? "," : "") + fields[i];
      }
    }
    header = false;
    out += line + "\n";
  }
  return out;
}

struct RerunOutcome {
  int files = 0;
  int mismatches = 0;
};

RerunOutcome Rerun(ExperimentConfig config, const fs::path& root, bool mask) {
  RerunOutcome outcome;
  std::vector<std::string> runs[2];
  for (int k = 0; k < 2; ++k) {
    config.output_dir = (root / (k == 0 ? "first" : "second")).string();
    fs::remove_all(config.output_dir);
    for (const std::string& file : RunExperiment(config).files) {
      runs[k].push_back(fs::path(file).filename().string());
    }
  }
  if (runs[0] != runs[1]) {
    outcome.mismatches = 1;
    return outcome;
  }
  for (const std::string& name : runs[0]) {
    std::string a = ReadFile(root / "first" / name);
    std::string b = ReadFile(root / "second" / name);
    if (mask) {
      a = MaskElapsed(a);
      b = MaskElapsed(b);
    }
    ++outcome.files;
    if (a != b) ++outcome.mismatches;
  }
  return outcome;
}

CriterionResult Determinism(const AcceptanceOptions& options) {
  CriterionResult result = Blank(9, "determinism");
  result.threshold = 0.0;
  result.time_limit_seconds = 60.0;
  const fs::path root = fs::path(options.scratch_dir) / "determinism";
  std::vector<ExperimentConfig> configs;
  {
    ExperimentConfig c;
    c.problem.family = ProblemFamily::kMatrixGame;
    c.problem.n = 30;
    c.problem.m = 20;
    c.problem.distribution = Distribution::kNormal01;
    c.problem.seeds = {0, 1, 2};
    for (const char* name : {"sp_cba_plus", "cba_plus", "cba", "rm_plus", "rm",
                             "omd_theory", "oftrl_tuned"}) {
      c.algorithms.push_back(ParseAlgorithm(name));
    }
    c.iterations = 300;
    c.threads = 3;
    configs.push_back(c);
  }
  {
    ExperimentConfig c;
    c.problem.family = ProblemFamily::kDro;
    c.problem.n = 10;
    c.problem.m = 30;
    c.problem.seeds = {4};
    for (const char* name : {"sp_cba_plus", "ftrl_theory", "oomd_tuned"}) {
      c.algorithms.push_back(ParseAlgorithm(name));
    }
    c.iterations = 200;
    c.threads = 2;
    configs.push_back(c);
  }
  {
    ExperimentConfig c;
    c.problem.family = ProblemFamily::kMdp;
    c.problem.n = 8;
    c.problem.actions = 3;
    c.problem.seeds = {0, 5};
    for (const char* name : {"sp_cba_plus", "cba_plus", "omd_tuned"}) {
      c.algorithms.push_back(ParseAlgorithm(name));
    }
    c.iterations = 200;
    c.threads = 2;
    configs.push_back(c);
  }
  int files = 0;
  int exact_mismatches = 0;
  int masked_mismatches = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    ExperimentConfig untimed = configs[i];
    untimed.wall_timing = false;
    const RerunOutcome exact =
        Rerun(untimed, root / ("config" + std::to_string(i)), false);
    ExperimentConfig timed = configs[i];
    timed.wall_timing = true;
    const RerunOutcome masked =
        Rerun(timed, root / ("timed" + std::to_string(i)), true);
    files += exact.files + masked.files;
    exact_mismatches += exact.mismatches;
    masked_mismatches += masked.mismatches;
  }
  fs::remove_all(root);
  result.measured = exact_mismatches + masked_mismatches;
  result.passed = exact_mismatches == 0 && masked_mismatches == 0;
  result.detail = std::to_string(files) + " CSV files compared; " +
                  std::to_string(exact_mismatches) +
                  " differ with timing off, " +
                  std::to_string(masked_mismatches) +
                  " differ outside elapsed_seconds with wall timing";
  return result;
}

using CriterionFn = CriterionResult (*)(const AcceptanceOptions&);

constexpr CriterionFn kCriteria[kCriterionCount] = {
    ProjectionCorrectness, ForcingAndRecursion,   RegretBounds,
    AlternationImprovement, MatrixGameConvergence, BaselineOrdering,
    MdpCertification,       OracleConstants,       Determinism};

constexpr const char* kCriterionNames[kCriterionCount] = {
    "projection_correctness",  "forcing_and_recursion", "regret_bounds",
    "alternation_improvement", "matrix_game_convergence",
    "baseline_ordering",       "mdp_certification",     "oracle_constants",
    "determinism"};

}  // namespace

CriterionResult RunCriterion(int id, const AcceptanceOptions& options) {
  if (id < 1 || id > kCriterionCount) {
    throw std::out_of_range("no acceptance criterion " + std::to_string(id));
  }
  const auto start = std::chrono::steady_clock::now();
  CriterionResult result;
  try {
    result = kCriteria[id - 1](options);
  } catch (const std::exception& e) {
    result = Blank(id, kCriterionNames[id - 1]);
    result.passed = false;
    result.detail = std::string("error: ") + e.what();
  }
  result.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  if (result.time_limit_seconds > 0.0 &&
      result.seconds > result.time_limit_seconds) {
    result.passed = false;
    result.detail += "; over the time limit";
  }
  return result;
}

std::vector<CriterionResult> RunAcceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) {
    results.push_back(RunCriterion(id, options));
  }
  return results;
}

std::string FormatCriterion(const CriterionResult& r) {
  std::ostringstream out;
  out << "criterion " << r.id << ' ' << r.name << ": "
      << (r.passed ? "PASS" : "FAIL") << " measured=" << Sci(r.measured)
      << " threshold=" << Sci(r.threshold) << " time=" << std::fixed
      << std::setprecision(2) << r.seconds << "s/" << std::setprecision(0)
      << r.time_limit_seconds << "s | " << r.detail;
  return out.str();
}

}  // namespace blackwell::verify
