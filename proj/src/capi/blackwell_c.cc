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

#include "blackwell/blackwell.h"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <new>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "blackwell/conic_domain.h"
#include "blackwell/experiment.h"
#include "blackwell/learner.h"
#include "blackwell/problems.h"
#include "blackwell/verify/acceptance.h"

struct bw_domain {
  std::shared_ptr<const blackwell::ConicDomain> domain;
};

struct bw_learner {
  blackwell::CbaLearner learner;
};

struct bw_problem {
  std::unique_ptr<blackwell::SaddleProblem> problem;
};

struct bw_trace {
  blackwell::AlgorithmRun run;
};

namespace {

using blackwell::Vector;

thread_local std::string last_error;
thread_local std::string last_error_key;

class ArgumentError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

void Require(bool condition, const char* message) {
  if (!condition) throw ArgumentError(message);
}

template <class Body>
bw_status Guard(Body&& body) {
  last_error.clear();
  last_error_key.clear();
  try {
    body();
    return BW_OK;
  } catch (const ArgumentError& e) {
    last_error = e.what();
    return BW_INVALID_ARGUMENT;
  } catch (const blackwell::ConfigError& e) {
    last_error = e.what();
    last_error_key = e.key();
    return BW_CONFIG_ERROR;
  } catch (const blackwell::IoError& e) {
    last_error = e.what();
    return BW_IO_ERROR;
  } catch (const std::filesystem::filesystem_error& e) {
    last_error = e.what();
    return BW_IO_ERROR;
  } catch (const blackwell::DomainError& e) {
    last_error = e.what();
    return BW_DOMAIN_ERROR;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return BW_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return BW_INTERNAL_ERROR;
  } catch (...) {
    last_error = "unknown error";
    return BW_INTERNAL_ERROR;
  }
}

Vector CopyIn(const double* data, int n) {
  Require(data != nullptr, "null input array");
  Require(n >= 0, "negative length");
  return Eigen::Map<const Vector>(data, n);
}

void CopyOut(const Vector& v, double* out) {
  std::copy(v.data(), v.data() + v.size(), out);
}

blackwell::Distribution DistributionArg(const char* name) {
  Require(name != nullptr, "null distribution");
  const std::string text(name);
  Require(text == "uniform" || text == "normal",
          "distribution must be 'uniform' or 'normal'");
  return blackwell::ParseDistribution(text);
}

template <class Handle, class... Args>
void Emit(Handle** out, Args&&... args) {
  Require(out != nullptr, "null output handle");
  *out = new Handle{std::forward<Args>(args)...};
}

const std::vector<std::string>& AlgorithmList() {
  static const std::vector<std::string> names = blackwell::AlgorithmNames();
  return names;
}

constexpr blackwell::ProblemFamily kFamilies[] = {
    blackwell::ProblemFamily::kMatrixGame, blackwell::ProblemFamily::kDro,
    blackwell::ProblemFamily::kMdp};

}  // namespace

extern "C" {

const char* bw_version(void) { return "1.0.0"; }

const char* bw_last_error(void) { return last_error.c_str(); }

const char* bw_last_error_key(void) { return last_error_key.c_str(); }

const char* bw_status_name(bw_status status) {
  switch (status) {
    case BW_OK:
      return "ok";
    case BW_INVALID_ARGUMENT:
      return "invalid_argument";
    case BW_DOMAIN_ERROR:
      return "domain_error";
    case BW_CONFIG_ERROR:
      return "config_error";
    case BW_IO_ERROR:
      return "io_error";
    case BW_BUFFER_TOO_SMALL:
      return "buffer_too_small";
    case BW_INTERNAL_ERROR:
      return "internal_error";
  }
  return "unknown";
}

bw_status bw_domain_create(const char* kind, int n, bw_domain** out) {
  return Guard([&] {
    Require(kind != nullptr, "null domain kind");
    Require(n >= 1, "dimension must be >= 1");
    const std::string name(kind);
    using blackwell::ConicDomain;
    if (name == "simplex") {
      Emit(out, std::make_shared<const ConicDomain>(ConicDomain::Simplex(n)));
    } else if (name == "l1_ball") {
      Emit(out, std::make_shared<const ConicDomain>(ConicDomain::L1Ball(n)));
    } else if (name == "l2_ball") {
      Emit(out, std::make_shared<const ConicDomain>(ConicDomain::L2Ball(n)));
    } else if (name == "linf_ball") {
      Emit(out, std::make_shared<const ConicDomain>(ConicDomain::LInfBall(n)));
    } else {
      throw ArgumentError("unknown domain kind '" + name + "'");
    }
  });
}

bw_status bw_domain_create_ball(const double* center, int n, double radius,
                                bw_domain** out) {
  return Guard([&] {
    Require(n >= 1, "dimension must be >= 1");
    Emit(out, std::make_shared<const blackwell::ConicDomain>(
                  blackwell::ConicDomain::Ball(CopyIn(center, n), radius)));
  });
}

bw_status bw_domain_create_ellipsoid(const double* center, int n,
                                     double radius, bw_domain** out) {
  return Guard([&] {
    Require(n >= 2, "dimension must be >= 2");
    Emit(out, std::make_shared<const blackwell::ConicDomain>(
                  blackwell::ConicDomain::EllipsoidInSimplex(CopyIn(center, n),
                                                             radius)));
  });
}

void bw_domain_destroy(bw_domain* domain) { delete domain; }

int bw_domain_dim(const bw_domain* domain) {
  return domain ? domain->domain->dim() : -1;
}

int bw_domain_cone_dim(const bw_domain* domain) {
  return domain ? domain->domain->internal_dim() : -1;
}

double bw_domain_kappa(const bw_domain* domain) {
  return domain ? domain->domain->kappa() : 0.0;
}

bw_status bw_domain_project_cone(const bw_domain* domain, double tilde,
                                 const double* hat, int len, double* out_tilde,
                                 double* out_hat) {
  return Guard([&] {
    Require(domain != nullptr, "null domain");
    Require(out_tilde != nullptr && out_hat != nullptr, "null output");
    Require(len == domain->domain->internal_dim(), "lifted dimension mismatch");
    const blackwell::LiftedPayoff pi =
        domain->domain->Project({tilde, CopyIn(hat, len)});
    *out_tilde = pi.tilde;
    CopyOut(pi.hat, out_hat);
  });
}

bw_status bw_learner_create(const bw_domain* domain, const char* variant,
                            bw_learner** out) {
  return Guard([&] {
    Require(domain != nullptr, "null domain");
    Require(variant != nullptr, "null variant");
    const std::string name(variant);
    Require(name == "cba_plus" || name == "cba",
            "variant must be 'cba_plus' or 'cba'");
    Emit(out, blackwell::CbaLearner(domain->domain,
                                    name == "cba_plus"
                                        ? blackwell::CbaVariant::kCbaPlus
                                        : blackwell::CbaVariant::kCba));
  });
}

void bw_learner_destroy(bw_learner* learner) { delete learner; }

bw_status bw_learner_choose(bw_learner* learner, double* x, int n) {
  return Guard([&] {
    Require(learner != nullptr && x != nullptr, "null argument");
    Require(n == learner->learner.dim(), "decision dimension mismatch");
    CopyOut(learner->learner.Choose(), x);
  });
}

bw_status bw_learner_observe(bw_learner* learner, const double* x,
                             const double* loss, int n, double weight) {
  return Guard([&] {
    Require(learner != nullptr, "null learner");
    Require(n == learner->learner.dim(), "decision dimension mismatch");
    learner->learner.Observe(CopyIn(x, n), CopyIn(loss, n), weight);
  });
}

bw_status bw_problem_matrix_game(const double* payoff, int rows, int cols,
                                 bw_problem** out) {
  return Guard([&] {
    Require(payoff != nullptr, "null payoff");
    Require(rows >= 1 && cols >= 1, "matrix dimensions must be >= 1");
    using RowMajor =
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    blackwell::Matrix a = Eigen::Map<const RowMajor>(payoff, rows, cols);
    Emit(out, std::make_unique<blackwell::MatrixGame>(std::move(a)));
  });
}

bw_status bw_problem_random_matrix_game(int rows, int cols,
                                        const char* distribution,
                                        uint64_t seed, bw_problem** out) {
  return Guard([&] {
    Require(rows >= 1 && cols >= 1, "matrix dimensions must be >= 1");
    Emit(out, std::make_unique<blackwell::MatrixGame>(
                  blackwell::RandomMatrixGame(
                      rows, cols, DistributionArg(distribution), seed)));
  });
}

bw_status bw_problem_synthetic_dro(int features, int points,
                                   const char* distribution,
                                   double flip_fraction, uint64_t seed,
                                   bw_problem** out) {
  return Guard([&] {
    Require(features >= 1 && points >= 1, "dimensions must be >= 1");
    Emit(out, std::make_unique<blackwell::DroLogistic>(
                  blackwell::SyntheticDroData(features, points,
                                              DistributionArg(distribution),
                                              flip_fraction, seed)));
  });
}

bw_status bw_problem_garnet(int states, int actions, double branching,
                            double reward_max, double discount, uint64_t seed,
                            bw_problem** out) {
  return Guard([&] {
    Require(states >= 1 && actions >= 1, "dimensions must be >= 1");
    Emit(out, std::make_unique<blackwell::MdpSaddle>(blackwell::Garnet(
                  states, actions, branching, reward_max, seed, discount)));
  });
}

void bw_problem_destroy(bw_problem* problem) { delete problem; }

bw_status bw_problem_dims(const bw_problem* problem, int* dim_x, int* dim_y) {
  return Guard([&] {
    Require(problem != nullptr, "null problem");
    Require(dim_x != nullptr && dim_y != nullptr, "null output");
    *dim_x = problem->problem->dim_x();
    *dim_y = problem->problem->dim_y();
  });
}

const char* bw_problem_metric_name(const bw_problem* problem) {
  if (!problem) return "";
  return problem->problem->metric_kind() == blackwell::MetricKind::kDualityGap
             ? "duality_gap"
             : "worst_case_loss";
}

bw_status bw_problem_metric(const bw_problem* problem, const double* x,
                            const double* y, double* out) {
  return Guard([&] {
    Require(problem != nullptr && out != nullptr, "null argument");
    const auto& p = *problem->problem;
    *out = p.Metric(CopyIn(x, p.dim_x()), CopyIn(y, p.dim_y()));
  });
}

bw_status bw_solve(const bw_problem* problem, const char* algorithm,
                   int iterations, int cadence, int measure_time,
                   bw_trace** out) {
  return Guard([&] {
    Require(problem != nullptr, "null problem");
    Require(algorithm != nullptr, "null algorithm");
    Require(iterations >= 1, "iterations must be >= 1");
    Require(cadence >= 0, "cadence must be >= 0");
    const auto& names = AlgorithmList();
    Require(std::find(names.begin(), names.end(), algorithm) != names.end(),
            "unknown algorithm");
    blackwell::RunSettings settings;
    settings.iterations = iterations;
    settings.cadence = cadence;
    settings.measure_time = measure_time != 0;
    Emit(out, blackwell::RunAlgorithm(*problem->problem,
                                      blackwell::ParseAlgorithm(algorithm),
                                      settings));
  });
}

void bw_trace_destroy(bw_trace* trace) { delete trace; }

int bw_trace_num_samples(const bw_trace* trace) {
  return trace ? static_cast<int>(trace->run.samples.size()) : -1;
}

bw_status bw_trace_sample(const bw_trace* trace, int index, int* iteration,
                          double* elapsed_seconds, double* value) {
  return Guard([&] {
    Require(trace != nullptr, "null trace");
    Require(index >= 0 && index < bw_trace_num_samples(trace),
            "sample index out of range");
    const blackwell::MetricSample& s = trace->run.samples[index];
    if (iteration) *iteration = s.iteration;
    if (elapsed_seconds) *elapsed_seconds = s.elapsed_seconds;
    if (value) *value = s.value;
  });
}

int bw_algorithm_count(void) { return static_cast<int>(AlgorithmList().size()); }

const char* bw_algorithm_name(int index) {
  if (index < 0 || index >= bw_algorithm_count()) return nullptr;
  return AlgorithmList()[index].c_str();
}

int bw_problem_family_count(void) {
  return static_cast<int>(std::size(kFamilies));
}

const char* bw_problem_family_name(int index) {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (auto family : kFamilies) v.push_back(ProblemFamilyName(family));
    return v;
  }();
  if (index < 0 || index >= bw_problem_family_count()) return nullptr;
  return names[index].c_str();
}

bw_status bw_run_experiment(const char* config_path, const char* output_dir,
                            const uint64_t* seed, int threads,
                            int* num_files) {
  return Guard([&] {
    Require(config_path != nullptr, "null config path");
    blackwell::ExperimentConfig config = blackwell::LoadConfig(config_path);
    if (output_dir) config.output_dir = output_dir;
    if (seed) config.problem.seeds = {*seed};
    if (threads > 0) config.threads = threads;
    blackwell::ValidateConfig(config);
    const blackwell::ExperimentResult result = blackwell::RunExperiment(config);
    if (num_files) *num_files = static_cast<int>(result.files.size());
  });
}

bw_status bw_plot(const char* const* csv_paths, int count, const char* axis,
                  const char* svg_path) {
  return Guard([&] {
    Require(csv_paths != nullptr && count >= 1,
            "need at least one csv path");
    Require(axis != nullptr && svg_path != nullptr, "null argument");
    const std::string axis_name(axis);
    Require(axis_name == "iterations" || axis_name == "time",
            "axis must be 'iterations' or 'time'");
    std::vector<blackwell::TraceRow> rows;
    for (const char* path : std::span(csv_paths, count)) {
      Require(path != nullptr, "null csv path");
      std::ifstream in(path, std::ios::binary);
      if (!in) throw blackwell::IoError(std::string("cannot read '") + path + "'");
      std::vector<blackwell::TraceRow> part = blackwell::ReadTraceCsv(in);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    const std::string svg = blackwell::RenderSvg(
        rows, axis_name == "time" ? blackwell::PlotAxis::kTime
                                  : blackwell::PlotAxis::kIterations);
    std::ofstream out(svg_path, std::ios::binary);
    if (!out) {
      throw blackwell::IoError(std::string("cannot write '") + svg_path + "'");
    }
    out << svg;
    if (!out) {
      throw blackwell::IoError(std::string("cannot write '") + svg_path + "'");
    }
  });
}

int bw_acceptance_count(void) { return blackwell::verify::kCriterionCount; }

bw_status bw_acceptance_run(int id, const char* scratch_dir,
                            int inject_projection_bug, int* passed, char* line,
                            size_t line_size) {
  bool truncated = false;
  const bw_status status = Guard([&] {
    Require(id >= 1 && id <= blackwell::verify::kCriterionCount,
            "criterion id out of range");
    Require(passed != nullptr, "null output");
    blackwell::verify::AcceptanceOptions options;
    options.inject_projection_bug = inject_projection_bug != 0;
    if (scratch_dir) options.scratch_dir = scratch_dir;
    const auto result = blackwell::verify::RunCriterion(id, options);
    *passed = result.passed ? 1 : 0;
    if (line && line_size > 0) {
      const std::string text = blackwell::verify::FormatCriterion(result);
      const std::size_t n = std::min(text.size(), line_size - 1);
      std::memcpy(line, text.data(), n);
      line[n] = '\0';
      truncated = n < text.size();
    }
  });
  if (status == BW_OK && truncated) {
    last_error = "report line truncated";
    return BW_BUFFER_TOO_SMALL;
  }
  return status;
}

}  // extern "C"
