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

// Exercises the shared library through its C header only.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "blackwell/blackwell.h"

namespace {

namespace fs = std::filesystem;

TEST_CASE("status names and version") {
  CHECK(std::string(bw_version()).size() > 0);
  CHECK(std::string(bw_status_name(BW_OK)) == "ok");
  CHECK(std::string(bw_status_name(BW_CONFIG_ERROR)) == "config_error");
  CHECK(std::string(bw_status_name(BW_IO_ERROR)) == "io_error");
  CHECK(std::string(bw_status_name(static_cast<bw_status>(99))) == "unknown");
}

TEST_CASE("domains and cone projection") {
  bw_domain* simplex = nullptr;
  REQUIRE(bw_domain_create("simplex", 3, &simplex) == BW_OK);
  CHECK(bw_domain_dim(simplex) == 3);
  CHECK(bw_domain_cone_dim(simplex) == 3);
  CHECK(bw_domain_kappa(simplex) > 0.0);

  const double hat[3] = {1.0, 0.0, 0.0};
  double tilde = 0.0;
  double out[3];
  REQUIRE(bw_domain_project_cone(simplex, 0.0, hat, 3, &tilde, out) == BW_OK);
  const double kappa = bw_domain_kappa(simplex);
  // Optimal ray through e1: alpha = <hat, e1> / (kappa^2 + 1).
  const double alpha = 1.0 / (kappa * kappa + 1.0);
  CHECK(tilde == Catch::Approx(alpha * kappa).epsilon(1e-12));
  CHECK(out[0] == Catch::Approx(alpha).epsilon(1e-12));
  CHECK(out[1] == Catch::Approx(0.0).margin(1e-15));

  CHECK(bw_domain_project_cone(simplex, 0.0, hat, 2, &tilde, out) ==
        BW_INVALID_ARGUMENT);
  CHECK(std::string(bw_last_error()).size() > 0);
  CHECK(bw_domain_project_cone(simplex, 0.0, nullptr, 3, &tilde, out) ==
        BW_INVALID_ARGUMENT);

  bw_domain* bad = nullptr;
  CHECK(bw_domain_create("hexagon", 3, &bad) == BW_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(bw_domain_create("simplex", 0, &bad) != BW_OK);

  const double center[3] = {0.3, 0.3, 0.4};
  bw_domain* slice = nullptr;
  REQUIRE(bw_domain_create_ellipsoid(center, 3, 0.1, &slice) == BW_OK);
  CHECK(bw_domain_cone_dim(slice) == 2);
  bw_domain* ball = nullptr;
  REQUIRE(bw_domain_create_ball(center, 3, 2.0, &ball) == BW_OK);
  CHECK(bw_domain_create_ball(center, 3, -1.0, &bad) == BW_DOMAIN_ERROR);

  bw_domain_destroy(ball);
  bw_domain_destroy(slice);
  bw_domain_destroy(simplex);
  bw_domain_destroy(nullptr);
}

TEST_CASE("learners") {
  bw_domain* simplex = nullptr;
  REQUIRE(bw_domain_create("simplex", 3, &simplex) == BW_OK);
  bw_learner* learner = nullptr;
  REQUIRE(bw_learner_create(simplex, "cba_plus", &learner) == BW_OK);
  // The domain may be released while the learner lives.
  bw_domain_destroy(simplex);

  double x[3];
  REQUIRE(bw_learner_choose(learner, x, 3) == BW_OK);
  CHECK(x[0] + x[1] + x[2] == Catch::Approx(1.0));
  const double loss[3] = {1.0, 0.0, 0.5};
  for (int t = 0; t < 50; ++t) {
    REQUIRE(bw_learner_observe(learner, x, loss, 3, 1.0) == BW_OK);
    REQUIRE(bw_learner_choose(learner, x, 3) == BW_OK);
  }
  CHECK(x[1] > 0.9);
  CHECK(bw_learner_observe(learner, x, loss, 3, -1.0) == BW_DOMAIN_ERROR);
  CHECK(bw_learner_choose(learner, x, 4) == BW_INVALID_ARGUMENT);
  bw_learner_destroy(learner);

  REQUIRE(bw_domain_create("l2_ball", 2, &simplex) == BW_OK);
  CHECK(bw_learner_create(simplex, "adam", &learner) == BW_INVALID_ARGUMENT);
  bw_domain_destroy(simplex);
}

TEST_CASE("problems and solving") {
  const double pennies[4] = {1.0, -1.0, -1.0, 1.0};
  bw_problem* game = nullptr;
  REQUIRE(bw_problem_matrix_game(pennies, 2, 2, &game) == BW_OK);
  int dx = 0, dy = 0;
  REQUIRE(bw_problem_dims(game, &dx, &dy) == BW_OK);
  CHECK(dx == 2);
  CHECK(dy == 2);
  CHECK(std::string(bw_problem_metric_name(game)) == "duality_gap");
  const double half[2] = {0.5, 0.5};
  double gap = 1.0;
  REQUIRE(bw_problem_metric(game, half, half, &gap) == BW_OK);
  CHECK(gap == 0.0);

  bw_trace* trace = nullptr;
  REQUIRE(bw_solve(game, "sp_cba_plus", 200, 0, 0, &trace) == BW_OK);
  const int n = bw_trace_num_samples(trace);
  REQUIRE(n > 2);
  int iteration = 0;
  double elapsed = -1.0, value = 0.0;
  REQUIRE(bw_trace_sample(trace, n - 1, &iteration, &elapsed, &value) == BW_OK);
  CHECK(iteration == 200);
  CHECK(elapsed == 0.0);
  CHECK(value >= 0.0);
  CHECK(value <= 0.05);
  CHECK(bw_trace_sample(trace, n, &iteration, &elapsed, &value) ==
        BW_INVALID_ARGUMENT);
  bw_trace_destroy(trace);

  CHECK(bw_solve(game, "newton", 10, 0, 0, &trace) == BW_INVALID_ARGUMENT);
  CHECK(bw_solve(game, "cba", 0, 0, 0, &trace) != BW_OK);
  bw_problem_destroy(game);

  bw_problem* dro = nullptr;
  REQUIRE(bw_problem_synthetic_dro(5, 20, "normal", 0.1, 1, &dro) == BW_OK);
  CHECK(std::string(bw_problem_metric_name(dro)) == "worst_case_loss");
  CHECK(bw_solve(dro, "rm_plus", 10, 0, 0, &trace) != BW_OK);
  REQUIRE(bw_solve(dro, "omd_tuned", 20, 0, 0, &trace) == BW_OK);
  bw_trace_destroy(trace);
  bw_problem_destroy(dro);

  bw_problem* mdp = nullptr;
  REQUIRE(bw_problem_garnet(5, 2, 0.5, 10.0, 0.9, 0, &mdp) == BW_OK);
  REQUIRE(bw_problem_dims(mdp, &dx, &dy) == BW_OK);
  CHECK(dx == 5);
  CHECK(dy == 10);
  CHECK(bw_problem_garnet(5, 2, 0.5, 10.0, 1.0, 0, &mdp) == BW_DOMAIN_ERROR);
  bw_problem_destroy(mdp);

  bw_problem* random = nullptr;
  CHECK(bw_problem_random_matrix_game(3, 3, "zipf", 0, &random) ==
        BW_INVALID_ARGUMENT);
  REQUIRE(bw_problem_random_matrix_game(3, 3, "uniform", 0, &random) == BW_OK);
  bw_problem_destroy(random);
}

TEST_CASE("listings") {
  CHECK(bw_algorithm_count() == 13);
  CHECK(std::string(bw_algorithm_name(0)).size() > 0);
  CHECK(bw_algorithm_name(-1) == nullptr);
  CHECK(bw_algorithm_name(bw_algorithm_count()) == nullptr);
  CHECK(bw_problem_family_count() == 3);
  CHECK(std::string(bw_problem_family_name(2)) == "mdp");
}

TEST_CASE("errors are per thread") {
  bw_domain* bad = nullptr;
  CHECK(bw_domain_create("hexagon", 3, &bad) != BW_OK);
  std::string other;
  std::thread([&] { other = bw_last_error(); }).join();
  CHECK(other.empty());
  CHECK(std::string(bw_last_error()).size() > 0);
  bw_domain* fine = nullptr;
  REQUIRE(bw_domain_create("simplex", 2, &fine) == BW_OK);
  CHECK(std::string(bw_last_error()).empty());
  bw_domain_destroy(fine);
}

TEST_CASE("experiments and plots") {
  const fs::path dir = fs::temp_directory_path() / "bw_capi_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path config = dir / "game.conf";
  std::ofstream(config) << "problem.n = 6\nproblem.m = 4\n"
                           "algorithms = sp_cba_plus, rm_plus\n"
                           "run.iterations = 30\nrun.timing = none\n";
  int files = 0;
  const std::string out = (dir / "out").string();
  const uint64_t seed = 5;
  REQUIRE(bw_run_experiment(config.string().c_str(), out.c_str(), &seed, 2,
                            &files) == BW_OK);
  CHECK(files == 3);

  std::vector<std::string> csvs;
  for (const auto& entry : fs::directory_iterator(out)) {
    if (entry.path().filename() != "aggregate.csv") {
      csvs.push_back(entry.path().string());
    }
  }
  REQUIRE(csvs.size() == 2);
  std::vector<const char*> paths;
  for (const std::string& p : csvs) paths.push_back(p.c_str());
  const std::string svg = (dir / "plot.svg").string();
  REQUIRE(bw_plot(paths.data(), 2, "iterations", svg.c_str()) == BW_OK);
  CHECK(fs::file_size(svg) > 0);
  CHECK(bw_plot(paths.data(), 0, "iterations", svg.c_str()) ==
        BW_INVALID_ARGUMENT);
  CHECK(bw_plot(paths.data(), 2, "sideways", svg.c_str()) ==
        BW_INVALID_ARGUMENT);
  const char* missing[1] = {"/nonexistent/trace.csv"};
  CHECK(bw_plot(missing, 1, "time", svg.c_str()) == BW_IO_ERROR);

  const fs::path broken = dir / "broken.conf";
  std::ofstream(broken) << "algorithms = cba\nrun.colour = blue\n";
  CHECK(bw_run_experiment(broken.string().c_str(), nullptr, nullptr, 0,
                          &files) == BW_CONFIG_ERROR);
  CHECK(std::string(bw_last_error_key()) == "run.colour");
  CHECK(bw_run_experiment("/nonexistent.conf", nullptr, nullptr, 0, &files) ==
        BW_CONFIG_ERROR);
  fs::remove_all(dir);
}

TEST_CASE("acceptance entry point") {
  CHECK(bw_acceptance_count() == 9);
  int passed = 0;
  char line[512];
  REQUIRE(bw_acceptance_run(8, "unused", 0, &passed, line, sizeof line) ==
          BW_OK);
  CHECK(passed == 1);
  CHECK(std::strncmp(line, "criterion 8 ", 12) == 0);
  char tiny[8];
  CHECK(bw_acceptance_run(8, "unused", 0, &passed, tiny, sizeof tiny) ==
        BW_BUFFER_TOO_SMALL);
  CHECK(std::strlen(tiny) == 7);
  CHECK(bw_acceptance_run(10, "unused", 0, &passed, line, sizeof line) ==
        BW_INVALID_ARGUMENT);
}

}  // namespace
