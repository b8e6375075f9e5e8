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
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "blackwell/experiment.h"

namespace blackwell {
namespace {

namespace fs = std::filesystem;

ExperimentConfig Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseConfig(in);
}

std::string ErrorKey(const std::string& text) {
  try {
    Parse(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<no error>";
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t Count(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (auto at = text.find(needle); at != std::string::npos;
       at = text.find(needle, at + 1)) {
    ++count;
  }
  return count;
}

TraceRow Row(const std::string& run, const std::string& algorithm, int t,
             double value, const std::string& metric = "duality_gap") {
  return {run, algorithm, "0", t, 0.001 * t, metric, value};
}

// A fresh directory under the system temp dir, removed on destruction.
struct ScratchDir {
  fs::path path;
  explicit ScratchDir(const std::string& name)
      : path(fs::temp_directory_path() / ("bwbench_" + name)) {
    fs::remove_all(path);
  }
  ~ScratchDir() { fs::remove_all(path); }
};

TEST_CASE("config parsing") {
  const ExperimentConfig c = Parse(
      "# comment\n"
      "problem.family = mdp\n"
      "problem.seeds = 0-2, 7\n"
      "problem.discount = 0.9   # trailing comment\n"
      "algorithms = sp_cba_plus, omd_theory, oftrl_tuned\n"
      "run.iterations = 50\n"
      "run.timing = none\n"
      "output.dir = out/mdp\n");
  CHECK(c.problem.family == ProblemFamily::kMdp);
  CHECK(c.problem.n == 20);
  CHECK(c.problem.seeds == std::vector<std::uint64_t>{0, 1, 2, 7});
  CHECK(c.problem.discount == 0.9);
  REQUIRE(c.algorithms.size() == 3);
  CHECK(c.algorithms[1].Name() == "omd_theory");
  CHECK(c.algorithms[2].tuned);
  CHECK(c.iterations == 50);
  CHECK_FALSE(c.wall_timing);
  CHECK(c.output_dir == "out/mdp");

  const ExperimentConfig dro = Parse("problem.family = dro\nalgorithms = cba\n");
  CHECK(dro.problem.n == 50);
  CHECK(dro.problem.m == 100);
}

TEST_CASE("config errors name the key") {
  CHECK(ErrorKey("problem.family = dro\n") == "algorithms");
  CHECK(ErrorKey("algorithms =\n") == "algorithms");
  CHECK(ErrorKey("algorithms = cba\nproblem.colour = red\n") == "problem.colour");
  CHECK(ErrorKey("algorithms = cba\nrun.iterations = 0\n") == "run.iterations");
  CHECK(ErrorKey("algorithms = cba\nrun.iterations = ten\n") == "run.iterations");
  CHECK(ErrorKey("algorithms = nesterov\n") == "algorithms");
  CHECK(ErrorKey("algorithms = cba, cba\n") == "algorithms");
  CHECK(ErrorKey("algorithms = rm_plus\nproblem.family = dro\n") == "algorithms");
  CHECK(ErrorKey("algorithms = cba\nproblem.discount = 1\n") == "problem.discount");
  CHECK(ErrorKey("algorithms = cba\nproblem.branching = 0\n") ==
        "problem.branching");
  CHECK(ErrorKey("algorithms = cba\nproblem.family = poker\n") ==
        "problem.family");
  CHECK(ErrorKey("algorithms = cba\nrun.timing = cpu\n") == "run.timing");
  CHECK(ErrorKey("algorithms = cba\nalgorithms = rm\n") == "algorithms");
  CHECK(ErrorKey("algorithms = cba\nproblem.dataset = x.txt\n") ==
        "problem.dataset");
  CHECK(ErrorKey("just some words\n") == "line 1");
  CHECK_THROWS_AS(LoadConfig("/nonexistent/bench.conf"), ConfigError);
}

TEST_CASE("shipped configs parse") {
  for (const char* name : {"matrix_game", "dro", "mdp"}) {
    INFO(name);
    CHECK_NOTHROW(LoadConfig(std::string(BLACKWELL_SOURCE_DIR "/configs/") +
                             name + ".conf"));
  }
}

TEST_CASE("algorithm names round-trip") {
  const std::vector<std::string> names = AlgorithmNames();
  CHECK(names.size() == 13);
  for (const std::string& name : names) {
    CHECK(ParseAlgorithm(name).Name() == name);
  }
  CHECK_THROWS_AS(ParseAlgorithm("omd"), DomainError);
}

TEST_CASE("csv format") {
  CHECK(FormatDouble(0.1) == "0.10000000000000001");
  CHECK(FormatDouble(1.0) == "1");
  CHECK(std::stod(FormatDouble(M_PI)) == M_PI);

  const std::vector<TraceRow> rows = {Row("r1", "cba_plus", 1, 0.5),
                                      Row("r1", "cba_plus", 2, 1.0 / 3.0),
                                      Row("r1", "cba_plus", 5, 1e-300)};
  std::ostringstream out;
  WriteTraceCsv(out, rows);
  const std::string text = out.str();
  CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(Count(text, "\n") == 4);

  std::istringstream in(text);
  const std::vector<TraceRow> back = ReadTraceCsv(in);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].run_id == rows[i].run_id);
    CHECK(back[i].algorithm == rows[i].algorithm);
    CHECK(back[i].seed == rows[i].seed);
    CHECK(back[i].iteration == rows[i].iteration);
    CHECK(back[i].elapsed_seconds == rows[i].elapsed_seconds);
    CHECK(back[i].metric == rows[i].metric);
    CHECK(back[i].value == rows[i].value);
  }

  std::istringstream empty("");
  CHECK_THROWS_AS(ReadTraceCsv(empty), DomainError);
  std::istringstream header("a,b,c\n");
  CHECK_THROWS_AS(ReadTraceCsv(header), DomainError);
  std::istringstream short_row(std::string(kCsvHeader) + "\nr,a,0,1\n");
  CHECK_THROWS_AS(ReadTraceCsv(short_row), DomainError);
}

TEST_CASE("aggregate keeps common iterations") {
  const std::vector<TraceRow> rows = {
      Row("a", "omd_tuned", 1, 1.0), Row("a", "omd_tuned", 2, 2.0),
      Row("a", "omd_tuned", 3, 3.0), Row("b", "omd_tuned", 1, 3.0),
      Row("b", "omd_tuned", 2, 4.0), Row("c", "cba", 1, 5.0)};
  const std::vector<TraceRow> mean = AggregateRows(rows);
  REQUIRE(mean.size() == 3);
  int checked = 0;
  for (const TraceRow& r : mean) {
    CHECK(r.seed == "all");
    CHECK(r.run_id == "mean:" + r.algorithm);
    if (r.algorithm == "omd_tuned" && r.iteration == 1) {
      CHECK(r.value == 2.0);
      ++checked;
    } else if (r.algorithm == "omd_tuned" && r.iteration == 2) {
      CHECK(r.value == 3.0);
      ++checked;
    } else if (r.algorithm == "cba") {
      CHECK(r.value == 5.0);
      ++checked;
    }
  }
  CHECK(checked == 3);
}

TEST_CASE("svg plots") {
  const std::vector<TraceRow> one = {Row("a", "cba_plus", 1, 1.0),
                                     Row("a", "cba_plus", 10, 0.1)};
  const std::string svg = RenderSvg(one, PlotAxis::kIterations);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(Count(svg, "<polyline") == 1);
  CHECK(svg.find("cba_plus") != std::string::npos);
  CHECK(svg.find("duality_gap") != std::string::npos);
  CHECK(RenderSvg(one, PlotAxis::kIterations) == svg);

  std::vector<TraceRow> three = one;
  three.push_back(Row("b", "rm_plus", 1, 2.0));
  three.push_back(Row("b", "rm_plus", 10, 0.3));
  three.push_back(Row("c", "omd_tuned", 1, 2.0));
  three.push_back(Row("c", "omd_tuned", 10, 0.5));
  three.push_back(Row("d", "omd_tuned", 1, 2.5));
  three.push_back(Row("d", "omd_tuned", 10, 0.7));
  CHECK(Count(RenderSvg(three, PlotAxis::kTime), "<polyline") == 3);

  // Aggregate rows are dropped next to raw runs of the same algorithm.
  std::vector<TraceRow> mixed = three;
  for (const TraceRow& r : AggregateRows(three)) mixed.push_back(r);
  CHECK(Count(RenderSvg(mixed, PlotAxis::kIterations), "<polyline") == 3);

  CHECK_THROWS_AS(RenderSvg({}, PlotAxis::kIterations), DomainError);
  std::vector<TraceRow> metrics = one;
  metrics.push_back(Row("z", "cba", 1, 1.0, "worst_case_loss"));
  CHECK_THROWS_AS(RenderSvg(metrics, PlotAxis::kIterations), DomainError);
  CHECK_THROWS_AS(RenderSvg({Row("a", "cba", 1, 0.0)}, PlotAxis::kIterations),
                  DomainError);
}

TEST_CASE("experiments are reproducible") {
  ScratchDir dir("reproducible");
  ExperimentConfig config = Parse(
      "problem.n = 12\n"
      "problem.m = 8\n"
      "problem.seeds = 0-1\n"
      "algorithms = sp_cba_plus, rm_plus, omd_tuned, oftrl_theory\n"
      "run.iterations = 60\n"
      "run.threads = 3\n"
      "run.timing = none\n");
  config.output_dir = (dir.path / "first").string();
  const ExperimentResult first = RunExperiment(config);
  config.output_dir = (dir.path / "second").string();
  config.threads = 1;
  const ExperimentResult second = RunExperiment(config);

  REQUIRE(first.files.size() == 9);
  REQUIRE(second.files.size() == first.files.size());
  CHECK(fs::path(first.files.back()).filename() == "aggregate.csv");
  for (std::size_t i = 0; i < first.files.size(); ++i) {
    const std::string a = ReadFile(first.files[i]);
    CHECK(!a.empty());
    CHECK(a == ReadFile(second.files[i]));
    std::istringstream in(a);
    const std::vector<TraceRow> rows = ReadTraceCsv(in);
    CHECK(!rows.empty());
    for (const TraceRow& r : rows) {
      CHECK(r.metric == "duality_gap");
      CHECK(r.elapsed_seconds == 0.0);
      CHECK(std::isfinite(r.value));
    }
  }
  CHECK(first.aggregate.size() > 0);

  // Tuning probes are counted in the reported iterations.
  for (const std::string& file : first.files) {
    std::ifstream in(file);
    const std::vector<TraceRow> rows = ReadTraceCsv(in);
    if (rows.front().algorithm == "omd_tuned" && rows.front().seed == "0") {
      CHECK(rows.back().iteration == 60 + 50);
    }
    if (rows.front().algorithm == "sp_cba_plus" && rows.front().seed == "0") {
      CHECK(rows.back().iteration == 60);
    }
  }
}

TEST_CASE("experiment io errors") {
  ScratchDir dir("io");
  fs::create_directories(dir.path);
  std::ofstream(dir.path / "blocker") << "x";
  ExperimentConfig config = Parse("algorithms = cba\nrun.iterations = 5\n");
  config.problem.n = 3;
  config.problem.m = 3;
  config.output_dir = (dir.path / "blocker" / "out").string();
  CHECK_THROWS(RunExperiment(config));
}

}  // namespace
}  // namespace blackwell
