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

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <string_view>

#include "blackwell/experiment.h"

namespace blackwell {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> SplitList(std::string_view s) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string_view::npos ? s.size() : comma;
    const auto item = Trim(s.substr(start, end - start));
    if (!item.empty()) items.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

template <typename T>
T ParseNumber(const std::string& key, std::string_view text) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(key, "cannot parse '" + std::string(text) + "'");
  }
  return value;
}

int ParsePositiveInt(const std::string& key, std::string_view text) {
  const int value = ParseNumber<int>(key, text);
  if (value < 1) throw ConfigError(key, "must be >= 1");
  return value;
}

double ParseFinite(const std::string& key, std::string_view text) {
  const double value = ParseNumber<double>(key, text);
  if (!std::isfinite(value)) throw ConfigError(key, "must be finite");
  return value;
}

// "0,3,7" or ranges such as "0-49".
std::vector<std::uint64_t> ParseSeeds(const std::string& key,
                                      std::string_view text) {
  std::vector<std::uint64_t> seeds;
  for (const std::string& item : SplitList(text)) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      seeds.push_back(ParseNumber<std::uint64_t>(key, item));
      continue;
    }
    const auto lo = ParseNumber<std::uint64_t>(key, Trim(item.substr(0, dash)));
    const auto hi =
        ParseNumber<std::uint64_t>(key, Trim(item.substr(dash + 1)));
    if (hi < lo) throw ConfigError(key, "empty seed range '" + item + "'");
    if (hi - lo > 1000000) throw ConfigError(key, "seed range too large");
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  if (seeds.empty()) throw ConfigError(key, "no seeds given");
  return seeds;
}

}  // namespace

std::string ProblemFamilyName(ProblemFamily family) {
  switch (family) {
    case ProblemFamily::kMatrixGame:
      return "matrix_game";
    case ProblemFamily::kDro:
      return "dro";
    case ProblemFamily::kMdp:
      return "mdp";
  }
  return "unknown";
}

ExperimentConfig ParseConfig(std::istream& in) {
  std::map<std::string, std::string> entries;
  std::map<std::string, int> lines;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view(line);
    view = Trim(view.substr(0, view.find('#')));
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_number),
                        "expected key = value");
    }
    const std::string key(Trim(view.substr(0, eq)));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_number), "empty key");
    }
    if (entries.count(key)) throw ConfigError(key, "given twice");
    entries[key] = std::string(Trim(view.substr(eq + 1)));
    lines[key] = line_number;
  }

  ExperimentConfig config;
  ProblemSpec& problem = config.problem;
  using Handler = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Handler> handlers = {
      {"problem.family",
       [&](const std::string& k, const std::string& v) {
         if (v == "matrix_game") {
           problem.family = ProblemFamily::kMatrixGame;
         } else if (v == "dro") {
           problem.family = ProblemFamily::kDro;
         } else if (v == "mdp") {
           problem.family = ProblemFamily::kMdp;
         } else {
           throw ConfigError(k, "unknown family '" + v +
                                    "' (matrix_game, dro, mdp)");
         }
       }},
      {"problem.n",
       [&](const std::string& k, const std::string& v) {
         problem.n = ParsePositiveInt(k, v);
       }},
      {"problem.m",
       [&](const std::string& k, const std::string& v) {
         problem.m = ParsePositiveInt(k, v);
       }},
      {"problem.distribution",
       [&](const std::string& k, const std::string& v) {
         try {
           problem.distribution = ParseDistribution(v);
         } catch (const DomainError& e) {
           throw ConfigError(k, e.what());
         }
       }},
      {"problem.seeds",
       [&](const std::string& k, const std::string& v) {
         problem.seeds = ParseSeeds(k, v);
       }},
      {"problem.actions",
       [&](const std::string& k, const std::string& v) {
         problem.actions = ParsePositiveInt(k, v);
       }},
      {"problem.branching",
       [&](const std::string& k, const std::string& v) {
         problem.branching = ParseFinite(k, v);
         if (!(problem.branching > 0.0 && problem.branching <= 1.0)) {
           throw ConfigError(k, "must lie in (0, 1]");
         }
       }},
      {"problem.discount",
       [&](const std::string& k, const std::string& v) {
         problem.discount = ParseFinite(k, v);
         if (!(problem.discount > 0.0 && problem.discount < 1.0)) {
           throw ConfigError(k, "must lie in (0, 1)");
         }
       }},
      {"problem.reward_max",
       [&](const std::string& k, const std::string& v) {
         problem.reward_max = ParseFinite(k, v);
         if (!(problem.reward_max > 0.0)) throw ConfigError(k, "must be > 0");
       }},
      {"problem.flip_fraction",
       [&](const std::string& k, const std::string& v) {
         problem.flip_fraction = ParseFinite(k, v);
         if (!(problem.flip_fraction >= 0.0 && problem.flip_fraction <= 1.0)) {
           throw ConfigError(k, "must lie in [0, 1]");
         }
       }},
      {"problem.dataset",
       [&](const std::string& k, const std::string& v) {
         if (v.empty()) throw ConfigError(k, "empty path");
         problem.dataset = v;
       }},
      {"algorithms",
       [&](const std::string& k, const std::string& v) {
         for (const std::string& name : SplitList(v)) {
           try {
             config.algorithms.push_back(ParseAlgorithm(name));
           } catch (const DomainError& e) {
             throw ConfigError(k, e.what());
           }
         }
       }},
      {"run.iterations",
       [&](const std::string& k, const std::string& v) {
         config.iterations = ParsePositiveInt(k, v);
       }},
      {"run.time_budget",
       [&](const std::string& k, const std::string& v) {
         config.time_budget_seconds = ParseFinite(k, v);
         if (config.time_budget_seconds < 0.0) {
           throw ConfigError(k, "must be >= 0");
         }
       }},
      {"run.cadence",
       [&](const std::string& k, const std::string& v) {
         config.cadence = ParseNumber<int>(k, v);
         if (config.cadence < 0) throw ConfigError(k, "must be >= 0");
       }},
      {"run.threads",
       [&](const std::string& k, const std::string& v) {
         config.threads = ParsePositiveInt(k, v);
       }},
      {"run.timing",
       [&](const std::string& k, const std::string& v) {
         if (v == "wall") {
           config.wall_timing = true;
         } else if (v == "none") {
           config.wall_timing = false;
         } else {
           throw ConfigError(k, "expected wall or none");
         }
       }},
      {"output.dir",
       [&](const std::string& k, const std::string& v) {
         if (v.empty()) throw ConfigError(k, "empty path");
         config.output_dir = v;
       }},
  };

  // The family is applied first so that it can set size defaults.
  if (const auto it = entries.find("problem.family"); it != entries.end()) {
    handlers.at("problem.family")(it->first, it->second);
    if (problem.family == ProblemFamily::kDro) {
      problem.n = 50;
      problem.m = 100;
    } else if (problem.family == ProblemFamily::kMdp) {
      problem.n = 20;
    }
  }
  for (const auto& [key, value] : entries) {
    const auto handler = handlers.find(key);
    if (handler == handlers.end()) {
      throw ConfigError(key, "unknown key (line " +
                                 std::to_string(lines[key]) + ")");
    }
    if (key != "problem.family") handler->second(key, value);
  }
  ValidateConfig(config);
  return config;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  return ParseConfig(in);
}

void ValidateConfig(const ExperimentConfig& config) {
  if (config.algorithms.empty()) {
    throw ConfigError("algorithms", "at least one algorithm is required");
  }
  if (config.problem.seeds.empty()) {
    throw ConfigError("problem.seeds", "at least one seed is required");
  }
  if (config.iterations < 1) throw ConfigError("run.iterations", "must be >= 1");
  if (config.threads < 1) throw ConfigError("run.threads", "must be >= 1");
  std::set<std::string> names;
  for (const AlgorithmSpec& algorithm : config.algorithms) {
    if (!names.insert(algorithm.Name()).second) {
      throw ConfigError("algorithms", "'" + algorithm.Name() + "' listed twice");
    }
    const bool simplex_only = algorithm.family == AlgorithmFamily::kRm ||
                              algorithm.family == AlgorithmFamily::kRmPlus;
    if (simplex_only && config.problem.family != ProblemFamily::kMatrixGame) {
      throw ConfigError("algorithms", "'" + algorithm.Name() +
                                          "' needs simplex domains "
                                          "(problem.family = matrix_game)");
    }
  }
  if (!config.problem.dataset.empty() &&
      config.problem.family != ProblemFamily::kDro) {
    throw ConfigError("problem.dataset", "only supported for the dro family");
  }
  if (config.problem.family == ProblemFamily::kMdp &&
      static_cast<long long>(config.problem.n) * config.problem.actions >
          10000000) {
    throw ConfigError("problem.actions", "state-action space too large");
  }
}

}  // namespace blackwell
