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
#include <map>
#include <set>
#include <string_view>

#include "blackwell/experiment.h"

namespace blackwell {
namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

template <typename T>
T ParseField(std::string_view text, int line_number, const char* column) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError("csv line " + std::to_string(line_number) + ": bad " +
                      column + " '" + std::string(text) + "'");
  }
  return value;
}

void CheckField(std::string_view text, const char* column) {
  if (text.find_first_of(",\n\r") != std::string_view::npos) {
    throw DomainError(std::string("csv ") + column +
                      " contains a separator: '" + std::string(text) + "'");
  }
}

}  // namespace

std::string FormatDouble(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                       std::chars_format::general, 17);
  if (ec != std::errc()) throw DomainError("cannot format number");
  return std::string(buffer, ptr);
}

void WriteTraceCsv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << kCsvHeader << '\n';
  for (const TraceRow& row : rows) {
    CheckField(row.run_id, "run_id");
    CheckField(row.algorithm, "algorithm");
    CheckField(row.seed, "seed");
    CheckField(row.metric, "metric");
    out << row.run_id << ',' << row.algorithm << ',' << row.seed << ','
        << row.iteration << ',' << FormatDouble(row.elapsed_seconds) << ','
        << row.metric << ',' << FormatDouble(row.value) << '\n';
  }
  out.flush();
}

std::vector<TraceRow> ReadTraceCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw DomainError("csv: unexpected header '" + line + "'");
  std::vector<TraceRow> rows;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = SplitFields(line);
    if (fields.size() != 7) {
      throw DomainError("csv line " + std::to_string(line_number) +
                        ": expected 7 fields");
    }
    TraceRow row;
    row.run_id = std::string(fields[0]);
    row.algorithm = std::string(fields[1]);
    row.seed = std::string(fields[2]);
    row.iteration = ParseField<int>(fields[3], line_number, "iteration");
    row.elapsed_seconds =
        ParseField<double>(fields[4], line_number, "elapsed_seconds");
    row.metric = std::string(fields[5]);
    row.value = ParseField<double>(fields[6], line_number, "value");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TraceRow> AggregateRows(const std::vector<TraceRow>& rows) {
  struct Bucket {
    int count = 0;
    double elapsed = 0.0;
    double value = 0.0;
  };
  struct Group {
    std::string metric;
    std::set<std::string> runs;
    std::map<int, Bucket> buckets;
  };
  std::vector<std::string> order;
  std::map<std::string, Group> groups;
  for (const TraceRow& row : rows) {
    auto [it, inserted] = groups.try_emplace(row.algorithm);
    if (inserted) {
      order.push_back(row.algorithm);
      it->second.metric = row.metric;
    } else if (it->second.metric != row.metric) {
      throw DomainError("aggregate: mixed metrics for " + row.algorithm);
    }
    it->second.runs.insert(row.run_id);
    Bucket& bucket = it->second.buckets[row.iteration];
    ++bucket.count;
    bucket.elapsed += row.elapsed_seconds;
    bucket.value += row.value;
  }
  std::vector<TraceRow> out;
  for (const std::string& algorithm : order) {
    const Group& group = groups.at(algorithm);
    const int runs = static_cast<int>(group.runs.size());
    for (const auto& [iteration, bucket] : group.buckets) {
      if (bucket.count != runs) continue;
      out.push_back({"mean:" + algorithm, algorithm, "all", iteration,
                     bucket.elapsed / runs, group.metric,
                     bucket.value / runs});
    }
  }
  return out;
}

}  // namespace blackwell
