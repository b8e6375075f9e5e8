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

#ifndef BLACKWELL_RNG_H_
#define BLACKWELL_RNG_H_

#include <cstdint>
#include <random>
#include <vector>

namespace blackwell {

// Seeded generator with platform-independent output. The engine is
// std::mt19937_64, whose sequence is fixed by the standard; the
// distributions below are implemented here because the standard library
// ones are not portable across implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform01();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }
  // Standard normal via the Box-Muller transform.
  double Normal();
  // Uniform integer on [0, n).
  int UniformInt(int n);
  // k distinct indices of [0, n) in sampling order.
  std::vector<int> SampleWithoutReplacement(int n, int k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace blackwell

#endif  // BLACKWELL_RNG_H_
