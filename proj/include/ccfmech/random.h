// Copyright 2026 The ccfmech Authors
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
// Seeded randomness with fully specified algorithms, so that runs are
// reproducible across standard library implementations.

#ifndef CCFMECH_RANDOM_H_
#define CCFMECH_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ccfmech {

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// Seed of run `index` under `master`: Mix64(master + (index + 1) * golden
// gamma 0x9E3779B97F4A7C15). Counter based, so adding runs never changes
// the seeds of existing ones.
std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t index);

// 64-bit FNV-1a.
std::uint64_t Fnv1a64(std::string_view data);
std::string HexDigest(std::uint64_t value);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(Mix64(seed)) {}

  std::uint64_t Next() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  // Uniform in [0, n), unbiased.
  std::size_t Index(std::size_t n);
  // Index drawn with the given (nonnegative, not all zero) weights.
  std::size_t Categorical(std::span<const double> weights);

  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[Index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ccfmech

#endif  // CCFMECH_RANDOM_H_
