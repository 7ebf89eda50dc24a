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
#ifndef CCFMECH_ERRORS_H_
#define CCFMECH_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ccfmech {

// Raised when the greatest-fixed-point iteration exceeds its iteration budget.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, int iterations)
      : std::runtime_error(what), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

// Raised when an exhaustive enumeration would exceed the configured budget.
class GuardExceededError : public std::runtime_error {
 public:
  GuardExceededError(const std::string& what, std::uint64_t required,
                     std::uint64_t limit)
      : std::runtime_error(what), required_(required), limit_(limit) {}
  std::uint64_t required() const { return required_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t required_;
  std::uint64_t limit_;
};

// Raised when the interior closed forms of the public goods game do not apply.
class ClippedRegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Default budget for exhaustive enumerations, in evaluations.
inline constexpr std::uint64_t kDefaultMaxEnumeration = 10'000'000;

// Returns kDefaultMaxEnumeration unless CCF_MECH_MAX_ENUM holds a positive
// integer, in which case that value is used.
std::uint64_t MaxEnumeration();

// Throws GuardExceededError if required > limit.
void CheckGuard(std::uint64_t required, std::uint64_t limit,
                const std::string& what);

// Multiplies with saturation at UINT64_MAX.
std::uint64_t SaturatingMul(std::uint64_t a, std::uint64_t b);

}  // namespace ccfmech

#endif  // CCFMECH_ERRORS_H_
