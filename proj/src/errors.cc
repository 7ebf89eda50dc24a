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
#include "ccfmech/errors.h"

#include <cstdlib>
#include <limits>
#include <string>

namespace ccfmech {

std::uint64_t MaxEnumeration() {
  const char* env = std::getenv("CCF_MECH_MAX_ENUM");
  if (env == nullptr || *env == '\0') return kDefaultMaxEnumeration;
  char* end = nullptr;
  unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || value == 0) return kDefaultMaxEnumeration;
  return static_cast<std::uint64_t>(value);
}

void CheckGuard(std::uint64_t required, std::uint64_t limit,
                const std::string& what) {
  if (required > limit) {
    throw GuardExceededError(what + " requires " + std::to_string(required) +
                                 " evaluations, limit is " +
                                 std::to_string(limit),
                             required, limit);
  }
}

std::uint64_t SaturatingMul(std::uint64_t a, std::uint64_t b) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

}  // namespace ccfmech
