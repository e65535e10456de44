// Copyright 2026 The schemadst Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef SCHEMADST_COMMON_RANDOM_H_
#define SCHEMADST_COMMON_RANDOM_H_

#include <cstdint>
#include <random>

namespace schemadst {

// Unbiased draw from [0, bound) by rejection. Unlike
// std::uniform_int_distribution the result is the same on every standard
// library.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::mt19937_64::max() -
                              (std::mt19937_64::max() % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % bound;
}

}  // namespace schemadst

#endif  // SCHEMADST_COMMON_RANDOM_H_
