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

#ifndef SCHEMADST_CORPUS_SPLIT_H_
#define SCHEMADST_CORPUS_SPLIT_H_

#include <cstdint>
#include <vector>

#include "schemadst/corpus/types.h"

namespace schemadst::corpus {

struct Split {
  std::vector<Dialogue> train;
  std::vector<Dialogue> dev;
  std::vector<Dialogue> test;
};

// Uniform random 70/15/15 partition by dialogue count: train = floor(0.70 n),
// dev = floor(0.15 n), test takes the remainder. The shuffle is a seeded
// Fisher-Yates over a 64-bit Mersenne Twister with its own bounded draw, so
// the result depends only on the input order and the seed.
Split resplit_sgd_plus(std::vector<Dialogue> dialogues, std::uint64_t seed);

}  // namespace schemadst::corpus

#endif  // SCHEMADST_CORPUS_SPLIT_H_
