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

#include "schemadst/corpus/split.h"

#include <random>

#include "schemadst/common/error.h"
#include "schemadst/common/random.h"

namespace schemadst::corpus {

Split resplit_sgd_plus(std::vector<Dialogue> dialogues, std::uint64_t seed) {
  const std::size_t n = dialogues.size();
  if (n < 3) {
    throw Error("cannot split " + std::to_string(n) +
                " dialogues into train/dev/test (need at least 3)");
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(dialogues[i], dialogues[uniform_below(rng, i + 1)]);
  }
  const std::size_t n_train = n * 70 / 100;
  const std::size_t n_dev = n * 15 / 100;
  Split out;
  auto first = std::make_move_iterator(dialogues.begin());
  out.train.assign(first, first + n_train);
  out.dev.assign(first + n_train, first + n_train + n_dev);
  out.test.assign(first + n_train + n_dev, std::make_move_iterator(dialogues.end()));
  return out;
}

}  // namespace schemadst::corpus
