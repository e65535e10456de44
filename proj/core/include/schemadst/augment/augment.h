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
#ifndef SCHEMADST_AUGMENT_AUGMENT_H_
#define SCHEMADST_AUGMENT_AUGMENT_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "schemadst/corpus/types.h"

namespace schemadst::augment {

// (service, slot) -> distinct values, sorted.
using ValuePools =
    std::map<std::pair<std::string, std::string>, std::vector<std::string>>;

// Values annotated for non-categorical slots in states and actions of the
// given dialogues. Don't-care is not a value here.
ValuePools build_pools(const std::vector<corpus::Dialogue>& dialogues,
                       const corpus::SchemaIndex& schemas);

struct AugmentLog {
  long replaced = 0;
  std::map<std::string, long> skipped;  // reason -> count
  std::vector<std::string> messages;

  void skip(const std::string& reason, const std::string& message);
  AugmentLog& operator+=(const AugmentLog& other);
};

// Rewrites the non-categorical values of a single-domain dialogue with other
// values of the same slot: every word-bounded occurrence in every utterance,
// every state entry and every action value, with spans recomputed. A value
// is left alone (and the reason logged) when it occurs inside another word,
// is shared with another slot or a categorical value, overlaps another
// value, has no eligible replacement, or the rewritten dialogue fails
// validation. The result id is `<id>_aug<copy_index>`. Deterministic in
// (dialogue id, seed, copy_index). Throws schemadst::Error for multi-domain
// dialogues.
corpus::Dialogue augment_dialogue(const corpus::Dialogue& dialogue,
                                  const corpus::SchemaIndex& schemas,
                                  const ValuePools& pools, std::uint64_t seed,
                                  int copy_index, AugmentLog* log = nullptr);

struct AugmentConfig {
  int multiplier = 10;  // total copies per dialogue, original included
  std::uint64_t seed = 1;
};

struct AugmentedCorpus {
  // multiplier x (number of single-domain inputs); copy 0 of each is the
  // original.
  std::vector<corpus::Dialogue> dialogues;
  // Multi-domain inputs, passed through unchanged.
  std::vector<corpus::Dialogue> untouched;
  AugmentLog log;

  std::string manifest_json(const AugmentConfig& config) const;
};

AugmentedCorpus augment_corpus(const std::vector<corpus::Dialogue>& dialogues,
                               const corpus::SchemaIndex& schemas,
                               const ValuePools& pools,
                               const AugmentConfig& config);

}  // namespace schemadst::augment

#endif  // SCHEMADST_AUGMENT_AUGMENT_H_
