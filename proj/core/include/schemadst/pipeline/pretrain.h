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
#ifndef SCHEMADST_PIPELINE_PRETRAIN_H_
#define SCHEMADST_PIPELINE_PRETRAIN_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "schemadst/corpus/types.h"
#include "schemadst/pipeline/config.h"
#include "schemadst/pipeline/model.h"

namespace schemadst::pipeline {

using TextPair = std::pair<std::string, std::string>;

// (system, user) of every user turn followed by every description pair the
// schema memory encodes.
std::vector<TextPair> pretraining_pairs(
    const std::vector<corpus::Dialogue>& dialogues,
    const std::vector<corpus::ServiceSchema>& schemas);

struct PretrainResult {
  std::vector<double> losses;  // mean batch loss per step
  double seconds = 0.0;
};

// Self-supervised warm-up of the encoder on text pairs. Two objectives with
// output weights tied to the token embedding: recover masked tokens from
// their positions, and recover the words of the second sequence from
// [CLS]. Only encoder parameters receive gradients.
PretrainResult pretrain_encoder(Model& model, const std::vector<TextPair>& pairs,
                                const PretrainConfig& config,
                                std::ostream* log = nullptr);

}  // namespace schemadst::pipeline

#endif  // SCHEMADST_PIPELINE_PRETRAIN_H_
