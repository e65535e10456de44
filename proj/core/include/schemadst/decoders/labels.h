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
#ifndef SCHEMADST_DECODERS_LABELS_H_
#define SCHEMADST_DECODERS_LABELS_H_

#include <vector>

#include "schemadst/decoders/state_decoder.h"
#include "schemadst/encoder/tokenizer.h"

namespace schemadst::decoders {

// Training targets of one frame, indexed by schema slot. -1 marks a head
// that is not trained on that slot this turn.
struct FrameLabels {
  int intent = 0;
  std::vector<double> requested;
  std::vector<int> status;
  std::vector<int> value;       // categorical slots only
  std::vector<int> span_start;  // non-categorical slots only
  std::vector<int> span_end;
  // Active non-categorical targets whose character span could not be mapped
  // onto user tokens; their span heads are left untrained.
  int unaligned_spans = 0;
};

// Aligns gold character spans to token positions of `input`, whose second
// sequence is the user utterance. Span rules: inactive -> untrained;
// active -> the covering user tokens; every other status -> ([CLS], [CLS]).
FrameLabels make_labels(const corpus::FrameTargets& targets,
                        const corpus::ServiceSchema& schema,
                        const encoder::PairInput& input);

// One-hot head outputs that reproduce `labels` exactly under decide().
// Untrained value heads point at the carry-over entry and untrained span
// heads at [CLS].
DecoderOutput oracle_output(const FrameLabels& labels,
                            const corpus::ServiceSchema& schema,
                            int num_tokens);

}  // namespace schemadst::decoders

#endif  // SCHEMADST_DECODERS_LABELS_H_
