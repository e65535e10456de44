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
#ifndef SCHEMADST_DECODERS_LOSS_H_
#define SCHEMADST_DECODERS_LOSS_H_

#include "schemadst/decoders/labels.h"
#include "schemadst/decoders/state_decoder.h"

namespace schemadst::decoders {

struct LossWeights {
  double intent = 1.0;
  double requested = 1.0;
  double status = 1.0;
  double value = 1.0;
  double span = 1.0;
};

// Unweighted per-head sums of one frame.
struct LossBreakdown {
  double intent = 0.0;
  double requested = 0.0;
  double status = 0.0;
  double value = 0.0;
  double span_start = 0.0;
  double span_end = 0.0;

  double total(const LossWeights& w) const {
    return w.intent * intent + w.requested * requested + w.status * status +
           w.value * value + w.span * (span_start + span_end);
  }
  LossBreakdown& operator+=(const LossBreakdown& o);
};

struct LossResult {
  Var total;
  LossBreakdown parts;
};

// Cross-entropy for intent, status, categorical value and span start/end;
// logistic loss for requested slots. Value targets are only present for
// active and carry-over categorical slots and span targets only for
// non-inactive non-categorical slots (see make_labels).
LossResult multitask_loss(Tape& tape, const DecoderGraph& graph,
                          const FrameLabels& labels,
                          const LossWeights& weights = {});

// The same quantity computed from normalised outputs.
LossBreakdown multitask_loss(const DecoderOutput& output,
                             const FrameLabels& labels);

}  // namespace schemadst::decoders

#endif  // SCHEMADST_DECODERS_LOSS_H_
