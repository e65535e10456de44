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
#include "schemadst/decoders/labels.h"

namespace schemadst::decoders {

using corpus::FrameTargets;
using corpus::ServiceSchema;

FrameLabels make_labels(const FrameTargets& targets,
                        const ServiceSchema& schema,
                        const encoder::PairInput& input) {
  const std::size_t n = schema.slots.size();
  FrameLabels l;
  l.intent = targets.intent_index;
  l.requested.assign(n, 0.0);
  l.status.assign(n, 0);
  l.value.assign(n, -1);
  l.span_start.assign(n, -1);
  l.span_end.assign(n, -1);
  for (std::size_t i = 0; i < n && i < targets.slots.size(); ++i) {
    const corpus::SlotTarget& t = targets.slots[i];
    l.requested[i] = t.requested ? 1.0 : 0.0;
    l.status[i] = static_cast<int>(t.status);
    if (schema.slots[i].is_categorical) {
      l.value[i] = t.categorical_index;
      continue;
    }
    if (t.status == SlotStatus::kInactive) continue;
    if (t.status == SlotStatus::kActive) {
      std::optional<encoder::TokenSpan> span;
      if (t.user_span) {
        span = encoder::char_span_to_token_span(
            input.origins, t.user_span->start, t.user_span->end, input.second);
      }
      if (!span) {
        ++l.unaligned_spans;
        continue;
      }
      l.span_start[i] = span->start;
      l.span_end[i] = span->end;
    } else {
      l.span_start[i] = 0;
      l.span_end[i] = 0;
    }
  }
  return l;
}

DecoderOutput oracle_output(const FrameLabels& labels,
                            const ServiceSchema& schema, int num_tokens) {
  const std::size_t n = schema.slots.size();
  DecoderOutput out;
  out.intent.assign(schema.intents.size() + 1, 0.0);
  out.intent[labels.intent] = 1.0;
  out.requested = labels.requested;
  out.status.resize(n);
  out.value.resize(n);
  out.span_start.resize(n);
  out.span_end.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.status[i].fill(0.0);
    out.status[i][labels.status[i]] = 1.0;
    if (schema.slots[i].is_categorical) {
      out.value[i].assign(schema.slots[i].possible_values.size() + 1, 0.0);
      out.value[i][labels.value[i] < 0 ? 0 : labels.value[i]] = 1.0;
    } else {
      out.span_start[i].assign(num_tokens, 0.0);
      out.span_end[i].assign(num_tokens, 0.0);
      out.span_start[i][labels.span_start[i] < 0 ? 0 : labels.span_start[i]] =
          1.0;
      out.span_end[i][labels.span_end[i] < 0 ? 0 : labels.span_end[i]] = 1.0;
    }
  }
  return out;
}

}  // namespace schemadst::decoders
