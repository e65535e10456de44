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
#ifndef SCHEMADST_DECODERS_STATE_DECODER_H_
#define SCHEMADST_DECODERS_STATE_DECODER_H_

#include <array>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "schemadst/corpus/gold_targets.h"
#include "schemadst/decoders/projection.h"
#include "schemadst/schema_memory/memory.h"

namespace schemadst::decoders {

using corpus::kNumStatuses;
using corpus::SlotStatus;

struct DecoderConfig {
  int model_dim = 64;
  int num_heads = 4;
  double init_stddev = 0.02;
  // Scale of the learnable NONE-intent and carry-over vectors; schema
  // vectors come out of a layer norm, so unit scale matches them.
  double sentinel_init_stddev = 1.0;
};

// Logit nodes of one frame. Row order follows the schema: categorical rows
// follow ServiceSchema::categorical_slots(), non-categorical rows follow
// noncategorical_slots().
struct DecoderGraph {
  Var intent;              // 1 x (N_I + 1), column 0 is NONE
  Var requested;           // N_S x 1, schema slot order
  Var categorical_status;  // N_C x 4 (invalid when N_C == 0)
  Var noncategorical_status;  // N_NC x 4 (invalid when N_NC == 0)
  std::vector<Var> values;    // per categorical slot, 1 x (1 + N_V)
  Var span_start;             // N_NC x M, pad columns at -inf
  Var span_end;
  std::vector<int> categorical_slots;     // schema indices
  std::vector<int> noncategorical_slots;  // schema indices
};

// Normalised head outputs of one frame, indexed by schema slot.
struct DecoderOutput {
  std::vector<double> intent;     // N_I + 1, index 0 is NONE
  std::vector<double> requested;  // sigmoid per slot
  std::vector<std::array<double, kNumStatuses>> status;
  // Categorical slots: 1 + N_V entries, index 0 is the carry-over value.
  // Empty for non-categorical slots.
  std::vector<std::vector<double>> value;
  // Non-categorical slots: one entry per token. Empty for categorical slots.
  std::vector<std::vector<double>> span_start;
  std::vector<std::vector<double>> span_end;
};

// The five decoding heads over a shared encoder output.
class StateDecoder {
 public:
  StateDecoder(tensor::ParameterStore& store, const std::string& prefix,
               DecoderConfig config, std::mt19937_64& rng);

  // tokens: M x q (Y_tok), cls: 1 x q (Y_cls), mask: M flags.
  DecoderGraph forward(Tape& tape, Var tokens, Var cls,
                       const std::vector<bool>& mask,
                       const corpus::ServiceSchema& schema,
                       const schema_memory::ServiceEmbeddings& memory) const;

  const DecoderConfig& config() const { return config_; }
  const tensor::Parameter& none_intent() const { return *none_intent_; }
  const tensor::Parameter& carry_over_value() const { return *carry_over_; }

 private:
  DecoderConfig config_;
  const tensor::Parameter* none_intent_;  // I_0, shared by all services
  const tensor::Parameter* carry_over_;   // shared carry-over value vector
  ProjectionFC intent_;
  ProjectionFC requested_;
  ProjectionMHA categorical_status_;
  ProjectionMHA noncategorical_status_;
  ProjectionMHA value_;
  ProjectionFC span_start_;
  ProjectionFC span_end_;
};

DecoderOutput distributions(const DecoderGraph& graph,
                            const corpus::ServiceSchema& schema);

struct SlotDecision {
  SlotStatus status = SlotStatus::kInactive;
  int value_index = -1;  // categorical: 0 is carry-over, i + 1 is value i
  int span_start = -1;   // non-categorical: inclusive token positions
  int span_end = -1;
  friend bool operator==(const SlotDecision&, const SlotDecision&) = default;
};

struct FrameDecision {
  int intent_index = 0;  // 0 is NONE
  std::vector<bool> requested;
  std::vector<SlotDecision> slots;  // schema slot order
};

// First index of the maximum; ties go to the lowest index.
int argmax(const std::vector<double>& values);
// Start is the most likely start token, end the most likely end token at or
// after it.
std::pair<int, int> best_span(const std::vector<double>& start,
                              const std::vector<double>& end);

// A slot is requested iff its probability is strictly above the threshold.
FrameDecision decide(const DecoderOutput& output,
                     const corpus::ServiceSchema& schema,
                     double requested_threshold = 0.5);

}  // namespace schemadst::decoders

#endif  // SCHEMADST_DECODERS_STATE_DECODER_H_
