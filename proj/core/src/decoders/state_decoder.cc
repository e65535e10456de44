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
#include "schemadst/decoders/state_decoder.h"

#include "schemadst/tensor/ops.h"

namespace schemadst::decoders {

using corpus::ServiceSchema;
using tensor::AttentionConfig;

StateDecoder::StateDecoder(tensor::ParameterStore& store,
                           const std::string& prefix, DecoderConfig config,
                           std::mt19937_64& rng)
    : config_(config),
      none_intent_(&store.add_normal(prefix + ".none_intent", 1,
                                     config.model_dim,
                                     config.sentinel_init_stddev, rng)),
      carry_over_(&store.add_normal(prefix + ".carry_over_value", 1,
                                    config.model_dim,
                                    config.sentinel_init_stddev, rng)),
      intent_(store, prefix + ".intent", config.model_dim, 1, rng,
              config.init_stddev),
      requested_(store, prefix + ".requested", config.model_dim, 1, rng,
                 config.init_stddev),
      categorical_status_(store, prefix + ".categorical_status",
                          AttentionConfig{config.model_dim, config.num_heads},
                          kNumStatuses, rng, config.init_stddev),
      noncategorical_status_(
          store, prefix + ".noncategorical_status",
          AttentionConfig{config.model_dim, config.num_heads}, kNumStatuses,
          rng, config.init_stddev),
      value_(store, prefix + ".categorical_value",
             AttentionConfig{config.model_dim, config.num_heads}, 1, rng,
             config.init_stddev),
      span_start_(store, prefix + ".span_start", config.model_dim, 1, rng,
                  config.init_stddev),
      span_end_(store, prefix + ".span_end", config.model_dim, 1, rng,
                config.init_stddev) {}

DecoderGraph StateDecoder::forward(
    Tape& tape, Var tokens, Var cls, const std::vector<bool>& mask,
    const ServiceSchema& schema,
    const schema_memory::ServiceEmbeddings& memory) const {
  using namespace tensor;
  DecoderGraph g;
  g.categorical_slots = schema.categorical_slots();
  g.noncategorical_slots = schema.noncategorical_slots();

  const Var intents = concat_rows(
      {tape.parameter(*none_intent_), tape.constant(memory.intents)});
  g.intent = transpose(intent_.forward(tape, intents, cls));

  const Var slots = tape.constant(memory.slots_in_schema_order(schema));
  g.requested = requested_.forward(tape, slots, cls);

  if (!g.categorical_slots.empty()) {
    g.categorical_status = categorical_status_.forward(
        tape, tape.constant(memory.categorical_slots), tokens, mask);
    // One attention pass over every candidate of every categorical slot.
    const Var sentinel = tape.parameter(*carry_over_);
    std::vector<Var> candidates;
    for (const Matrix& v : memory.categorical_values) {
      candidates.push_back(sentinel);
      if (v.rows() > 0) candidates.push_back(tape.constant(v));
    }
    const Var scores =
        value_.forward(tape, concat_rows(candidates), tokens, mask);
    int row = 0;
    for (const Matrix& v : memory.categorical_values) {
      const int n = 1 + static_cast<int>(v.rows());
      g.values.push_back(transpose(slice_rows(scores, row, n)));
      row += n;
    }
  }

  if (!g.noncategorical_slots.empty()) {
    const Var x = tape.constant(memory.noncategorical_slots);
    g.noncategorical_status =
        noncategorical_status_.forward(tape, x, tokens, mask);
    std::vector<Var> starts, ends;
    for (int r = 0; r < static_cast<int>(g.noncategorical_slots.size()); ++r) {
      const Var slot = slice_rows(x, r, 1);
      starts.push_back(transpose(span_start_.forward(tape, slot, tokens)));
      ends.push_back(transpose(span_end_.forward(tape, slot, tokens)));
    }
    g.span_start = mask_columns(concat_rows(starts), mask);
    g.span_end = mask_columns(concat_rows(ends), mask);
  }
  return g;
}

namespace {

std::vector<double> row_of(const Matrix& m, int r) {
  return std::vector<double>(m.row(r).data(), m.row(r).data() + m.cols());
}

}  // namespace

DecoderOutput distributions(const DecoderGraph& g,
                            const ServiceSchema& schema) {
  using tensor::softmax_rows_value;
  const std::size_t n = schema.slots.size();
  DecoderOutput out;
  out.intent = row_of(softmax_rows_value(g.intent.value()), 0);
  out.requested.resize(n);
  const Matrix& req = g.requested.value();
  for (std::size_t i = 0; i < n; ++i) {
    out.requested[i] = tensor::sigmoid_value(req(static_cast<int>(i), 0));
  }
  out.status.resize(n);
  out.value.resize(n);
  out.span_start.resize(n);
  out.span_end.resize(n);
  auto fill_status = [&](const Var& logits, const std::vector<int>& slots) {
    if (slots.empty()) return;
    const Matrix p = softmax_rows_value(logits.value());
    for (std::size_t r = 0; r < slots.size(); ++r) {
      for (int c = 0; c < kNumStatuses; ++c) {
        out.status[slots[r]][c] = p(static_cast<int>(r), c);
      }
    }
  };
  fill_status(g.categorical_status, g.categorical_slots);
  fill_status(g.noncategorical_status, g.noncategorical_slots);
  for (std::size_t k = 0; k < g.categorical_slots.size(); ++k) {
    out.value[g.categorical_slots[k]] =
        row_of(softmax_rows_value(g.values[k].value()), 0);
  }
  if (!g.noncategorical_slots.empty()) {
    const Matrix ps = softmax_rows_value(g.span_start.value());
    const Matrix pe = softmax_rows_value(g.span_end.value());
    for (std::size_t r = 0; r < g.noncategorical_slots.size(); ++r) {
      out.span_start[g.noncategorical_slots[r]] =
          row_of(ps, static_cast<int>(r));
      out.span_end[g.noncategorical_slots[r]] =
          row_of(pe, static_cast<int>(r));
    }
  }
  return out;
}

int argmax(const std::vector<double>& values) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return values.empty() ? -1 : best;
}

std::pair<int, int> best_span(const std::vector<double>& start,
                              const std::vector<double>& end) {
  const int s = argmax(start);
  if (s < 0) return {-1, -1};
  int e = s;
  for (int i = s + 1; i < static_cast<int>(end.size()); ++i) {
    if (end[i] > end[e]) e = i;
  }
  return {s, e};
}

FrameDecision decide(const DecoderOutput& output, const ServiceSchema& schema,
                     double requested_threshold) {
  FrameDecision d;
  d.intent_index = argmax(output.intent);
  const std::size_t n = schema.slots.size();
  d.requested.resize(n);
  d.slots.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.requested[i] = output.requested[i] > requested_threshold;
    const auto& st = output.status[i];
    d.slots[i].status = static_cast<SlotStatus>(
        argmax(std::vector<double>(st.begin(), st.end())));
    if (schema.slots[i].is_categorical) {
      d.slots[i].value_index = argmax(output.value[i]);
    } else {
      const auto [s, e] = best_span(output.span_start[i], output.span_end[i]);
      d.slots[i].span_start = s;
      d.slots[i].span_end = e;
    }
  }
  return d;
}

}  // namespace schemadst::decoders
