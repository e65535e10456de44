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

#include "schemadst/encoder/transformer.h"

#include "schemadst/common/error.h"

namespace schemadst::encoder {

using tensor::ParameterStore;

void EncoderConfig::validate() const {
  if (vocab_size <= Vocabulary::kSep) {
    throw ConfigError("encoder: vocab_size must cover the special tokens");
  }
  if (num_layers < 1) throw ConfigError("encoder: num_layers must be >= 1");
  if (ffn_dim < 1) throw ConfigError("encoder: ffn_dim must be >= 1");
  if (max_seq_len < 4) throw ConfigError("encoder: max_seq_len must be >= 4");
  tensor::AttentionConfig{model_dim, num_heads}.validate();
}

TransformerEncoder::TransformerEncoder(ParameterStore& store,
                                       const std::string& prefix,
                                       EncoderConfig config,
                                       std::mt19937_64& rng)
    : config_(config) {
  config_.validate();
  const int q = config_.model_dim;
  const double sd = config_.init_stddev;
  token_embedding_ = &store.add_normal(prefix + ".token_embedding",
                                       config_.vocab_size, q, sd, rng);
  position_embedding_ = &store.add_normal(prefix + ".position_embedding",
                                          config_.max_seq_len, q, sd, rng);
  segment_embedding_ = &store.add_normal(prefix + ".segment_embedding", 2, q, sd, rng);
  embed_ln_gain_ = &store.add_ones(prefix + ".embedding_norm.gain", 1, q);
  embed_ln_bias_ = &store.add_zeros(prefix + ".embedding_norm.bias", 1, q);
  for (int l = 0; l < config_.num_layers; ++l) {
    const std::string p = prefix + ".layer" + std::to_string(l);
    Layer layer;
    layer.attention = std::make_unique<tensor::MultiHeadAttention>(
        store, p + ".attention",
        tensor::AttentionConfig{q, config_.num_heads}, rng, sd);
    layer.ln1_gain = &store.add_ones(p + ".attention_norm.gain", 1, q);
    layer.ln1_bias = &store.add_zeros(p + ".attention_norm.bias", 1, q);
    layer.ffn_w1 = &store.add_normal(p + ".ffn.w1", q, config_.ffn_dim, sd, rng);
    layer.ffn_b1 = &store.add_zeros(p + ".ffn.b1", 1, config_.ffn_dim);
    layer.ffn_w2 = &store.add_normal(p + ".ffn.w2", config_.ffn_dim, q, sd, rng);
    layer.ffn_b2 = &store.add_zeros(p + ".ffn.b2", 1, q);
    layer.ln2_gain = &store.add_ones(p + ".ffn_norm.gain", 1, q);
    layer.ln2_bias = &store.add_zeros(p + ".ffn_norm.bias", 1, q);
    layers_.push_back(std::move(layer));
  }
}

EncoderOutput TransformerEncoder::forward(Tape& tape, const std::vector<int>& ids,
                                          const std::vector<int>& segment_ids,
                                          const std::vector<bool>& valid,
                                          const ForwardOptions& options) const {
  const int m = static_cast<int>(ids.size());
  if (m == 0 || m > config_.max_seq_len) {
    throw Error("encoder: sequence length " + std::to_string(m) +
                " outside [1, " + std::to_string(config_.max_seq_len) + "]");
  }
  if (segment_ids.size() != ids.size() || valid.size() != ids.size()) {
    throw Error("encoder: ids, segment ids and mask differ in length");
  }
  std::vector<int> positions(m);
  for (int i = 0; i < m; ++i) positions[i] = i;
  using namespace tensor;
  Var x = add(add(gather_rows(tape.parameter(*token_embedding_), ids),
                  gather_rows(tape.parameter(*position_embedding_), positions)),
              gather_rows(tape.parameter(*segment_embedding_), segment_ids));
  x = layer_norm(x, tape.parameter(*embed_ln_gain_), tape.parameter(*embed_ln_bias_));
  const bool train = options.training();
  if (train) x = dropout(x, options.dropout, *options.rng);
  for (const Layer& layer : layers_) {
    Var a = layer.attention->forward(tape, x, x, x, valid);
    if (train) a = dropout(a, options.dropout, *options.rng);
    x = layer_norm(add(x, a), tape.parameter(*layer.ln1_gain),
                   tape.parameter(*layer.ln1_bias));
    Var f = gelu(add(matmul(x, tape.parameter(*layer.ffn_w1)),
                     tape.parameter(*layer.ffn_b1)));
    f = add(matmul(f, tape.parameter(*layer.ffn_w2)), tape.parameter(*layer.ffn_b2));
    if (train) f = dropout(f, options.dropout, *options.rng);
    x = layer_norm(add(x, f), tape.parameter(*layer.ln2_gain),
                   tape.parameter(*layer.ln2_bias));
  }
  return {x, slice_rows(x, 0, 1)};
}

EncoderOutput TransformerEncoder::forward(Tape& tape, const PairInput& input,
                                          const ForwardOptions& options) const {
  return forward(tape, input.ids, input.segment_ids,
                 std::vector<bool>(input.ids.size(), true), options);
}

EncodedTurn encode_turn(const TransformerEncoder& encoder, const PairInput& input,
                        int pad_to) {
  EncodedTurn out;
  out.input = input;
  std::vector<int> ids = input.ids;
  std::vector<int> segments = input.segment_ids;
  out.pad_mask.assign(ids.size(), true);
  while (static_cast<int>(ids.size()) < pad_to) {
    ids.push_back(Vocabulary::kPad);
    segments.push_back(0);
    out.pad_mask.push_back(false);
  }
  Tape tape;
  const EncoderOutput y = encoder.forward(tape, ids, segments, out.pad_mask);
  out.y_tok = y.tokens.value();
  out.y_cls = y.cls.value();
  return out;
}

}  // namespace schemadst::encoder
