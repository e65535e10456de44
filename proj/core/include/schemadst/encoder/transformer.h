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

#ifndef SCHEMADST_ENCODER_TRANSFORMER_H_
#define SCHEMADST_ENCODER_TRANSFORMER_H_

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "schemadst/encoder/tokenizer.h"
#include "schemadst/tensor/attention.h"

namespace schemadst::encoder {

using tensor::Matrix;
using tensor::Tape;
using tensor::Var;

struct EncoderConfig {
  int vocab_size = 0;
  int model_dim = 64;
  int num_layers = 2;
  int num_heads = 4;
  int ffn_dim = 256;
  int max_seq_len = 128;
  double init_stddev = 0.02;

  void validate() const;
};

// Training-time switches for a forward pass. Without an rng, dropout is off.
struct ForwardOptions {
  double dropout = 0.0;
  std::mt19937_64* rng = nullptr;

  bool training() const { return rng != nullptr && dropout > 0.0; }
};

struct EncoderOutput {
  Var tokens;  // M x q, final hidden states (Y_tok)
  Var cls;     // 1 x q, row 0 of `tokens` (Y_cls)
};

// Post-norm transformer encoder: token + position + segment embeddings,
// then `num_layers` blocks of masked self-attention and a GELU feed-forward
// layer, each followed by a residual connection and layer normalisation.
class TransformerEncoder {
 public:
  TransformerEncoder(tensor::ParameterStore& store, const std::string& prefix,
                     EncoderConfig config, std::mt19937_64& rng);

  // `valid` marks non-pad positions.
  EncoderOutput forward(Tape& tape, const std::vector<int>& ids,
                        const std::vector<int>& segment_ids,
                        const std::vector<bool>& valid,
                        const ForwardOptions& options = {}) const;
  EncoderOutput forward(Tape& tape, const PairInput& input,
                        const ForwardOptions& options = {}) const;

  const EncoderConfig& config() const { return config_; }
  const tensor::Parameter& token_embedding() const { return *token_embedding_; }

 private:
  struct Layer {
    std::unique_ptr<tensor::MultiHeadAttention> attention;
    const tensor::Parameter* ln1_gain;
    const tensor::Parameter* ln1_bias;
    const tensor::Parameter* ffn_w1;
    const tensor::Parameter* ffn_b1;
    const tensor::Parameter* ffn_w2;
    const tensor::Parameter* ffn_b2;
    const tensor::Parameter* ln2_gain;
    const tensor::Parameter* ln2_bias;
  };

  EncoderConfig config_;
  const tensor::Parameter* token_embedding_;
  const tensor::Parameter* position_embedding_;
  const tensor::Parameter* segment_embedding_;
  const tensor::Parameter* embed_ln_gain_;
  const tensor::Parameter* embed_ln_bias_;
  std::vector<Layer> layers_;
};

// Evaluation-mode encoding of one turn, detached from any tape.
struct EncodedTurn {
  PairInput input;
  Matrix y_tok;  // M x q (M includes padding when requested)
  Matrix y_cls;  // 1 x q
  std::vector<bool> pad_mask;  // true = real token
};

// Runs the encoder without dropout. `pad_to` > input size appends [PAD]
// positions that are masked out of attention.
EncodedTurn encode_turn(const TransformerEncoder& encoder, const PairInput& input,
                        int pad_to = 0);

}  // namespace schemadst::encoder

#endif  // SCHEMADST_ENCODER_TRANSFORMER_H_
