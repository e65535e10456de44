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

#ifndef SCHEMADST_TENSOR_ATTENTION_H_
#define SCHEMADST_TENSOR_ATTENTION_H_

#include <random>
#include <string>
#include <vector>

#include "schemadst/tensor/ops.h"

namespace schemadst::tensor {

struct AttentionConfig {
  int model_dim = 64;
  int num_heads = 4;

  int head_dim() const { return model_dim / num_heads; }
  // Throws ConfigError unless num_heads divides model_dim.
  void validate() const;
};

// Scaled dot-product attention over `num_heads` heads with learned
// query/key/value/output projections. Invalid (padded) key positions get an
// additive -inf before the softmax, i.e. exactly zero weight.
class MultiHeadAttention {
 public:
  MultiHeadAttention(ParameterStore& store, const std::string& prefix,
                     AttentionConfig config, std::mt19937_64& rng,
                     double init_stddev = 0.02);

  // query: L_q x q; keys, values: M x q; mask: M flags, true = valid.
  // When `weights` is given it receives the per-head L_q x M weights.
  Var forward(Tape& tape, Var query, Var keys, Var values,
              const std::vector<bool>& mask,
              std::vector<Matrix>* weights = nullptr) const;

  const AttentionConfig& config() const { return config_; }

 private:
  AttentionConfig config_;
  const Parameter* wq_;
  const Parameter* bq_;
  const Parameter* wk_;
  const Parameter* bk_;
  const Parameter* wv_;
  const Parameter* bv_;
  const Parameter* wo_;
  const Parameter* bo_;
};

}  // namespace schemadst::tensor

#endif  // SCHEMADST_TENSOR_ATTENTION_H_
