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
#ifndef SCHEMADST_DECODERS_PROJECTION_H_
#define SCHEMADST_DECODERS_PROJECTION_H_

#include <random>
#include <string>
#include <vector>

#include "schemadst/tensor/attention.h"

namespace schemadst::decoders {

using tensor::Matrix;
using tensor::Tape;
using tensor::Var;

// Two-layer GELU projection of a schema vector x conditioned on an utterance
// vector y:
//   h1 = GELU(y W1 + b1)
//   h2 = GELU([x, h1] W2 + b2)
//   logits = h2 W3 + b3
// Returns logits; callers pick the normalisation (softmax across classes or
// candidates, or a sigmoid for a single output).
class ProjectionFC {
 public:
  ProjectionFC(tensor::ParameterStore& store, const std::string& prefix,
               int dim, int out_dim, std::mt19937_64& rng,
               double init_stddev = 0.02);

  // x: n x q, y: 1 x q, or x: 1 x q, y: m x q. Result has max(n, m) rows
  // and out_dim columns.
  Var forward(Tape& tape, Var x, Var y) const;

  int out_dim() const { return out_dim_; }

  const tensor::Parameter& w1() const { return *w1_; }
  const tensor::Parameter& b1() const { return *b1_; }
  const tensor::Parameter& w2() const { return *w2_; }
  const tensor::Parameter& b2() const { return *b2_; }
  const tensor::Parameter& w3() const { return *w3_; }
  const tensor::Parameter& b3() const { return *b3_; }

 private:
  int dim_;
  int out_dim_;
  const tensor::Parameter* w1_;
  const tensor::Parameter* b1_;
  const tensor::Parameter* w2_;  // 2q x q; rows [0, q) act on x
  const tensor::Parameter* b2_;
  const tensor::Parameter* w3_;
  const tensor::Parameter* b3_;
};

// Attention projection: each schema vector queries the token states, then a
// linear layer maps the attended vector to out_dim logits.
class ProjectionMHA {
 public:
  ProjectionMHA(tensor::ParameterStore& store, const std::string& prefix,
                tensor::AttentionConfig attention, int out_dim,
                std::mt19937_64& rng, double init_stddev = 0.02);

  // x: n x q queries; tokens: M x q; mask: M flags (true = real token).
  // Throws schemadst::Error when no token is valid.
  Var forward(Tape& tape, Var x, Var tokens, const std::vector<bool>& mask,
              std::vector<Matrix>* weights = nullptr) const;

  int out_dim() const { return out_dim_; }
  const tensor::MultiHeadAttention& attention() const { return attention_; }
  const tensor::Parameter& w1() const { return *w1_; }
  const tensor::Parameter& b1() const { return *b1_; }

 private:
  int out_dim_;
  tensor::MultiHeadAttention attention_;
  const tensor::Parameter* w1_;
  const tensor::Parameter* b1_;
};

}  // namespace schemadst::decoders

#endif  // SCHEMADST_DECODERS_PROJECTION_H_
