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
#include "schemadst/decoders/projection.h"

#include "schemadst/tensor/ops.h"

namespace schemadst::decoders {

ProjectionFC::ProjectionFC(tensor::ParameterStore& store,
                           const std::string& prefix, int dim, int out_dim,
                           std::mt19937_64& rng, double init_stddev)
    : dim_(dim), out_dim_(out_dim) {
  w1_ = &store.add_normal(prefix + ".w1", dim, dim, init_stddev, rng);
  b1_ = &store.add_zeros(prefix + ".b1", 1, dim);
  w2_ = &store.add_normal(prefix + ".w2", 2 * dim, dim, init_stddev, rng);
  b2_ = &store.add_zeros(prefix + ".b2", 1, dim);
  w3_ = &store.add_normal(prefix + ".w3", dim, out_dim, init_stddev, rng);
  b3_ = &store.add_zeros(prefix + ".b3", 1, out_dim);
}

Var ProjectionFC::forward(Tape& tape, Var x, Var y) const {
  using namespace tensor;
  const Var h1 = gelu(add(matmul(y, tape.parameter(*w1_)),
                          tape.parameter(*b1_)));
  const Var w2 = tape.parameter(*w2_);
  const Var from_x = matmul(x, slice_rows(w2, 0, dim_));
  const Var from_h = matmul(h1, slice_rows(w2, dim_, dim_));
  const Var h2 = gelu(add(add(from_x, from_h), tape.parameter(*b2_)));
  return add(matmul(h2, tape.parameter(*w3_)), tape.parameter(*b3_));
}

ProjectionMHA::ProjectionMHA(tensor::ParameterStore& store,
                             const std::string& prefix,
                             tensor::AttentionConfig attention, int out_dim,
                             std::mt19937_64& rng, double init_stddev)
    : out_dim_(out_dim),
      attention_(store, prefix + ".attention", attention, rng, init_stddev) {
  w1_ = &store.add_normal(prefix + ".w1", attention.model_dim, out_dim,
                          init_stddev, rng);
  b1_ = &store.add_zeros(prefix + ".b1", 1, out_dim);
}

Var ProjectionMHA::forward(Tape& tape, Var x, Var tokens,
                           const std::vector<bool>& mask,
                           std::vector<Matrix>* weights) const {
  using namespace tensor;
  const Var h1 = attention_.forward(tape, x, tokens, tokens, mask, weights);
  return add(matmul(h1, tape.parameter(*w1_)), tape.parameter(*b1_));
}

}  // namespace schemadst::decoders
