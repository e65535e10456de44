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

#include "schemadst/tensor/attention.h"

#include <algorithm>
#include <cmath>

#include "schemadst/common/error.h"

namespace schemadst::tensor {

void AttentionConfig::validate() const {
  if (model_dim <= 0 || num_heads <= 0 || model_dim % num_heads != 0) {
    throw ConfigError("attention: num_heads (" + std::to_string(num_heads) +
                      ") must divide model_dim (" + std::to_string(model_dim) +
                      ")");
  }
}

MultiHeadAttention::MultiHeadAttention(ParameterStore& store,
                                       const std::string& prefix,
                                       AttentionConfig config,
                                       std::mt19937_64& rng,
                                       double init_stddev)
    : config_(config) {
  config_.validate();
  const int q = config_.model_dim;
  wq_ = &store.add_normal(prefix + ".wq", q, q, init_stddev, rng);
  bq_ = &store.add_zeros(prefix + ".bq", 1, q);
  wk_ = &store.add_normal(prefix + ".wk", q, q, init_stddev, rng);
  bk_ = &store.add_zeros(prefix + ".bk", 1, q);
  wv_ = &store.add_normal(prefix + ".wv", q, q, init_stddev, rng);
  bv_ = &store.add_zeros(prefix + ".bv", 1, q);
  wo_ = &store.add_normal(prefix + ".wo", q, q, init_stddev, rng);
  bo_ = &store.add_zeros(prefix + ".bo", 1, q);
}

Var MultiHeadAttention::forward(Tape& tape, Var query, Var keys, Var values,
                                const std::vector<bool>& mask,
                                std::vector<Matrix>* weights) const {
  if (static_cast<Eigen::Index>(mask.size()) != keys.rows() ||
      keys.rows() != values.rows()) {
    throw Error("attention: keys, values and mask must have equal length");
  }
  if (std::none_of(mask.begin(), mask.end(), [](bool b) { return b; })) {
    throw Error("attention: every key position is masked");
  }
  const int d = config_.head_dim();
  const double scale_factor = 1.0 / std::sqrt(static_cast<double>(d));
  Var q = add(matmul(query, tape.parameter(*wq_)), tape.parameter(*bq_));
  Var k = add(matmul(keys, tape.parameter(*wk_)), tape.parameter(*bk_));
  Var v = add(matmul(values, tape.parameter(*wv_)), tape.parameter(*bv_));
  if (weights != nullptr) weights->clear();
  std::vector<Var> heads;
  heads.reserve(config_.num_heads);
  for (int h = 0; h < config_.num_heads; ++h) {
    Var qh = slice_cols(q, h * d, d);
    Var kh = slice_cols(k, h * d, d);
    Var vh = slice_cols(v, h * d, d);
    Var p = softmax_rows(mask_columns(scale(matmul_nt(qh, kh), scale_factor), mask));
    if (weights != nullptr) weights->push_back(p.value());
    heads.push_back(matmul(p, vh));
  }
  Var joined = heads.size() == 1 ? heads.front() : concat_cols(heads);
  return add(matmul(joined, tape.parameter(*wo_)), tape.parameter(*bo_));
}

}  // namespace schemadst::tensor
