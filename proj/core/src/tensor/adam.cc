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

#include "schemadst/tensor/adam.h"

#include <algorithm>
#include <cmath>

#include "schemadst/common/error.h"

namespace schemadst::tensor {

void OptimizerConfig::validate() const {
  if (!(peak_learning_rate > 0)) throw ConfigError("peak_learning_rate must be > 0");
  if (!(warmup_fraction > 0 && warmup_fraction < 1)) {
    throw ConfigError("warmup_fraction must lie in (0, 1)");
  }
  if (total_steps < 1) throw ConfigError("total_steps must be >= 1");
  if (!(dropout >= 0 && dropout < 1)) throw ConfigError("dropout must lie in [0, 1)");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
}

LinearWarmupDecay::LinearWarmupDecay(double peak, double warmup_fraction,
                                     long total_steps)
    : peak_(peak),
      warmup_(warmup_fraction * static_cast<double>(total_steps)),
      total_(static_cast<double>(total_steps)) {}

double LinearWarmupDecay::operator()(long step) const {
  const double s = static_cast<double>(step);
  if (s <= 0) return 0.0;
  if (s >= total_) return 0.0;
  if (s <= warmup_) return peak_ * s / warmup_;
  return peak_ * (total_ - s) / (total_ - warmup_);
}

Adam::Adam(const ParameterStore& store, OptimizerConfig config)
    : config_(config), schedule_(config) {
  config_.validate();
  for (std::size_t i = 0; i < store.size(); ++i) {
    m_.push_back(Matrix::Zero(store[i].value.rows(), store[i].value.cols()));
    v_.push_back(Matrix::Zero(store[i].value.rows(), store[i].value.cols()));
  }
}

void Adam::step(ParameterStore& store, const Gradients& grads, long step) {
  if (step < 1) throw Error("Adam::step: step must be >= 1");
  if (grads.size() != store.size() || m_.size() != store.size()) {
    throw Error("Adam::step: gradient/parameter count mismatch");
  }
  double clip = 1.0;
  if (config_.clip_norm) {
    const double norm = grads.norm();
    if (norm > *config_.clip_norm) clip = *config_.clip_norm / norm;
  }
  const double lr = schedule_(step);
  const double b1 = config_.beta1, b2 = config_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(step));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(step));
  for (std::size_t i = 0; i < store.size(); ++i) {
    Matrix& p = store[i].value;
    const auto g = grads[i].array() * clip;
    m_[i].array() = b1 * m_[i].array() + (1.0 - b1) * g;
    v_[i].array() = b2 * v_[i].array() + (1.0 - b2) * g.square();
    if (config_.weight_decay > 0) p *= (1.0 - lr * config_.weight_decay);
    p.array() -= lr * (m_[i].array() / c1) /
                 ((v_[i].array() / c2).sqrt() + config_.epsilon);
  }
}

}  // namespace schemadst::tensor
