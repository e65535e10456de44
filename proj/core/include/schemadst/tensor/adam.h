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

#ifndef SCHEMADST_TENSOR_ADAM_H_
#define SCHEMADST_TENSOR_ADAM_H_

#include <optional>
#include <vector>

#include "schemadst/tensor/parameter.h"

namespace schemadst::tensor {

struct OptimizerConfig {
  double peak_learning_rate = 4e-4;
  double warmup_fraction = 0.02;
  long total_steps = 1000;
  double dropout = 0.2;
  int batch_size = 128;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Not given for the reference setup; both default to off.
  double weight_decay = 0.0;
  std::optional<double> clip_norm;

  void validate() const;
};

// Continuous piecewise-linear schedule: 0 -> peak over the first
// warmup_fraction * total_steps steps, then linearly down to 0 at total_steps.
class LinearWarmupDecay {
 public:
  LinearWarmupDecay(double peak, double warmup_fraction, long total_steps);
  explicit LinearWarmupDecay(const OptimizerConfig& c)
      : LinearWarmupDecay(c.peak_learning_rate, c.warmup_fraction,
                          c.total_steps) {}

  double operator()(long step) const;
  double warmup_steps() const { return warmup_; }

 private:
  double peak_;
  double warmup_;
  double total_;
};

// Adam with bias correction; the step size follows LinearWarmupDecay.
class Adam {
 public:
  Adam(const ParameterStore& store, OptimizerConfig config);

  // `step` is 1-based. Applies optional clipping and decoupled weight decay.
  void step(ParameterStore& store, const Gradients& grads, long step);

  const OptimizerConfig& config() const { return config_; }
  const LinearWarmupDecay& schedule() const { return schedule_; }
  std::vector<Matrix>& first_moments() { return m_; }
  std::vector<Matrix>& second_moments() { return v_; }
  const std::vector<Matrix>& first_moments() const { return m_; }
  const std::vector<Matrix>& second_moments() const { return v_; }

 private:
  OptimizerConfig config_;
  LinearWarmupDecay schedule_;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
};

}  // namespace schemadst::tensor

#endif  // SCHEMADST_TENSOR_ADAM_H_
