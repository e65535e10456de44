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

#ifndef SCHEMADST_TENSOR_GRAD_CHECK_H_
#define SCHEMADST_TENSOR_GRAD_CHECK_H_

#include <functional>
#include <string>
#include <vector>

#include "schemadst/tensor/tape.h"

namespace schemadst::tensor {

struct GradCheckOptions {
  double epsilon = 1e-6;
  // Denominator floor: error = |a - n| / max(|a|, |n|, scale_floor).
  double scale_floor = 1e-4;
  // Restrict to parameters whose names start with one of these prefixes.
  std::vector<std::string> prefixes;
  // Cap on checked elements per parameter (evenly strided); 0 = all.
  int max_elements_per_parameter = 0;
};

struct GradCheckReport {
  double max_relative_error = 0.0;
  std::string worst_parameter;
  long worst_element = -1;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t elements_checked = 0;
};

// Compares reverse-mode gradients of `loss` with central finite differences
// for every (selected) parameter element. `loss` builds the graph on the
// tape it is handed and must be deterministic.
GradCheckReport grad_check(ParameterStore& store,
                           const std::function<Var(Tape&)>& loss,
                           const GradCheckOptions& options = {});

}  // namespace schemadst::tensor

#endif  // SCHEMADST_TENSOR_GRAD_CHECK_H_
