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

#include "schemadst/tensor/grad_check.h"

#include <algorithm>
#include <cmath>

namespace schemadst::tensor {
namespace {

double evaluate(const std::function<Var(Tape&)>& loss) {
  Tape tape;
  return loss(tape).scalar();
}

bool selected(const std::string& name, const std::vector<std::string>& prefixes) {
  if (prefixes.empty()) return true;
  return std::any_of(prefixes.begin(), prefixes.end(),
                     [&](const std::string& p) { return name.starts_with(p); });
}

}  // namespace

GradCheckReport grad_check(ParameterStore& store,
                           const std::function<Var(Tape&)>& loss,
                           const GradCheckOptions& options) {
  Gradients analytic(store);
  {
    Tape tape;
    Var l = loss(tape);
    tape.backward(l);
    tape.accumulate(analytic);
  }
  GradCheckReport report;
  for (std::size_t i = 0; i < store.size(); ++i) {
    Parameter& p = store[i];
    if (!selected(p.name(), options.prefixes)) continue;
    const long n = static_cast<long>(p.value.size());
    long stride = 1;
    if (options.max_elements_per_parameter > 0 &&
        n > options.max_elements_per_parameter) {
      stride = n / options.max_elements_per_parameter;
    }
    for (long e = 0; e < n; e += stride) {
      double& x = p.value.data()[e];
      const double saved = x;
      x = saved + options.epsilon;
      const double up = evaluate(loss);
      x = saved - options.epsilon;
      const double down = evaluate(loss);
      x = saved;
      const double numeric = (up - down) / (2.0 * options.epsilon);
      const double a = analytic[i].data()[e];
      const double denom =
          std::max({std::abs(a), std::abs(numeric), options.scale_floor});
      const double err = std::abs(a - numeric) / denom;
      ++report.elements_checked;
      if (report.worst_element < 0 || err > report.max_relative_error) {
        report.max_relative_error = err;
        report.worst_parameter = p.name();
        report.worst_element = e;
        report.worst_analytic = a;
        report.worst_numeric = numeric;
      }
    }
  }
  return report;
}

}  // namespace schemadst::tensor
