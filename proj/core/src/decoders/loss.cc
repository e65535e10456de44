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
#include "schemadst/decoders/loss.h"

#include <cmath>

#include "schemadst/tensor/ops.h"

namespace schemadst::decoders {

LossBreakdown& LossBreakdown::operator+=(const LossBreakdown& o) {
  intent += o.intent;
  requested += o.requested;
  status += o.status;
  value += o.value;
  span_start += o.span_start;
  span_end += o.span_end;
  return *this;
}

namespace {

std::vector<int> pick(const std::vector<int>& by_slot,
                      const std::vector<int>& slots) {
  std::vector<int> out;
  out.reserve(slots.size());
  for (int s : slots) out.push_back(by_slot[s]);
  return out;
}

bool any_target(const std::vector<int>& t) {
  for (int v : t) {
    if (v >= 0) return true;
  }
  return false;
}

}  // namespace

LossResult multitask_loss(Tape& tape, const DecoderGraph& g,
                          const FrameLabels& labels, const LossWeights& w) {
  using namespace tensor;
  LossResult r;
  std::vector<Var> terms;
  auto add_term = [&](Var v, double weight, double& part) {
    part += v.scalar();
    if (weight != 0.0) terms.push_back(weight == 1.0 ? v : scale(v, weight));
  };

  add_term(cross_entropy(g.intent, {labels.intent}), w.intent,
           r.parts.intent);
  add_term(binary_cross_entropy_with_logits(g.requested, labels.requested),
           w.requested, r.parts.requested);
  if (!g.categorical_slots.empty()) {
    add_term(cross_entropy(g.categorical_status,
                           pick(labels.status, g.categorical_slots)),
             w.status, r.parts.status);
    for (std::size_t k = 0; k < g.categorical_slots.size(); ++k) {
      const int target = labels.value[g.categorical_slots[k]];
      if (target < 0) continue;
      add_term(cross_entropy(g.values[k], {target}), w.value, r.parts.value);
    }
  }
  if (!g.noncategorical_slots.empty()) {
    add_term(cross_entropy(g.noncategorical_status,
                           pick(labels.status, g.noncategorical_slots)),
             w.status, r.parts.status);
    const auto starts = pick(labels.span_start, g.noncategorical_slots);
    const auto ends = pick(labels.span_end, g.noncategorical_slots);
    if (any_target(starts)) {
      add_term(cross_entropy(g.span_start, starts), w.span, r.parts.span_start);
      add_term(cross_entropy(g.span_end, ends), w.span, r.parts.span_end);
    }
  }
  r.total = terms.empty() ? tape.constant(Matrix::Zero(1, 1)) : add_n(terms);
  return r;
}

LossBreakdown multitask_loss(const DecoderOutput& out,
                             const FrameLabels& labels) {
  auto nll = [](double p) { return p >= 1.0 ? 0.0 : -std::log(p); };
  LossBreakdown b;
  b.intent = nll(out.intent[labels.intent]);
  for (std::size_t i = 0; i < out.requested.size(); ++i) {
    const double p = out.requested[i];
    b.requested += nll(labels.requested[i] > 0.5 ? p : 1.0 - p);
    b.status += nll(out.status[i][labels.status[i]]);
    if (labels.value[i] >= 0) b.value += nll(out.value[i][labels.value[i]]);
    if (labels.span_start[i] >= 0) {
      b.span_start += nll(out.span_start[i][labels.span_start[i]]);
      b.span_end += nll(out.span_end[i][labels.span_end[i]]);
    }
  }
  return b;
}

}  // namespace schemadst::decoders
