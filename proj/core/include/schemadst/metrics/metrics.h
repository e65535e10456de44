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
#ifndef SCHEMADST_METRICS_METRICS_H_
#define SCHEMADST_METRICS_METRICS_H_

#include <set>
#include <string>
#include <vector>

#include "schemadst/corpus/types.h"
#include "schemadst/tracker/tracker.h"

namespace schemadst::metrics {

using corpus::DialogueState;

// One user frame with its gold and predicted state.
struct FrameEval {
  std::string dialogue_id;
  int turn_index = 0;
  std::string service;
  bool single_domain = true;
  DialogueState gold;
  DialogueState pred;
};

// Pairs every user frame of `gold` with the tracker's output. Throws
// schemadst::Error when counts or services disagree.
std::vector<FrameEval> pair_frames(
    const std::vector<corpus::Dialogue>& gold,
    const std::vector<std::vector<tracker::TrackedFrame>>& predicted);

struct MetricValue {
  double value = 1.0;
  long count = 0;  // contributing units (frames or slot values)
};

// Exact match of the active intent, NONE included.
MetricValue active_intent_accuracy(const std::vector<FrameEval>& frames);

// Per-frame F1 of the requested-slot sets averaged over frames; frames with
// empty gold and predicted sets are skipped.
MetricValue requested_slot_f1(const std::vector<FrameEval>& frames);

// Value comparison: both sides canonicalised for don't-care; categorical
// values must match exactly, others case-insensitively after whitespace
// normalisation. A prediction matches when it equals any accepted value.
bool values_match(const std::vector<std::string>& gold,
                  const std::vector<std::string>& pred, bool categorical);

// Fraction of gold slot values predicted correctly. With no gold values the
// value is 1.0 and count is 0.
MetricValue average_goal_accuracy(const std::vector<FrameEval>& frames,
                                  const corpus::SchemaIndex& schemas);

// Fraction of frames whose whole slot-value map matches gold (no missing
// and no extra slots).
MetricValue joint_goal_accuracy(const std::vector<FrameEval>& frames,
                                const corpus::SchemaIndex& schemas);

// Services that actually occur in the frames of `dialogues`.
std::set<std::string> observed_services(
    const std::vector<corpus::Dialogue>& dialogues);

// Eligibility mask over `frames` (which must keep dialogue order). A frame
// is seen when its service is in `train_services`; in fixed mode it must
// also not be preceded, within its dialogue, by a frame of an unseen
// service.
std::vector<bool> seen_service_filter(const std::vector<FrameEval>& frames,
                                      const std::set<std::string>& train_services,
                                      bool fixed);

struct SliceReport {
  std::string name;
  long frames = 0;
  MetricValue active_intent_accuracy;
  MetricValue requested_slot_f1;
  MetricValue average_goal_accuracy;
  MetricValue joint_goal_accuracy;
};

struct EvalReport {
  std::vector<SliceReport> slices;
  const SliceReport* find(const std::string& name) const;
  // "<slice>.<metric>=<value>" lines, counts alongside.
  std::string to_text() const;
  std::string to_json() const;
};

// Slice names: "all", "single_domain", "multi_domain", and, when
// train_services is given, "seen_unfixed", "seen_fixed", "unseen".
struct SliceSelection {
  bool domain = true;
  bool seen = true;
};

EvalReport evaluate(const std::vector<FrameEval>& frames,
                    const corpus::SchemaIndex& schemas,
                    const std::set<std::string>* train_services = nullptr,
                    SliceSelection selection = {});

}  // namespace schemadst::metrics

#endif  // SCHEMADST_METRICS_METRICS_H_
