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
#ifndef SCHEMADST_TRACKER_TRACKER_H_
#define SCHEMADST_TRACKER_TRACKER_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schemadst/corpus/types.h"
#include "schemadst/decoders/state_decoder.h"
#include "schemadst/encoder/tokenizer.h"
#include "schemadst/tracker/candidates.h"

namespace schemadst::tracker {

using corpus::DialogueState;
using corpus::SlotStatus;

struct ActionRecord {
  int turn_index = 0;
  std::string service;
  corpus::SystemAction action;
};

struct StateRecord {
  int turn_index = 0;
  std::string service;
  DialogueState state;
};

// What the tracker has seen of one dialogue so far. Append-only.
class TrackerContext {
 public:
  void observe_system_turn(int turn_index, const corpus::Turn& turn);
  void record_state(int turn_index, const std::string& service,
                    DialogueState state);

  // Empty state (NONE intent, no slots) for services not seen yet.
  const DialogueState& previous_state(std::string_view service) const;
  const std::vector<ActionRecord>& actions() const { return actions_; }
  const std::vector<StateRecord>& states() const { return states_; }
  // Service of the most recently recorded state; empty at the start.
  const std::string& current_service() const { return current_service_; }

 private:
  std::vector<ActionRecord> actions_;
  std::vector<StateRecord> states_;
  std::map<std::string, DialogueState, std::less<>> latest_;
  std::string current_service_;
};

struct TrackerOptions {
  bool in_service_carry_over = true;
  bool cross_service_carry_over = true;
};

// Most recent system action of `service` carrying a value for `slot`.
// Don't-care values are skipped.
std::optional<std::string> in_service_carry_over(const TrackerContext& ctx,
                                                 const std::string& service,
                                                 const std::string& slot);

// For each slot of `target` with candidate entries, the value held by a
// candidate source slot in the most recent state of another service.
std::map<std::string, std::string> cross_service_carry_over(
    const TrackerContext& ctx, const CandidateTable& table,
    const corpus::ServiceSchema& target);

// Decoder decisions for one frame plus the token view needed to read spans.
struct FrameObservation {
  std::string service;
  decoders::FrameDecision decision;
  const encoder::PairInput* input = nullptr;
  std::string_view system_utterance;
  std::string_view user_utterance;
};

enum class Trigger {
  kNone = 0,
  kCarryOverStatus = 1,   // status predicted as carry_over
  kSpanOutsideUser = 2,   // active span outside the user utterance
  kCarryOverValue = 3,    // active categorical slot predicted the sentinel
};
std::string_view trigger_name(Trigger trigger);

struct SlotTrace {
  std::string slot;
  SlotStatus status = SlotStatus::kInactive;
  Trigger trigger = Trigger::kNone;
  // Sources consulted, in order, e.g. "in-service" or
  // "cross-service Restaurants_1.city (0.67)".
  std::vector<std::string> consulted;
  std::string resolved_from;  // empty when the slot was not updated
  std::optional<std::vector<std::string>> before;
  std::optional<std::vector<std::string>> after;
};

struct FrameTrace {
  int turn_index = 0;
  std::string service;
  bool switched = false;
  std::string previous_service;
  std::vector<SlotTrace> slots;  // only slots that were not inactive
  DialogueState state;
};

// One state update: start from the service's previous state and apply each
// slot's decision (inactive keeps, dont_care sets the don't-care value,
// active takes the decoded value, carry-over cases search in-service first
// and then, on a switch turn, the cross-service candidates).
DialogueState apply_turn(TrackerContext& ctx, const corpus::ServiceSchema& schema,
                         const FrameObservation& observation, int turn_index,
                         const CandidateTable& table,
                         const TrackerOptions& options = {},
                         FrameTrace* trace = nullptr);

struct TrackedFrame {
  int turn_index = 0;
  int frame_index = 0;
  std::string service;
  DialogueState state;
};

using ObservationFn =
    std::function<FrameObservation(int turn_index, int frame_index)>;

// Left fold of apply_turn over the user frames of `dialogue` in annotation
// order; system turns feed the action history.
std::vector<TrackedFrame> track_dialogue(
    const corpus::Dialogue& dialogue, const corpus::SchemaIndex& schemas,
    const ObservationFn& observe, const CandidateTable& table,
    const TrackerOptions& options = {},
    std::vector<FrameTrace>* traces = nullptr);

}  // namespace schemadst::tracker

#endif  // SCHEMADST_TRACKER_TRACKER_H_
