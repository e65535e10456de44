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

#ifndef SCHEMADST_CORPUS_GOLD_TARGETS_H_
#define SCHEMADST_CORPUS_GOLD_TARGETS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schemadst/corpus/types.h"

namespace schemadst::corpus {

// Per-turn slot status. The numeric order is also the argmax tie-break order.
enum class SlotStatus : int {
  kInactive = 0,
  kActive = 1,
  kDontCare = 2,
  kCarryOver = 3,
};
inline constexpr int kNumStatuses = 4;
std::string_view status_name(SlotStatus status);

// Where the gold value of an updated slot can be found.
enum class ValueSource {
  kNone,
  kUserUtterance,
  kSystemAction,   // offered earlier by the system for the same service
  kOtherService,   // held by another service's state earlier in the dialogue
  kUnrecoverable,  // none of the above
};
std::string_view source_name(ValueSource source);

struct CharSpan {
  int start = 0;
  int end = 0;  // exclusive

  friend bool operator==(const CharSpan&, const CharSpan&) = default;
};

// Index 0 of every categorical candidate list is the carry-over sentinel.
inline constexpr int kCarryOverValueIndex = 0;

struct SlotTarget {
  std::string slot;
  bool categorical = false;
  SlotStatus status = SlotStatus::kInactive;
  bool requested = false;
  // Accepted values after this turn; empty when the slot is unset.
  std::vector<std::string> value;
  // 0 for the sentinel, i + 1 for possible_values[i]; -1 when the head is not
  // trained on this slot this turn.
  int categorical_index = -1;
  // Character span inside the user utterance (active non-categorical slots).
  std::optional<CharSpan> user_span;
  ValueSource source = ValueSource::kNone;
  std::string note;  // provenance detail for flagged cases
};

struct FrameTargets {
  int turn_index = 0;
  int user_turn = 0;
  int frame_index = 0;
  std::string service;
  int intent_index = 0;  // 0 is NONE, i + 1 names intents[i]
  std::vector<SlotTarget> slots;  // schema slot order
  DialogueState state;            // annotated state after the turn
};

struct GoldTargets {
  std::string dialogue_id;
  std::vector<FrameTargets> frames;  // user frames in annotation order
};

// Derives decoder targets from state annotations. For each slot of each user
// frame, compared with the previous state of the same service:
//   unchanged value                                  -> inactive
//   updated to don't-care                            -> dont_care
//   updated, value located in the current utterance  -> active
//   updated otherwise                                -> carry_over
// Non-categorical values are located through the frame's slot spans;
// categorical ones through user actions or a word-bounded mention. Carry-over
// targets record where the value can be recovered from, or are flagged
// unrecoverable with a note.
GoldTargets derive_gold_targets(const Dialogue& dialogue,
                                const SchemaIndex& schemas);

}  // namespace schemadst::corpus

#endif  // SCHEMADST_CORPUS_GOLD_TARGETS_H_
