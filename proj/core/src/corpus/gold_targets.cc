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

#include "schemadst/corpus/gold_targets.h"

#include <algorithm>
#include <map>

namespace schemadst::corpus {
namespace {

const std::vector<std::string>* lookup(const DialogueState& s,
                                       const std::string& slot) {
  auto it = s.slot_values.find(slot);
  return it == s.slot_values.end() ? nullptr : &it->second;
}

bool same_values(const std::vector<std::string>* a,
                 const std::vector<std::string>* b) {
  if (a == nullptr || b == nullptr) return a == b;
  return values_overlap(*a, *b);
}

std::optional<CharSpan> find_user_span(const Turn& turn, const Frame& frame,
                                       const std::string& slot,
                                       const std::vector<std::string>& values) {
  for (const SlotSpan& span : frame.slot_spans) {
    if (span.slot != slot) continue;
    const std::string text = turn.utterance.substr(
        span.start_char, span.end_char - span.start_char);
    if (std::find(values.begin(), values.end(), text) != values.end()) {
      return CharSpan{span.start_char, span.end_char};
    }
  }
  return std::nullopt;
}

bool categorical_mentioned(const Turn& turn, const Frame& frame,
                           const std::string& slot,
                           const std::vector<std::string>& values) {
  for (const SystemAction& a : frame.actions) {
    if (a.slot && *a.slot == slot && values_overlap(a.values, values)) {
      return true;
    }
  }
  return std::any_of(values.begin(), values.end(), [&](const std::string& v) {
    return contains_word(turn.utterance, v);
  });
}

int categorical_value_index(const SlotSpec& spec,
                            const std::vector<std::string>& values) {
  for (std::size_t i = 0; i < spec.possible_values.size(); ++i) {
    for (const auto& v : values) {
      if (normalize_text(spec.possible_values[i]) == normalize_text(v)) {
        return static_cast<int>(i) + 1;
      }
    }
  }
  return -1;
}

}  // namespace

std::string_view status_name(SlotStatus status) {
  switch (status) {
    case SlotStatus::kInactive: return "inactive";
    case SlotStatus::kActive: return "active";
    case SlotStatus::kDontCare: return "dont_care";
    case SlotStatus::kCarryOver: return "carry_over";
  }
  return "?";
}

std::string_view source_name(ValueSource source) {
  switch (source) {
    case ValueSource::kNone: return "none";
    case ValueSource::kUserUtterance: return "user_utterance";
    case ValueSource::kSystemAction: return "system_action";
    case ValueSource::kOtherService: return "other_service";
    case ValueSource::kUnrecoverable: return "unrecoverable";
  }
  return "?";
}

GoldTargets derive_gold_targets(const Dialogue& dialogue,
                                const SchemaIndex& schemas) {
  GoldTargets out;
  out.dialogue_id = dialogue.dialogue_id;
  std::map<std::string, DialogueState> previous;
  // Every (service, state) seen so far, for cross-service provenance.
  std::vector<std::pair<std::string, DialogueState>> history;
  int user_turn = -1;
  for (std::size_t t = 0; t < dialogue.turns.size(); ++t) {
    const Turn& turn = dialogue.turns[t];
    if (turn.speaker != Speaker::kUser) continue;
    ++user_turn;
    for (std::size_t fi = 0; fi < turn.frames.size(); ++fi) {
      const Frame& frame = turn.frames[fi];
      const ServiceSchema& schema = schemas.at(frame.service);
      const DialogueState state = frame.state.value_or(DialogueState{});
      const DialogueState prev = previous.count(frame.service)
                                     ? previous.at(frame.service)
                                     : DialogueState{};
      FrameTargets ft;
      ft.turn_index = static_cast<int>(t);
      ft.user_turn = user_turn;
      ft.frame_index = static_cast<int>(fi);
      ft.service = frame.service;
      ft.intent_index = schema.intent_index(state.active_intent) + 1;
      ft.state = state;
      for (const SlotSpec& spec : schema.slots) {
        SlotTarget st;
        st.slot = spec.name;
        st.categorical = spec.is_categorical;
        st.requested = state.requested_slots.count(spec.name) > 0;
        const auto* now = lookup(state, spec.name);
        const auto* before = lookup(prev, spec.name);
        if (now != nullptr) st.value = *now;
        if (same_values(now, before)) {
          st.status = SlotStatus::kInactive;
        } else if (now == nullptr) {
          st.status = SlotStatus::kInactive;
          st.source = ValueSource::kUnrecoverable;
          st.note = "value removed from state; status cannot express removal";
        } else if (std::any_of(now->begin(), now->end(), is_dont_care)) {
          st.status = SlotStatus::kDontCare;
        } else if (spec.is_categorical) {
          if (categorical_mentioned(turn, frame, spec.name, *now)) {
            st.status = SlotStatus::kActive;
            st.source = ValueSource::kUserUtterance;
            st.categorical_index = categorical_value_index(spec, *now);
            if (st.categorical_index < 0) {
              st.note = "value not among the schema's possible values";
            }
          } else {
            st.status = SlotStatus::kCarryOver;
            st.categorical_index = kCarryOverValueIndex;
          }
        } else if (auto span = find_user_span(turn, frame, spec.name, *now)) {
          st.status = SlotStatus::kActive;
          st.source = ValueSource::kUserUtterance;
          st.user_span = span;
        } else {
          st.status = SlotStatus::kCarryOver;
        }

        if (st.status == SlotStatus::kCarryOver) {
          // Provenance: in-service system actions first, then other services.
          for (std::size_t k = 0; k < t && st.source == ValueSource::kNone; ++k) {
            const Turn& earlier = dialogue.turns[t - 1 - k];
            if (earlier.speaker != Speaker::kSystem) continue;
            for (const Frame& sf : earlier.frames) {
              if (sf.service != frame.service) continue;
              for (const SystemAction& a : sf.actions) {
                if (a.slot && *a.slot == spec.name &&
                    values_overlap(a.values, *now)) {
                  st.source = ValueSource::kSystemAction;
                }
              }
            }
          }
          for (auto it = history.rbegin();
               it != history.rend() && st.source == ValueSource::kNone; ++it) {
            if (it->first == frame.service) continue;
            for (const auto& [slot, values] : it->second.slot_values) {
              if (values_overlap(values, *now)) {
                st.source = ValueSource::kOtherService;
                break;
              }
            }
          }
          if (st.source == ValueSource::kNone) {
            st.source = ValueSource::kUnrecoverable;
            st.note = "value '" + now->front() +
                      "' is not in the user utterance, a system action, or "
                      "another service's state";
          }
        }
        ft.slots.push_back(std::move(st));
      }
      out.frames.push_back(std::move(ft));
    }
    for (const Frame& frame : turn.frames) {
      const DialogueState state = frame.state.value_or(DialogueState{});
      previous[frame.service] = state;
      history.emplace_back(frame.service, state);
    }
  }
  return out;
}

}  // namespace schemadst::corpus
