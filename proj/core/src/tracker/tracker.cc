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
#include "schemadst/tracker/tracker.h"

#include <cstdio>

namespace schemadst::tracker {

using corpus::ServiceSchema;

void TrackerContext::observe_system_turn(int turn_index,
                                         const corpus::Turn& turn) {
  for (const corpus::Frame& f : turn.frames) {
    for (const corpus::SystemAction& a : f.actions) {
      actions_.push_back({turn_index, f.service, a});
    }
  }
}

void TrackerContext::record_state(int turn_index, const std::string& service,
                                  DialogueState state) {
  latest_.insert_or_assign(service, state);
  states_.push_back({turn_index, service, std::move(state)});
  current_service_ = service;
}

const DialogueState& TrackerContext::previous_state(
    std::string_view service) const {
  static const DialogueState kEmpty;
  auto it = latest_.find(service);
  return it == latest_.end() ? kEmpty : it->second;
}

std::optional<std::string> in_service_carry_over(const TrackerContext& ctx,
                                                 const std::string& service,
                                                 const std::string& slot) {
  const auto& actions = ctx.actions();
  for (auto it = actions.rbegin(); it != actions.rend(); ++it) {
    if (it->service != service || !it->action.slot ||
        *it->action.slot != slot) {
      continue;
    }
    for (const std::string& v : it->action.values) {
      if (!corpus::is_dont_care(v)) return v;
    }
  }
  return std::nullopt;
}

namespace {

struct CrossHit {
  std::string value;
  std::string label;
};

std::optional<CrossHit> cross_service_lookup(
    const TrackerContext& ctx, const CandidateTable& table,
    const std::string& service, const std::string& slot,
    std::vector<std::string>* consulted) {
  const auto& candidates = table.candidates(service, slot);
  if (consulted != nullptr) {
    for (const Candidate& c : candidates) {
      char p[32];
      std::snprintf(p, sizeof(p), "%.3f", c.likelihood);
      consulted->push_back("cross-service " + c.service + "." + c.slot + " (" +
                           p + ")");
    }
  }
  if (candidates.empty()) return std::nullopt;
  const auto& states = ctx.states();
  for (auto it = states.rbegin(); it != states.rend(); ++it) {
    if (it->service == service) continue;
    for (const Candidate& c : candidates) {
      if (c.service != it->service) continue;
      auto v = it->state.slot_values.find(c.slot);
      if (v == it->state.slot_values.end()) continue;
      for (const std::string& value : v->second) {
        if (corpus::is_dont_care(value)) continue;
        return CrossHit{value, "cross-service " + c.service + "." + c.slot +
                                   " (turn " + std::to_string(it->turn_index) +
                                   ")"};
      }
    }
  }
  return std::nullopt;
}

Trigger find_trigger(const corpus::SlotSpec& spec,
                     const decoders::SlotDecision& d,
                     const FrameObservation& obs,
                     std::optional<std::string>& value) {
  if (d.status == SlotStatus::kCarryOver) return Trigger::kCarryOverStatus;
  if (spec.is_categorical) {
    if (d.value_index <= 0 ||
        d.value_index > static_cast<int>(spec.possible_values.size())) {
      return Trigger::kCarryOverValue;
    }
    value = spec.possible_values[d.value_index - 1];
    return Trigger::kNone;
  }
  if (obs.input == nullptr || d.span_start <= 0 || d.span_end < d.span_start ||
      !obs.input->second.contains(d.span_start) ||
      !obs.input->second.contains(d.span_end)) {
    return Trigger::kSpanOutsideUser;
  }
  value = encoder::token_span_text(*obs.input, d.span_start, d.span_end,
                                   obs.system_utterance, obs.user_utterance);
  return value ? Trigger::kNone : Trigger::kSpanOutsideUser;
}

}  // namespace

std::map<std::string, std::string> cross_service_carry_over(
    const TrackerContext& ctx, const CandidateTable& table,
    const ServiceSchema& target) {
  std::map<std::string, std::string> out;
  for (const corpus::SlotSpec& s : target.slots) {
    auto hit =
        cross_service_lookup(ctx, table, target.service_name, s.name, nullptr);
    if (hit) out.emplace(s.name, std::move(hit->value));
  }
  return out;
}

std::string_view trigger_name(Trigger trigger) {
  switch (trigger) {
    case Trigger::kNone: return "none";
    case Trigger::kCarryOverStatus: return "1 (carry_over status)";
    case Trigger::kSpanOutsideUser: return "2 (span outside user utterance)";
    case Trigger::kCarryOverValue: return "3 (#CARRYOVER# value)";
  }
  return "?";
}

DialogueState apply_turn(TrackerContext& ctx, const ServiceSchema& schema,
                         const FrameObservation& obs, int turn_index,
                         const CandidateTable& table,
                         const TrackerOptions& options, FrameTrace* trace) {
  const std::string& service = schema.service_name;
  const bool switched =
      !ctx.current_service().empty() && ctx.current_service() != service;
  DialogueState state = ctx.previous_state(service);
  const decoders::FrameDecision& decision = obs.decision;

  state.active_intent =
      decision.intent_index <= 0
          ? std::string(corpus::kNoneIntent)
          : schema.intents.at(decision.intent_index - 1).name;
  state.requested_slots.clear();
  for (std::size_t i = 0; i < schema.slots.size(); ++i) {
    if (i < decision.requested.size() && decision.requested[i]) {
      state.requested_slots.insert(schema.slots[i].name);
    }
  }

  if (trace != nullptr) {
    trace->turn_index = turn_index;
    trace->service = service;
    trace->switched = switched;
    trace->previous_service = ctx.current_service();
    trace->slots.clear();
  }

  for (std::size_t i = 0; i < schema.slots.size(); ++i) {
    const corpus::SlotSpec& spec = schema.slots[i];
    const decoders::SlotDecision& d = decision.slots.at(i);
    if (d.status == SlotStatus::kInactive) continue;

    SlotTrace st;
    st.slot = spec.name;
    st.status = d.status;
    if (auto it = state.slot_values.find(spec.name);
        it != state.slot_values.end()) {
      st.before = it->second;
    }

    std::optional<std::string> value;
    if (d.status == SlotStatus::kDontCare) {
      value = std::string(corpus::kDontCare);
      st.resolved_from = "dont_care";
    } else {
      st.trigger = find_trigger(spec, d, obs, value);
      if (st.trigger == Trigger::kNone) {
        st.resolved_from = spec.is_categorical ? "categorical value"
                                               : "user utterance span";
      } else {
        if (options.in_service_carry_over) {
          st.consulted.push_back("in-service");
          value = in_service_carry_over(ctx, service, spec.name);
          if (value) st.resolved_from = "in-service system action";
        }
        if (!value && switched && options.cross_service_carry_over) {
          auto hit = cross_service_lookup(ctx, table, service, spec.name,
                                          &st.consulted);
          if (hit) {
            value = std::move(hit->value);
            st.resolved_from = std::move(hit->label);
          }
        }
      }
    }
    if (value) {
      state.slot_values[spec.name] = {*value};
      st.after = state.slot_values[spec.name];
    } else {
      st.after = st.before;
    }
    if (trace != nullptr) trace->slots.push_back(std::move(st));
  }

  ctx.record_state(turn_index, service, state);
  if (trace != nullptr) trace->state = state;
  return state;
}

std::vector<TrackedFrame> track_dialogue(const corpus::Dialogue& dialogue,
                                         const corpus::SchemaIndex& schemas,
                                         const ObservationFn& observe,
                                         const CandidateTable& table,
                                         const TrackerOptions& options,
                                         std::vector<FrameTrace>* traces) {
  TrackerContext ctx;
  std::vector<TrackedFrame> out;
  for (std::size_t t = 0; t < dialogue.turns.size(); ++t) {
    const corpus::Turn& turn = dialogue.turns[t];
    const int ti = static_cast<int>(t);
    if (turn.speaker == corpus::Speaker::kSystem) {
      ctx.observe_system_turn(ti, turn);
      continue;
    }
    for (std::size_t f = 0; f < turn.frames.size(); ++f) {
      const int fi = static_cast<int>(f);
      const FrameObservation obs = observe(ti, fi);
      FrameTrace trace;
      DialogueState state =
          apply_turn(ctx, schemas.at(turn.frames[f].service), obs, ti, table,
                     options, traces != nullptr ? &trace : nullptr);
      out.push_back({ti, fi, turn.frames[f].service, std::move(state)});
      if (traces != nullptr) traces->push_back(std::move(trace));
    }
  }
  return out;
}

}  // namespace schemadst::tracker
