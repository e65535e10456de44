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

#ifndef SCHEMADST_TESTS_SUPPORT_BUILDERS_H_
#define SCHEMADST_TESTS_SUPPORT_BUILDERS_H_

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "schemadst/corpus/types.h"

namespace schemadst::testing {

using corpus::Dialogue;
using corpus::DialogueState;
using corpus::Frame;
using corpus::ServiceSchema;
using corpus::SlotSpan;
using corpus::Speaker;
using corpus::SystemAction;
using corpus::Turn;

inline ServiceSchema make_schema(
    const std::string& name, const std::vector<std::string>& free_slots,
    const std::vector<std::pair<std::string, std::vector<std::string>>>&
        categorical,
    const std::vector<std::string>& intents) {
  ServiceSchema s;
  s.service_name = name;
  s.description = name + " service";
  for (const auto& slot : free_slots)
    s.slots.push_back({slot, slot + " of the " + name, false, {}});
  for (const auto& [slot, values] : categorical)
    s.slots.push_back({slot, slot + " of the " + name, true, values});
  for (const auto& intent : intents) {
    corpus::IntentSpec spec;
    spec.name = intent;
    spec.description = "intent " + intent;
    s.intents.push_back(spec);
  }
  return s;
}

inline SystemAction act(std::string name, std::string slot = "",
                        std::vector<std::string> values = {}) {
  SystemAction a;
  a.act = std::move(name);
  if (!slot.empty()) a.slot = std::move(slot);
  a.values = std::move(values);
  return a;
}

inline Turn system_turn(const std::string& service,
                        const std::string& utterance,
                        std::vector<SystemAction> actions = {}) {
  Turn t;
  t.speaker = Speaker::kSystem;
  t.utterance = utterance;
  Frame f;
  f.service = service;
  f.actions = std::move(actions);
  t.frames.push_back(std::move(f));
  return t;
}

inline DialogueState state(
    const std::string& intent,
    const std::map<std::string, std::string>& values,
    std::set<std::string> requested = {}) {
  DialogueState s;
  s.active_intent = intent;
  s.requested_slots = std::move(requested);
  for (const auto& [slot, value] : values) s.slot_values[slot] = {value};
  return s;
}

// Frame whose spans are located by searching each non-categorical value in
// the utterance.
inline Frame user_frame(const ServiceSchema& schema,
                        const std::string& utterance, DialogueState st,
                        std::vector<SystemAction> actions = {}) {
  Frame f;
  f.service = schema.service_name;
  for (const auto& [slot, values] : st.slot_values) {
    const auto* spec = schema.find_slot(slot);
    if (spec == nullptr || spec->is_categorical) continue;
    const auto pos = utterance.find(values.front());
    if (pos == std::string::npos) continue;
    f.slot_spans.push_back(
        {slot, static_cast<int>(pos),
         static_cast<int>(pos + values.front().size())});
  }
  f.state = std::move(st);
  f.actions = std::move(actions);
  return f;
}

inline Turn user_turn(const std::string& utterance, std::vector<Frame> frames) {
  Turn t;
  t.speaker = Speaker::kUser;
  t.utterance = utterance;
  t.frames = std::move(frames);
  return t;
}

inline Turn user_turn(const ServiceSchema& schema, const std::string& utterance,
                      DialogueState st) {
  return user_turn(utterance, {user_frame(schema, utterance, std::move(st))});
}

// Two small services sharing a city slot.
inline std::vector<ServiceSchema> toy_schemas() {
  return {
      make_schema("Restaurants_1", {"city", "restaurant_name", "date"},
                  {{"party_size", {"1", "2", "3", "4"}},
                   {"price_range", {"cheap", "moderate", "expensive"}}},
                  {"FindRestaurants", "ReserveRestaurant"}),
      make_schema("Hotels_1", {"city", "hotel_name", "check_in_date"},
                  {{"number_of_rooms", {"1", "2", "3"}}},
                  {"SearchHotel", "ReserveHotel"}),
  };
}

// Restaurant search followed by a hotel search in the same city, which the
// user never repeats.
inline Dialogue toy_dialogue(const std::string& id = "toy_0") {
  const auto schemas = toy_schemas();
  const auto& r = schemas[0];
  const auto& h = schemas[1];
  Dialogue d;
  d.dialogue_id = id;
  d.services = {"Restaurants_1", "Hotels_1"};
  d.turns.push_back(user_turn(
      r, "find me a cheap place to eat in Oakland",
      state("FindRestaurants", {{"city", "Oakland"}, {"price_range", "cheap"}})));
  d.turns.push_back(system_turn(
      "Restaurants_1", "How about Sushi Zen?",
      {act("OFFER", "restaurant_name", {"Sushi Zen"})}));
  d.turns.push_back(user_turn(
      r, "sounds good, for 2 people",
      state("FindRestaurants", {{"city", "Oakland"},
                                {"price_range", "cheap"},
                                {"restaurant_name", "Sushi Zen"},
                                {"party_size", "2"}})));
  d.turns.push_back(system_turn("Restaurants_1", "Anything else?",
                                {act("REQ_MORE")}));
  d.turns.push_back(user_turn(
      h, "I also need a hotel there",
      state("SearchHotel", {{"city", "Oakland"}})));
  d.turns.push_back(system_turn(
      "Hotels_1", "Hotel Azure has rooms.",
      {act("OFFER", "hotel_name", {"Hotel Azure"})}));
  d.turns.push_back(user_turn(
      h, "book 1 room, any date is fine",
      state("SearchHotel", {{"city", "Oakland"},
                            {"hotel_name", "Hotel Azure"},
                            {"number_of_rooms", "1"},
                            {"check_in_date", "dontcare"}})));
  return d;
}

// One A -> B switch per dialogue. A holds date=`a_date` and city=`a_city`;
// B holds date=`b_date` and where=`b_where`.
inline Dialogue switch_dialogue(const std::string& id, const std::string& from,
                         const std::string& to, const std::string& a_date,
                         const std::string& b_date, const std::string& a_city,
                         const std::string& b_where) {
  auto a = make_schema("A", {"date", "city"}, {}, {"IA"});
  auto b = make_schema("B", {"date", "where"}, {}, {"IB"});
  const auto& first = from == "A" ? a : b;
  const auto& second = from == "A" ? b : a;
  auto values = [&](const ServiceSchema& s) {
    return s.service_name == "A"
               ? std::map<std::string, std::string>{{"date", a_date}, {"city", a_city}}
               : std::map<std::string, std::string>{{"date", b_date}, {"where", b_where}};
  };
  Dialogue d;
  d.dialogue_id = id;
  d.services = {from, to};
  d.turns.push_back(user_turn(first, "first", state(first.intents[0].name, values(first))));
  d.turns.push_back(system_turn(from, "ok"));
  d.turns.push_back(user_turn(second, "second", state(second.intents[0].name, values(second))));
  return d;
}

}  // namespace schemadst::testing

#endif  // SCHEMADST_TESTS_SUPPORT_BUILDERS_H_
