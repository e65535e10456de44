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
#include "schemadst/pipeline/synth.h"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>

#include "schemadst/common/error.h"
#include "schemadst/common/hash.h"
#include "schemadst/common/random.h"

namespace schemadst::pipeline {

using corpus::DialogueState;
using corpus::ServiceSchema;
using corpus::SystemAction;

namespace {

const char kRestaurants[] = "Restaurants_1";
const char kHotels[] = "Hotels_1";

const std::vector<std::string> kCities = {
    "Fresno",    "Oakland",    "Berkeley",  "San Jose",  "Sacramento",
    "Palo Alto", "Santa Cruz", "Napa",      "Sunnyvale", "Livermore",
    "San Mateo", "Pleasanton", "Monterey",  "Petaluma",  "Visalia"};
const std::vector<std::string> kRestaurantNames = {
    "Sushi Zen",      "Taj Palace",       "Luigi's Trattoria", "Golden Dragon",
    "El Farolito",    "Orchid Garden",    "Blue Plate",        "Casa Mia",
    "Saffron House",  "Noodle Bar",       "The Green Fork",    "Pasta Pomodoro",
    "Little Szechuan", "Curry Leaf",      "Mamma Rosa",        "Kabuki Grill"};
const std::vector<std::string> kHotelNames = {
    "Hilton Garden Inn",  "The Fairmont",   "Hotel Nikko",
    "Marriott Marquis",   "Best Western Plus", "Hyatt Place",
    "Holiday Inn Express", "Hotel Zephyr",  "The Westin",
    "Courtyard Inn",      "Hotel Valencia", "Sheraton Grand"};
const std::vector<std::string> kTimes = {"11am", "noon",   "1pm",    "5pm",
                                         "6pm",  "7pm",    "8pm",    "9pm",
                                         "7:45pm", "8:15pm", "12:30pm"};
const std::vector<std::string> kDates = {
    "tomorrow",    "this Friday", "next Monday", "next Tuesday",
    "March 3rd",   "April 12th",  "May 21st",    "this Sunday",
    "next Thursday", "June 9th"};
const std::vector<std::string> kAddresses = {
    "221 Elm Street",     "48 Oak Avenue",      "730 Pine Road",
    "1550 Market Street", "89 Harbor Drive",    "312 Cedar Lane",
    "77 Lincoln Way",     "905 Mission Street", "260 Bay Street",
    "1420 Sunset Boulevard"};
const std::vector<std::string> kCuisines = {"italian", "chinese", "mexican",
                                            "indian",  "thai",    "japanese"};
const std::vector<std::string> kPartySizes = {"1", "2", "3", "4", "5", "6"};
const std::vector<std::string> kPriceRanges = {"cheap", "moderate",
                                               "expensive"};
const std::vector<std::string> kRooms = {"1", "2", "3"};
const std::vector<std::string> kStars = {"1", "2", "3", "4", "5"};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  bool coin(double p) { return uniform() < p; }
  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[uniform_below(engine_, items.size())];
  }
  std::string pick_other(const std::vector<std::string>& items,
                         const std::string& avoid) {
    for (;;) {
      const std::string& v = pick(items);
      if (v != avoid) return v;
    }
  }

 private:
  std::mt19937_64 engine_;
};

using Values = std::map<std::string, std::string>;

struct Filled {
  std::string text;
  std::vector<corpus::SlotSpan> spans;
};

// Replaces {slot} placeholders with values and records their spans.
Filled fill(std::string_view tmpl, const Values& values) {
  Filled out;
  for (std::size_t i = 0; i < tmpl.size();) {
    if (tmpl[i] != '{') {
      out.text += tmpl[i++];
      continue;
    }
    const std::size_t close = tmpl.find('}', i);
    const std::string slot(tmpl.substr(i + 1, close - i - 1));
    const std::string& value = values.at(slot);
    const int start = static_cast<int>(out.text.size());
    out.text += value;
    out.spans.push_back(
        {slot, start, static_cast<int>(out.text.size())});
    i = close + 1;
  }
  return out;
}

SystemAction act(std::string name, std::string slot = "",
                 std::string value = "") {
  SystemAction a;
  a.act = std::move(name);
  if (!slot.empty()) a.slot = std::move(slot);
  if (!value.empty()) a.values.push_back(std::move(value));
  return a;
}

class Builder {
 public:
  Builder(std::string id, const corpus::SchemaIndex& schemas)
      : schemas_(schemas) {
    dialogue_.dialogue_id = std::move(id);
  }

  void system(const std::string& service, std::string_view tmpl,
              const Values& values, std::vector<SystemAction> actions) {
    use(service);
    corpus::Turn t;
    t.speaker = corpus::Speaker::kSystem;
    t.utterance = fill(tmpl, values).text;
    corpus::Frame f;
    f.service = service;
    f.actions = std::move(actions);
    t.frames.push_back(std::move(f));
    dialogue_.turns.push_back(std::move(t));
  }

  // Mentioned values are written into the state; `update` applies the rest
  // (intent, carried values, requests).
  void user(const std::string& service, std::string_view tmpl,
            const Values& mentioned,
            const std::function<void(DialogueState&)>& update = {}) {
    use(service);
    const ServiceSchema& schema = schemas_.at(service);
    DialogueState& state = states_[service];
    state.requested_slots.clear();
    corpus::Turn t;
    t.speaker = corpus::Speaker::kUser;
    Filled filled = fill(tmpl, mentioned);
    t.utterance = std::move(filled.text);
    corpus::Frame f;
    f.service = service;
    for (const corpus::SlotSpan& s : filled.spans) {
      const std::string& value = mentioned.at(s.slot);
      state.slot_values[s.slot] = {value};
      f.actions.push_back(act("INFORM", s.slot, value));
      if (!schema.find_slot(s.slot)->is_categorical) f.slot_spans.push_back(s);
    }
    if (update) update(state);
    for (const std::string& r : state.requested_slots) {
      f.actions.push_back(act("REQUEST", r));
    }
    f.state = state;
    t.frames.push_back(std::move(f));
    dialogue_.turns.push_back(std::move(t));
  }

  const DialogueState& state(const std::string& service) {
    return states_[service];
  }
  std::optional<std::string> value(const std::string& service,
                                   const std::string& slot) {
    const auto& sv = states_[service].slot_values;
    auto it = sv.find(slot);
    if (it == sv.end() || corpus::is_dont_care(it->second.front())) {
      return std::nullopt;
    }
    return it->second.front();
  }

  corpus::Dialogue finish() { return std::move(dialogue_); }

 private:
  void use(const std::string& service) {
    auto& s = dialogue_.services;
    if (std::find(s.begin(), s.end(), service) == s.end()) s.push_back(service);
  }

  const corpus::SchemaIndex& schemas_;
  corpus::Dialogue dialogue_;
  std::map<std::string, DialogueState> states_;
};

void set(DialogueState& s, const std::string& slot, const std::string& v) {
  s.slot_values[slot] = {v};
}

const std::vector<std::string> kGreetings = {
    "Hi, could you help me with something?", "Hello there.",
    "Hi, I need some help.", "Good evening, can you help me out?"};
const std::vector<std::string> kGreetReplies = {
    "Sure, what can I do for you?", "Of course. What are you looking for?",
    "Hello! How can I help?"};
const std::vector<std::string> kAccepts = {
    "That sounds great.", "I like that one.", "Perfect, that works for me.",
    "Yes, that one is good.", "Great, let's go with that."};
const std::vector<std::string> kAffirm = {"Yes.", "Yes please.",
                                          "Yes, that works.", "Sure, do it.",
                                          "Sounds good."};
const std::vector<std::string> kMore = {"Is there anything else?",
                                        "Do you have other options?",
                                        "Not that one. What else is there?",
                                        "Can you suggest something different?"};
const std::vector<std::string> kAddressAsk = {
    "What is the address?", "Where is it located?",
    "Can you tell me the address?"};
const std::vector<std::string> kDontCares = {
    "I don't care.", "It doesn't matter to me.", "Anything is fine."};
const std::vector<std::string> kThanks = {
    "Thanks, that's all I need.", "Thank you so much, bye.",
    "That's everything, thanks."};

struct Shared {
  bool restaurant_reserved = false;
};

// Offers names until the user settles on one; returns nothing, writes the
// chosen name into the state of `service`.
void offer_loop(Builder& b, Rng& r, const std::string& service,
                const std::string& slot, const std::vector<std::string>& names,
                const std::string& noun, const std::string& city) {
  std::string offered = r.pick(names);
  const Values v{{slot, offered}, {"city", city}};
  const std::string tmpl = r.pick(std::vector<std::string>{
      "I found a nice " + noun + " called {" + slot + "} in {city}.",
      "How about {" + slot + "}? It is in {city}.",
      "{" + slot + "} in {city} is a popular choice."});
  b.system(service, tmpl, v,
           {act("OFFER", slot, offered), act("OFFER", "city", city)});

  const double roll = r.uniform();
  if (roll < 0.25) {
    b.user(service, r.pick(kMore), {});
    offered = r.pick_other(names, offered);
    b.system(service,
             r.pick(std::vector<std::string>{
                 "What about {" + slot + "}?",
                 "There is also {" + slot + "} in {city}.",
                 "Another option is {" + slot + "}."}),
             {{slot, offered}, {"city", city}}, {act("OFFER", slot, offered)});
  } else if (roll < 0.42) {
    b.user(service, r.pick(kAddressAsk), {},
           [](DialogueState& s) { s.requested_slots = {"street_address"}; });
    const std::string address = r.pick(kAddresses);
    b.system(service,
             r.pick(std::vector<std::string>{"It is located at {street_address}.",
                                             "The address is {street_address}."}),
             {{"street_address", address}},
             {act("INFORM", "street_address", address)});
  } else if (roll < 0.58) {
    const std::string chosen = r.pick_other(names, offered);
    b.user(service,
           r.pick(std::vector<std::string>{
               "Actually, I would prefer {" + slot + "}.",
               "I'd rather go to {" + slot + "}.",
               "Hmm, what about {" + slot + "} instead?"}),
           {{slot, chosen}});
    return;
  }
  b.user(service, r.pick(kAccepts), {},
         [&](DialogueState& s) { set(s, slot, offered); });
}

void follow_up(Builder& b, Rng& r, const std::string& service,
               const std::string& intent, const std::string& question) {
  if (r.coin(0.6)) {
    b.system(service, question, {}, {act("OFFER_INTENT", "intent", intent)});
  } else {
    b.system(service,
             r.pick(std::vector<std::string>{"Can I help with anything else?",
                                             "Is there anything else?"}),
             {}, {act("REQ_MORE")});
  }
}

void closing(Builder& b, Rng& r, const std::string& service) {
  b.user(service, r.pick(kThanks), {});
  b.system(service,
           r.pick(std::vector<std::string>{"Have a great day.",
                                           "You're welcome, goodbye.",
                                           "Enjoy your trip!"}),
           {}, {act("GOODBYE")});
}

void restaurant_flow(Builder& b, Rng& r, Shared& shared, bool switched) {
  const std::string S = kRestaurants;
  const auto intent = [](const char* name) {
    return [name](DialogueState& s) { s.active_intent = name; };
  };
  if (!switched && r.coin(0.3)) {
    b.user(S, r.pick(kGreetings), {});
    b.system(S, r.pick(kGreetReplies), {}, {act("REQ_MORE")});
  }

  const auto hotel_city = b.value(kHotels, "city");
  const auto hotel_date = b.value(kHotels, "check_in_date");
  bool carried_date = false;
  if (switched && hotel_city && r.coin(0.75)) {
    carried_date = hotel_date && r.coin(0.5);
    Values m;
    std::string tmpl;
    if (carried_date) {
      tmpl = r.pick(std::vector<std::string>{
          "I also want to eat out near there on the same day.",
          "Can you also find me a restaurant there for that day?"});
    } else if (r.coin(0.5)) {
      m["cuisine"] = r.pick(kCuisines);
      tmpl = r.pick(std::vector<std::string>{
          "I'd also like some {cuisine} food nearby.",
          "Can you also find a {cuisine} restaurant around there?"});
    } else {
      tmpl = r.pick(std::vector<std::string>{
          "I also need a place to eat near there.",
          "Can you also find me a restaurant in the same area?"});
    }
    b.user(S, tmpl, m, [&](DialogueState& s) {
      s.active_intent = "FindRestaurants";
      set(s, "city", *hotel_city);
      if (carried_date) set(s, "date", *hotel_date);
    });
  } else {
    const double roll = r.uniform();
    Values m;
    std::vector<std::string> options;
    if (roll < 0.3) {
      m = {{"city", r.pick(kCities)}};
      options = {"I'm looking for a place to eat in {city}.",
                 "Find me a restaurant in {city}.",
                 "Can you search for restaurants in {city}?"};
    } else if (roll < 0.6) {
      m = {{"city", r.pick(kCities)}, {"cuisine", r.pick(kCuisines)}};
      options = {"I want {cuisine} food in {city}.",
                 "I'm craving {cuisine}, anything in {city}?",
                 "Find a {cuisine} restaurant in {city} please."};
    } else if (roll < 0.7) {
      m = {{"city", r.pick(kCities)}, {"price_range", r.pick(kPriceRanges)}};
      options = {"I need a {price_range} restaurant in {city}.",
                 "Show me {price_range} places to eat in {city}."};
    } else if (roll < 0.85) {
      m = {{"cuisine", r.pick(kCuisines)}};
      options = {"I'd like to find a good {cuisine} restaurant.",
                 "Where can I get some {cuisine} food?"};
    } else {
      options = {"I want to find a restaurant.",
                 "Can you help me find somewhere to eat?"};
    }
    b.user(S, r.pick(options), m, intent("FindRestaurants"));
  }

  if (!b.value(S, "city")) {
    b.system(S,
             r.pick(std::vector<std::string>{"In which city should I look?",
                                             "What city are you in?"}),
             {}, {act("REQUEST", "city")});
    b.user(S,
           r.pick(std::vector<std::string>{"{city} please.", "Look in {city}.",
                                           "I'd like something in {city}."}),
           {{"city", r.pick(kCities)}});
  }
  if (!b.state(S).slot_values.count("cuisine") && r.coin(0.35)) {
    b.system(S,
             r.pick(std::vector<std::string>{
                 "Do you have a cuisine in mind?",
                 "What kind of food would you like?"}),
             {}, {act("REQUEST", "cuisine")});
    if (r.coin(0.35)) {
      b.user(S, r.pick(kDontCares), {},
             [](DialogueState& s) { set(s, "cuisine", "dontcare"); });
    } else {
      b.user(S,
             r.pick(std::vector<std::string>{"{cuisine} would be nice.",
                                             "Some {cuisine} food please.",
                                             "I feel like {cuisine}."}),
             {{"cuisine", r.pick(kCuisines)}});
    }
  }
  if (!b.state(S).slot_values.count("price_range") && r.coin(0.25)) {
    b.system(S, "Any preferred price range?", {},
             {act("REQUEST", "price_range")});
    if (r.coin(0.4)) {
      b.user(S, r.pick(kDontCares), {},
             [](DialogueState& s) { set(s, "price_range", "dontcare"); });
    } else {
      b.user(S,
             r.pick(std::vector<std::string>{"Something {price_range}.",
                                             "{price_range} please."}),
             {{"price_range", r.pick(kPriceRanges)}});
    }
  }

  offer_loop(b, r, S, "restaurant_name", kRestaurantNames, "restaurant",
             *b.value(S, "city"));
  follow_up(b, r, S, "ReserveRestaurant", "Would you like to reserve a table?");

  if (!r.coin(0.85)) return;
  // Reservation.
  {
    Values m;
    std::vector<std::string> options;
    const bool has_date = b.value(S, "date").has_value();
    const double roll = r.uniform();
    if (roll < 0.2) {
      options = {"I'd like to make a reservation.",
                 "Can you book a table there?"};
    } else if (roll < 0.35) {
      m = {{"time", r.pick(kTimes)}};
      options = {"Please book a table at {time}.",
                 "Reserve a table for {time}."};
    } else if (roll < 0.55) {
      m = {{"party_size", r.pick(kPartySizes)}, {"time", r.pick(kTimes)}};
      options = {"Book a table for {party_size} at {time}.",
                 "I need a table for {party_size} people at {time}."};
    } else if (roll < 0.7) {
      m = {{"party_size", r.pick(kPartySizes)}};
      options = {"I want a table for {party_size} people.",
                 "Reserve a table for {party_size} please."};
    } else if (roll < 0.85 && !has_date) {
      m = {{"time", r.pick(kTimes)}, {"date", r.pick(kDates)}};
      options = {"Reserve it for {date} at {time}.",
                 "Book it for {date} at {time} please."};
    } else if (!has_date) {
      m = {{"party_size", r.pick(kPartySizes)},
           {"time", r.pick(kTimes)},
           {"date", r.pick(kDates)}};
      options = {"Make a reservation for {party_size} people on {date} at "
                 "{time}.",
                 "Book a table for {party_size} on {date} at {time}."};
    } else {
      options = {"Let's book a table there."};
    }
    b.user(S, r.pick(options), m, intent("ReserveRestaurant"));
  }
  if (!b.value(S, "time")) {
    if (r.coin(0.5)) {
      b.system(S, "What time would you like?", {}, {act("REQUEST", "time")});
      b.user(S,
             r.pick(std::vector<std::string>{"{time} works.", "At {time} please.",
                                             "Around {time}."}),
             {{"time", r.pick(kTimes)}});
    } else {
      const std::string t = r.pick(kTimes);
      b.system(S, "Is {time} okay?", {{"time", t}}, {act("OFFER", "time", t)});
      b.user(S, r.pick(kAffirm), {},
             [&](DialogueState& s) { set(s, "time", t); });
    }
  }
  if (!b.value(S, "party_size")) {
    const std::string p = r.pick(kPartySizes);
    b.system(S, "Is the table for {party_size} people?", {{"party_size", p}},
             {act("OFFER", "party_size", p)});
    if (r.coin(0.7)) {
      b.user(S, r.pick(kAffirm), {},
             [&](DialogueState& s) { set(s, "party_size", p); });
    } else {
      b.user(S, "No, for {party_size} people.",
             {{"party_size", r.pick_other(kPartySizes, p)}});
    }
  }
  if (!b.value(S, "date")) {
    const std::string d = r.pick(kDates);
    b.system(S, "Shall I book it for {date}?", {{"date", d}},
             {act("OFFER", "date", d)});
    if (r.coin(0.7)) {
      b.user(S, r.pick(kAffirm), {},
             [&](DialogueState& s) { set(s, "date", d); });
    } else {
      b.user(S,
             r.pick(std::vector<std::string>{"No, make it {date}.",
                                             "Actually {date} is better."}),
             {{"date", r.pick_other(kDates, d)}});
    }
  }
  const auto confirm = [&] {
    const Values v{{"restaurant_name", *b.value(S, "restaurant_name")},
                   {"party_size", *b.value(S, "party_size")},
                   {"time", *b.value(S, "time")},
                   {"date", *b.value(S, "date")}};
    std::vector<SystemAction> acts;
    for (const auto& [slot, value] : v) acts.push_back(act("CONFIRM", slot, value));
    b.system(S,
             "Please confirm: a table for {party_size} at {restaurant_name} on "
             "{date} at {time}.",
             v, std::move(acts));
  };
  confirm();
  if (r.coin(0.2)) {
    b.user(S,
           r.pick(std::vector<std::string>{"Actually, change it to {time}.",
                                           "Can we do {time} instead?"}),
           {{"time", r.pick_other(kTimes, *b.value(S, "time"))}});
    confirm();
  }
  b.user(S, r.pick(kAffirm), {});
  b.system(S, "Your table has been reserved.", {}, {act("NOTIFY_SUCCESS")});
  shared.restaurant_reserved = true;
}

void hotel_flow(Builder& b, Rng& r, Shared&, bool switched) {
  const std::string S = kHotels;
  if (!switched && r.coin(0.3)) {
    b.user(S, r.pick(kGreetings), {});
    b.system(S, r.pick(kGreetReplies), {}, {act("REQ_MORE")});
  }
  const auto rest_city = b.value(kRestaurants, "city");
  const auto rest_date = b.value(kRestaurants, "date");
  if (switched && rest_city && r.coin(0.75)) {
    const bool carry_date = rest_date && r.coin(0.6);
    Values m;
    std::string tmpl;
    if (carry_date) {
      tmpl = r.pick(std::vector<std::string>{
          "I also need a hotel there for that night.",
          "Can you find me a place to stay nearby on the same day?"});
    } else if (r.coin(0.4)) {
      m["star_rating"] = r.pick(kStars);
      tmpl = "I also need a {star_rating} star hotel in that area.";
    } else {
      tmpl = r.pick(std::vector<std::string>{
          "I also need a hotel in the same city.",
          "Can you also find me somewhere to stay there?"});
    }
    b.user(S, tmpl, m, [&](DialogueState& s) {
      s.active_intent = "SearchHotel";
      set(s, "city", *rest_city);
      if (carry_date) set(s, "check_in_date", *rest_date);
    });
  } else {
    const double roll = r.uniform();
    Values m;
    std::vector<std::string> options;
    if (roll < 0.4) {
      m = {{"city", r.pick(kCities)}};
      options = {"I need a hotel in {city}.", "Find me a place to stay in {city}.",
                 "Are there any hotels in {city}?"};
    } else if (roll < 0.7) {
      m = {{"city", r.pick(kCities)}, {"star_rating", r.pick(kStars)}};
      options = {"I want a {star_rating} star hotel in {city}.",
                 "Find a {star_rating} star place to stay in {city}."};
    } else if (roll < 0.85) {
      m = {{"star_rating", r.pick(kStars)}};
      options = {"I'm looking for a {star_rating} star hotel."};
    } else {
      options = {"I need to find a hotel.", "Can you help me book a hotel?"};
    }
    b.user(S, r.pick(options), m,
           [](DialogueState& s) { s.active_intent = "SearchHotel"; });
  }
  if (!b.value(S, "city")) {
    b.system(S,
             r.pick(std::vector<std::string>{"Which city will you stay in?",
                                             "Where do you need the hotel?"}),
             {}, {act("REQUEST", "city")});
    b.user(S,
           r.pick(std::vector<std::string>{"In {city}.", "{city} please.",
                                           "I'll be staying in {city}."}),
           {{"city", r.pick(kCities)}});
  }
  if (!b.state(S).slot_values.count("star_rating") && r.coin(0.3)) {
    b.system(S, "How many stars should the hotel have?", {},
             {act("REQUEST", "star_rating")});
    if (r.coin(0.4)) {
      b.user(S, r.pick(kDontCares), {},
             [](DialogueState& s) { set(s, "star_rating", "dontcare"); });
    } else {
      b.user(S,
             r.pick(std::vector<std::string>{"{star_rating} stars please.",
                                             "At least {star_rating} stars."}),
             {{"star_rating", r.pick(kStars)}});
    }
  }
  offer_loop(b, r, S, "hotel_name", kHotelNames, "hotel", *b.value(S, "city"));
  follow_up(b, r, S, "ReserveHotel", "Shall I book a room for you?");

  if (!r.coin(0.8)) return;
  {
    Values m;
    std::vector<std::string> options;
    const bool has_date = b.value(S, "check_in_date").has_value();
    const double roll = r.uniform();
    if (roll < 0.3) {
      options = {"I'd like to book a room there.", "Please reserve it for me."};
    } else if (roll < 0.55) {
      m = {{"number_of_rooms", r.pick(kRooms)}};
      options = {"Book {number_of_rooms} rooms please.",
                 "I need {number_of_rooms} rooms there."};
    } else if (!has_date && roll < 0.8) {
      m = {{"check_in_date", r.pick(kDates)}};
      options = {"Book it from {check_in_date}.",
                 "I want to check in {check_in_date}."};
    } else if (!has_date) {
      m = {{"number_of_rooms", r.pick(kRooms)},
           {"check_in_date", r.pick(kDates)}};
      options = {"Reserve {number_of_rooms} rooms from {check_in_date}."};
    } else {
      options = {"Let's book a room there."};
    }
    b.user(S, r.pick(options), m,
           [](DialogueState& s) { s.active_intent = "ReserveHotel"; });
  }
  if (!b.value(S, "check_in_date")) {
    if (r.coin(0.5)) {
      b.system(S, "When will you check in?", {},
               {act("REQUEST", "check_in_date")});
      b.user(S,
             r.pick(std::vector<std::string>{"{check_in_date}.",
                                             "I'll arrive {check_in_date}."}),
             {{"check_in_date", r.pick(kDates)}});
    } else {
      const std::string d = r.pick(kDates);
      b.system(S, "Do you want to check in {check_in_date}?",
               {{"check_in_date", d}}, {act("OFFER", "check_in_date", d)});
      b.user(S, r.pick(kAffirm), {},
             [&](DialogueState& s) { set(s, "check_in_date", d); });
    }
  }
  if (!b.value(S, "number_of_rooms")) {
    const std::string n = r.pick(kRooms);
    b.system(S, "Shall I book {number_of_rooms} rooms?",
             {{"number_of_rooms", n}}, {act("OFFER", "number_of_rooms", n)});
    if (r.coin(0.7)) {
      b.user(S, r.pick(kAffirm), {},
             [&](DialogueState& s) { set(s, "number_of_rooms", n); });
    } else {
      b.user(S, "No, I need {number_of_rooms} rooms.",
             {{"number_of_rooms", r.pick_other(kRooms, n)}});
    }
  }
  const Values v{{"hotel_name", *b.value(S, "hotel_name")},
                 {"number_of_rooms", *b.value(S, "number_of_rooms")},
                 {"check_in_date", *b.value(S, "check_in_date")}};
  std::vector<SystemAction> acts;
  for (const auto& [slot, value] : v) acts.push_back(act("CONFIRM", slot, value));
  b.system(S,
           "Please confirm: {number_of_rooms} rooms at {hotel_name} from "
           "{check_in_date}.",
           v, std::move(acts));
  b.user(S, r.pick(kAffirm), {});
  b.system(S, "Your room is booked.", {}, {act("NOTIFY_SUCCESS")});
}

}  // namespace

std::vector<ServiceSchema> synthetic_schemas() {
  auto slot = [](std::string name, std::string description,
                 std::vector<std::string> values = {}) {
    corpus::SlotSpec s;
    s.name = std::move(name);
    s.description = std::move(description);
    s.is_categorical = !values.empty();
    s.possible_values = std::move(values);
    return s;
  };
  auto intent = [](std::string name, std::string description,
                   std::vector<std::string> required) {
    corpus::IntentSpec i;
    i.name = std::move(name);
    i.description = std::move(description);
    i.required_slots = std::move(required);
    return i;
  };
  ServiceSchema restaurants;
  restaurants.service_name = kRestaurants;
  restaurants.description = "A service for finding and reserving restaurants";
  restaurants.intents = {
      intent("FindRestaurants", "Search for restaurants by location and food",
             {"city"}),
      intent("ReserveRestaurant", "Reserve a table at a restaurant",
             {"restaurant_name", "city", "time", "date", "party_size"})};
  restaurants.intents[1].is_transactional = true;
  restaurants.slots = {
      slot("city", "City where the restaurant is located"),
      slot("restaurant_name", "Name of the restaurant"),
      slot("time", "Time of the table reservation"),
      slot("date", "Date of the table reservation"),
      slot("street_address", "Street address of the restaurant"),
      slot("cuisine", "Type of food served at the restaurant", kCuisines),
      slot("party_size", "Number of people in the reservation", kPartySizes),
      slot("price_range", "Price range of the restaurant", kPriceRanges)};

  ServiceSchema hotels;
  hotels.service_name = kHotels;
  hotels.description = "A service for searching and booking hotel rooms";
  hotels.intents = {
      intent("SearchHotel", "Find a hotel in a given city", {"city"}),
      intent("ReserveHotel", "Book rooms at a hotel",
             {"hotel_name", "check_in_date", "number_of_rooms"})};
  hotels.intents[1].is_transactional = true;
  hotels.slots = {
      slot("city", "City where the hotel is located"),
      slot("hotel_name", "Name of the hotel"),
      slot("check_in_date", "Date of arrival at the hotel"),
      slot("street_address", "Street address of the hotel"),
      slot("number_of_rooms", "Number of rooms to book", kRooms),
      slot("star_rating", "Star rating of the hotel", kStars)};
  return {restaurants, hotels};
}

corpus::Corpus synthesize_corpus(const SynthConfig& config) {
  if (config.dialogues < 0) throw ConfigError("synth: negative dialogue count");
  corpus::Corpus out;
  out.schemas = synthetic_schemas();
  const corpus::SchemaIndex index(out.schemas);
  for (int i = 0; i < config.dialogues; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "synth_%05d", i);
    Rng r(Fnv1a().update(id).update_u64(config.seed).digest());
    Builder b(id, index);
    Shared shared;
    const bool multi = r.coin(config.multi_domain_fraction);
    const bool restaurant_first = r.coin(0.5);
    auto run = [&](bool restaurant, bool switched) {
      if (restaurant) {
        restaurant_flow(b, r, shared, switched);
      } else {
        hotel_flow(b, r, shared, switched);
      }
    };
    run(restaurant_first, false);
    std::string last = restaurant_first ? kRestaurants : kHotels;
    if (multi) {
      run(!restaurant_first, true);
      last = restaurant_first ? kHotels : kRestaurants;
      if (restaurant_first && shared.restaurant_reserved && r.coin(0.3)) {
        const std::string t =
            r.pick_other(kTimes, *b.value(kRestaurants, "time"));
        b.user(kRestaurants,
               "Also, please move my restaurant booking to {time}.",
               {{"time", t}}, [](DialogueState& s) {
                 s.active_intent = "ReserveRestaurant";
               });
        b.system(kRestaurants, "Okay, your table is now at {time}.",
                 {{"time", t}},
                 {act("NOTIFY_SUCCESS"), act("INFORM", "time", t)});
        last = kRestaurants;
      }
    }
    closing(b, r, last);
    out.dialogues.push_back(b.finish());
  }
  return out;
}

}  // namespace schemadst::pipeline
