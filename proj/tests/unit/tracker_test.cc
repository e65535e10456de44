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

#include <array>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "builders.h"
#include "schemadst/corpus/switches.h"
#include "schemadst/encoder/tokenizer.h"
#include "schemadst/tracker/candidates.h"
#include "schemadst/tracker/tracker.h"

namespace schemadst::tracker {
namespace {

using corpus::Dialogue;
using corpus::ServiceSchema;
using decoders::FrameDecision;
using decoders::SlotDecision;
using testing::act;
using testing::make_schema;
using testing::state;
using testing::system_turn;
using testing::switch_dialogue;
using testing::user_turn;

encoder::Tokenizer word_tokenizer() {
  return encoder::Tokenizer(encoder::Vocabulary::build(
      {"how about 7pm or 6pm at sushi zen in oakland on friday",
       "i want dinner in fresno at 8pm please table for two"},
      200));
}

// Owns the pair input a FrameObservation points into.
struct Turn {
  Turn(const encoder::Tokenizer& tok, const ServiceSchema& schema,
       std::string system, std::string user)
      : system(std::move(system)), user(std::move(user)),
        input(std::make_unique<encoder::PairInput>(
            encoder::build_pair_input(tok, this->system, this->user, 64))) {
    obs.service = schema.service_name;
    obs.decision.intent_index = 1;
    obs.decision.requested.assign(schema.slots.size(), false);
    obs.decision.slots.assign(schema.slots.size(), SlotDecision{});
    obs.input = input.get();
    obs.system_utterance = this->system;
    obs.user_utterance = this->user;
    schema_ = &schema;
  }
  SlotDecision& slot(const std::string& name) {
    return obs.decision.slots.at(schema_->slot_index(name));
  }
  // Token span of `text` inside the user utterance.
  void span(const std::string& name, const std::string& text) {
    const auto pos = static_cast<int>(user.find(text));
    const auto t = encoder::char_span_to_token_span(
        input->origins, pos, pos + static_cast<int>(text.size()), input->second);
    slot(name) = {corpus::SlotStatus::kActive, -1, t->start, t->end};
  }
  std::string system;
  std::string user;
  std::unique_ptr<encoder::PairInput> input;
  FrameObservation obs;
  const ServiceSchema* schema_;
};

ServiceSchema restaurants() {
  return make_schema("Restaurants_1", {"city", "restaurant_name", "time"},
                     {{"party_size", {"1", "2", "3"}}}, {"FindRestaurants"});
}
ServiceSchema movies() {
  return make_schema("Movies_1", {"location", "show_time"}, {}, {"FindMovies"});
}
ServiceSchema taxis() {
  return make_schema("Taxi_1", {"destination"}, {}, {"GetRide"});
}

corpus::Turn offer(const std::string& service, const std::string& slot,
                   const std::string& value) {
  return system_turn(service, "how about " + value, {act("OFFER", slot, {value})});
}

class TrackerTest : public ::testing::Test {
 protected:
  encoder::Tokenizer tok_ = word_tokenizer();
  ServiceSchema r_ = restaurants();
  CandidateTable table_;
  TrackerContext ctx_;
};

TEST_F(TrackerTest, AllInactiveKeepsPreviousValues) {
  ctx_.record_state(0, "Restaurants_1",
                    state("FindRestaurants", {{"city", "oakland"}, {"time", "7pm"}}));
  Turn t(tok_, r_, "", "table for two");
  t.obs.decision.intent_index = 0;
  t.obs.decision.requested[2] = true;
  const auto s = apply_turn(ctx_, r_, t.obs, 2, table_);
  EXPECT_EQ(s.slot_values, ctx_.states().front().state.slot_values);
  EXPECT_EQ(s.active_intent, "NONE");
  EXPECT_EQ(s.requested_slots, (std::set<std::string>{"time"}));
}

TEST_F(TrackerTest, DontCareAndActiveValues) {
  Turn t(tok_, r_, "", "i want dinner in fresno at 8pm please");
  t.span("city", "fresno");
  t.slot("party_size") = {corpus::SlotStatus::kActive, 2, -1, -1};
  t.slot("restaurant_name").status = corpus::SlotStatus::kDontCare;
  FrameTrace trace;
  const auto s = apply_turn(ctx_, r_, t.obs, 0, table_, {}, &trace);
  EXPECT_EQ(s.slot_values.at("city"), std::vector<std::string>{"fresno"});
  EXPECT_EQ(s.slot_values.at("party_size"), std::vector<std::string>{"2"});
  EXPECT_EQ(s.slot_values.at("restaurant_name"), std::vector<std::string>{"dontcare"});
  EXPECT_EQ(s.slot_values.count("time"), 0u);
  EXPECT_EQ(trace.slots.size(), 3u);
  EXPECT_EQ(ctx_.previous_state("Restaurants_1"), s);
}

TEST_F(TrackerTest, InServiceCarryOverTakesMostRecentOffer) {
  ctx_.observe_system_turn(1, offer("Restaurants_1", "time", "6pm"));
  ctx_.observe_system_turn(3, offer("Restaurants_1", "time", "7pm"));
  ctx_.observe_system_turn(5, system_turn("Restaurants_1", "anything else?", {act("REQ_MORE")}));
  EXPECT_EQ(in_service_carry_over(ctx_, "Restaurants_1", "time"), "7pm");
  EXPECT_EQ(in_service_carry_over(ctx_, "Restaurants_1", "city"), std::nullopt);
  EXPECT_EQ(in_service_carry_over(ctx_, "Movies_1", "time"), std::nullopt);

  Turn t(tok_, r_, "anything else?", "yes that works");
  t.slot("time").status = corpus::SlotStatus::kCarryOver;
  t.slot("city").status = corpus::SlotStatus::kCarryOver;
  FrameTrace trace;
  const auto s = apply_turn(ctx_, r_, t.obs, 6, table_, {}, &trace);
  EXPECT_EQ(s.slot_values.at("time"), std::vector<std::string>{"7pm"});
  EXPECT_EQ(s.slot_values.count("city"), 0u);  // nothing offered: no update
  ASSERT_EQ(trace.slots.size(), 2u);
  EXPECT_EQ(trace.slots[0].trigger, Trigger::kCarryOverStatus);
}

TEST_F(TrackerTest, DontCareOffersAreNotCarried) {
  ctx_.observe_system_turn(1, offer("Restaurants_1", "time", "7pm"));
  ctx_.observe_system_turn(3, offer("Restaurants_1", "time", "dontcare"));
  EXPECT_EQ(in_service_carry_over(ctx_, "Restaurants_1", "time"), "7pm");
}

TEST_F(TrackerTest, SpanOutsideUserUtteranceTriggersCarryOver) {
  ctx_.observe_system_turn(1, offer("Restaurants_1", "restaurant_name", "sushi zen"));
  Turn t(tok_, r_, "how about sushi zen", "yes please");
  // Span on the system side of the pair.
  t.slot("restaurant_name") = {corpus::SlotStatus::kActive, -1, 3, 4};
  // [CLS] sentinel while active.
  t.slot("city") = {corpus::SlotStatus::kActive, -1, 0, 0};
  FrameTrace trace;
  const auto s = apply_turn(ctx_, r_, t.obs, 2, table_, {}, &trace);
  EXPECT_EQ(s.slot_values.at("restaurant_name"), std::vector<std::string>{"sushi zen"});
  EXPECT_EQ(s.slot_values.count("city"), 0u);
  for (const auto& st : trace.slots) EXPECT_EQ(st.trigger, Trigger::kSpanOutsideUser);
}

TEST_F(TrackerTest, CategoricalSentinelTriggersCarryOver) {
  ctx_.observe_system_turn(1, offer("Restaurants_1", "party_size", "3"));
  Turn t(tok_, r_, "how about 3", "sure");
  t.slot("party_size") = {corpus::SlotStatus::kActive, 0, -1, -1};
  FrameTrace trace;
  const auto s = apply_turn(ctx_, r_, t.obs, 2, table_, {}, &trace);
  EXPECT_EQ(s.slot_values.at("party_size"), std::vector<std::string>{"3"});
  EXPECT_EQ(trace.slots[0].trigger, Trigger::kCarryOverValue);
  EXPECT_EQ(trace.slots[0].resolved_from, "in-service system action");
}

TEST_F(TrackerTest, CrossServiceOnSwitchOnly) {
  const ServiceSchema m = movies();
  table_.add({"Movies_1", "location"}, {"Restaurants_1", "city", 0.8});
  ctx_.record_state(0, "Restaurants_1", state("FindRestaurants", {{"city", "fresno"}}));
  EXPECT_EQ(cross_service_carry_over(ctx_, table_, m),
            (std::map<std::string, std::string>{{"location", "fresno"}}));
  EXPECT_TRUE(cross_service_carry_over(ctx_, CandidateTable(), m).empty());

  Turn t(tok_, m, "", "find a movie there");
  t.slot("location").status = corpus::SlotStatus::kCarryOver;
  TrackerOptions off;
  off.cross_service_carry_over = false;
  TrackerContext copy = ctx_;
  EXPECT_EQ(apply_turn(copy, m, t.obs, 2, table_, off).slot_values.count("location"), 0u);
  const auto s = apply_turn(ctx_, m, t.obs, 2, table_);
  EXPECT_EQ(s.slot_values.at("location"), std::vector<std::string>{"fresno"});
  // Same service again: no switch, so the candidate table is not consulted.
  Turn again(tok_, m, "", "and later");
  again.slot("show_time").status = corpus::SlotStatus::kCarryOver;
  table_.add({"Movies_1", "show_time"}, {"Restaurants_1", "time", 0.9});
  ctx_.record_state(3, "Movies_1", s);
  EXPECT_EQ(apply_turn(ctx_, m, again.obs, 4, table_).slot_values.count("show_time"), 0u);
}

TEST_F(TrackerTest, CrossServicePrefersMostRecentService) {
  const ServiceSchema x = taxis();
  table_.add({"Taxi_1", "destination"}, {"Restaurants_1", "city", 0.5});
  table_.add({"Taxi_1", "destination"}, {"Movies_1", "location", 0.3});
  ctx_.record_state(0, "Restaurants_1", state("FindRestaurants", {{"city", "fresno"}}));
  ctx_.record_state(2, "Movies_1", state("FindMovies", {{"location", "oakland"}}));
  EXPECT_EQ(cross_service_carry_over(ctx_, table_, x).at("destination"), "oakland");
  ctx_.record_state(4, "Restaurants_1", state("FindRestaurants", {{"city", "san jose"}}));
  EXPECT_EQ(cross_service_carry_over(ctx_, table_, x).at("destination"), "san jose");
}

TEST_F(TrackerTest, InServiceOptionOff) {
  ctx_.observe_system_turn(1, offer("Restaurants_1", "time", "7pm"));
  Turn t(tok_, r_, "how about 7pm", "ok");
  t.slot("time").status = corpus::SlotStatus::kCarryOver;
  TrackerOptions off;
  off.in_service_carry_over = false;
  EXPECT_EQ(apply_turn(ctx_, r_, t.obs, 2, table_, off).slot_values.count("time"), 0u);
}

TEST_F(TrackerTest, InactiveSlotsNeverChangeAndUpdatesAreDeterministic) {
  std::mt19937_64 rng(17);
  const std::vector<std::string> offers = {"6pm", "7pm", "8pm"};
  TrackerContext a, b;
  DialogueState prev;
  for (int turn = 0; turn < 40; turn += 2) {
    const auto o = offer("Restaurants_1", "time", offers[rng() % 3]);
    a.observe_system_turn(turn, o);
    b.observe_system_turn(turn, o);
    Turn t(tok_, r_, o.utterance, "i want dinner in fresno at 8pm please");
    for (auto& d : t.obs.decision.slots) {
      d.status = static_cast<corpus::SlotStatus>(rng() % 4);
      d.value_index = static_cast<int>(rng() % 4);
      d.span_start = static_cast<int>(rng() % t.input->size());
      d.span_end = d.span_start + static_cast<int>(rng() % 3);
    }
    const auto sa = apply_turn(a, r_, t.obs, turn + 1, table_);
    const auto sb = apply_turn(b, r_, t.obs, turn + 1, table_);
    EXPECT_EQ(sa, sb);
    for (std::size_t i = 0; i < r_.slots.size(); ++i) {
      if (t.obs.decision.slots[i].status != corpus::SlotStatus::kInactive) continue;
      const auto& name = r_.slots[i].name;
      EXPECT_EQ(sa.slot_values.count(name), prev.slot_values.count(name));
      if (prev.slot_values.count(name))
        EXPECT_EQ(sa.slot_values.at(name), prev.slot_values.at(name));
    }
    prev = sa;
  }
}

TEST_F(TrackerTest, EmptyDialogueTracksNothing) {
  Dialogue d;
  d.dialogue_id = "empty";
  const auto out = track_dialogue(d, corpus::SchemaIndex({r_}),
                                  [](int, int) -> FrameObservation { throw Error("unused"); },
                                  table_);
  EXPECT_TRUE(out.empty());
}

TEST(CandidateTable, HandCountedLikelihoods) {
  const std::vector<Dialogue> corpus = {
      switch_dialogue("d1", "A", "B", "monday", "monday", "fresno", "fresno"),
      switch_dialogue("d2", "A", "B", "tuesday", "tuesday", "oakland", "berkeley"),
      switch_dialogue("d3", "A", "B", "friday", "sunday", "napa", "davis"),
  };
  for (const auto& d : corpus) ASSERT_EQ(corpus::detect_switches(d).size(), 1u);
  const CandidateTable t = build_candidate_table(corpus, 0.1);
  ASSERT_EQ(t.candidates("B", "date").size(), 1u);
  EXPECT_EQ(t.candidates("B", "date")[0], (Candidate{"A", "date", 2.0 / 3.0}));
  EXPECT_EQ(t.candidates("B", "where")[0], (Candidate{"A", "city", 1.0 / 3.0}));
  EXPECT_TRUE(t.candidates("B", "city").empty());
  // Pooled counts make the relation symmetric.
  EXPECT_EQ(t.candidates("A", "date")[0], (Candidate{"B", "date", 2.0 / 3.0}));
  EXPECT_EQ(t.candidates("A", "city")[0], (Candidate{"B", "where", 1.0 / 3.0}));
  EXPECT_EQ(build_candidate_table(corpus, 0.1), t);
}

TEST(CandidateTable, ReversedSwitchesGiveTheSameTable) {
  std::vector<Dialogue> forward, backward, mixed;
  const std::vector<std::array<std::string, 4>> rows = {
      {"mon", "mon", "x", "x"}, {"tue", "wed", "y", "y"}, {"thu", "thu", "z", "q"}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    forward.push_back(switch_dialogue("f" + std::to_string(i), "A", "B", r[0], r[1], r[2], r[3]));
    backward.push_back(switch_dialogue("b" + std::to_string(i), "B", "A", r[0], r[1], r[2], r[3]));
    mixed.push_back(i % 2 ? forward.back() : backward.back());
  }
  EXPECT_EQ(build_candidate_table(forward).entries(), build_candidate_table(backward).entries());
  EXPECT_EQ(build_candidate_table(forward).entries(), build_candidate_table(mixed).entries());
}

TEST(CandidateTable, ThresholdDropsRarePairs) {
  std::vector<Dialogue> corpus;
  for (int i = 0; i < 20; ++i) {
    const std::string day = "day" + std::to_string(i);
    corpus.push_back(switch_dialogue("d" + std::to_string(i), "A", "B", day,
                                     i == 0 ? day : "other", "c", "w"));
  }
  EXPECT_TRUE(build_candidate_table(corpus, 0.1).candidates("B", "date").empty());
  const auto loose = build_candidate_table(corpus, 0.04);
  ASSERT_EQ(loose.candidates("B", "date").size(), 1u);
  EXPECT_DOUBLE_EQ(loose.candidates("B", "date")[0].likelihood, 0.05);
}

TEST(CandidateTable, NoSwitchesNoEntriesAndDontCareIgnored) {
  auto d = testing::toy_dialogue();
  d.turns.resize(4);
  d.services = {"Restaurants_1"};
  EXPECT_TRUE(build_candidate_table({d}).empty());
  const auto dc = switch_dialogue("dc", "A", "B", "dontcare", "dontcare", "x", "y");
  EXPECT_TRUE(build_candidate_table({dc}).empty());
}

TEST(CandidateTable, TsvRoundTripSortedWithComments) {
  CandidateTable t;
  t.add({"Hotels_1", "city"}, {"Restaurants_1", "city", 0.75});
  t.add({"Hotels_1", "city"}, {"Flights_1", "destination", 0.5});
  t.add({"Buses_1", "to"}, {"Hotels_1", "city", 0.25});
  t.add({"Buses_1", "from"}, {"Hotels_1", "city", 0.05});
  EXPECT_EQ(t.size(), 3u);
  const std::string tsv = t.to_tsv();
  EXPECT_EQ(tsv.substr(0, tsv.find('\n')), "Buses_1\tto\tHotels_1\tcity\t0.25");
  EXPECT_EQ(CandidateTable::from_tsv("# header line\n" + tsv, "mem"), t);
  EXPECT_EQ(t.candidates("Hotels_1", "city")[0].service, "Restaurants_1");
  EXPECT_THROW(CandidateTable::from_tsv("a\tb\tc\n", "bad.tsv"), ParseError);
}

}  // namespace
}  // namespace schemadst::tracker
