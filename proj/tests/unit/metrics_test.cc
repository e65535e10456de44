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

#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "builders.h"
#include "schemadst/metrics/metrics.h"

namespace schemadst::metrics {
namespace {

using testing::state;

FrameEval frame(const std::string& id, int turn, const std::string& service,
                DialogueState gold, DialogueState pred, bool single = true) {
  return {id, turn, service, single, std::move(gold), std::move(pred)};
}

corpus::SchemaIndex schemas() { return corpus::SchemaIndex(testing::toy_schemas()); }

TEST(IntentAccuracy, ExactMatchIncludingNone) {
  std::vector<FrameEval> f = {
      frame("d", 0, "Hotels_1", state("SearchHotel", {}), state("SearchHotel", {})),
      frame("d", 2, "Hotels_1", state("NONE", {}), state("NONE", {}))};
  EXPECT_DOUBLE_EQ(active_intent_accuracy(f).value, 1.0);
  f[1].pred.active_intent = "ReserveHotel";
  const auto m = active_intent_accuracy(f);
  EXPECT_DOUBLE_EQ(m.value, 0.5);
  EXPECT_EQ(m.count, 2);
}

TEST(RequestedF1, HandComputedTwoThirds) {
  const std::vector<FrameEval> f = {frame("d", 0, "Hotels_1",
                                          state("SearchHotel", {}, {"city", "hotel_name"}),
                                          state("SearchHotel", {}, {"city"}))};
  EXPECT_NEAR(requested_slot_f1(f).value, 2.0 / 3.0, 1e-12);
}

TEST(RequestedF1, BothEmptyFramesAreSkipped) {
  std::vector<FrameEval> f = {
      frame("d", 0, "Hotels_1", state("SearchHotel", {}, {"city", "hotel_name"}),
            state("SearchHotel", {}, {"city"})),
      frame("d", 2, "Hotels_1", state("SearchHotel", {}), state("SearchHotel", {})),
      frame("d", 4, "Hotels_1", state("SearchHotel", {}, {"city"}),
            state("SearchHotel", {}, {"city"}))};
  const auto m = requested_slot_f1(f);
  EXPECT_EQ(m.count, 2);
  EXPECT_NEAR(m.value, (2.0 / 3.0 + 1.0) / 2.0, 1e-12);
  f.erase(f.begin());
  EXPECT_DOUBLE_EQ(requested_slot_f1(f).value, 1.0);
  // Predicting something where gold is empty scores 0 for that frame.
  f[0].pred.requested_slots = {"city"};
  EXPECT_NEAR(requested_slot_f1(f).value, 0.5, 1e-12);
}

TEST(ValuesMatch, Normalisation) {
  EXPECT_TRUE(values_match({"dontcare"}, {"don't care"}, true));
  EXPECT_TRUE(values_match({"New  York"}, {"new york"}, false));
  EXPECT_FALSE(values_match({"Cheap"}, {"cheap"}, true));
  EXPECT_TRUE(values_match({"7pm", "19:00"}, {"19:00"}, false));
  EXPECT_FALSE(values_match({"7pm"}, {}, false));
}

TEST(AverageGoalAccuracy, CountsGoldSlotValues) {
  const std::vector<FrameEval> f = {frame(
      "d", 0, "Restaurants_1",
      state("FindRestaurants", {{"city", "Oakland"}, {"price_range", "cheap"}, {"date", "dontcare"}}),
      state("FindRestaurants", {{"city", "oakland"}, {"price_range", "moderate"},
                                {"date", "don't care"}, {"restaurant_name", "extra"}}))};
  const auto m = average_goal_accuracy(f, schemas());
  EXPECT_EQ(m.count, 3);
  EXPECT_NEAR(m.value, 2.0 / 3.0, 1e-12);
  const std::vector<FrameEval> empty = {
      frame("d", 0, "Hotels_1", state("SearchHotel", {}), state("SearchHotel", {{"city", "x"}}))};
  EXPECT_DOUBLE_EQ(average_goal_accuracy(empty, schemas()).value, 1.0);
  EXPECT_EQ(average_goal_accuracy(empty, schemas()).count, 0);
}

TEST(JointGoalAccuracy, OneWrongSlotFailsTheFrame) {
  const std::map<std::string, std::string> gold = {
      {"city", "Oakland"}, {"restaurant_name", "Zen"}, {"date", "today"},
      {"party_size", "2"}, {"price_range", "cheap"}};
  auto wrong = gold;
  wrong["party_size"] = "3";
  std::vector<FrameEval> f = {
      frame("d", 0, "Restaurants_1", state("FindRestaurants", gold), state("FindRestaurants", wrong)),
      frame("d", 2, "Restaurants_1", state("FindRestaurants", gold), state("FindRestaurants", gold))};
  EXPECT_DOUBLE_EQ(joint_goal_accuracy(f, schemas()).value, 0.5);
  f[1].pred.slot_values["extra"] = {"x"};
  EXPECT_DOUBLE_EQ(joint_goal_accuracy(f, schemas()).value, 0.0);
}

TEST(JointGoalAccuracy, JointCorrectImpliesEverySlotCorrect) {
  const auto s = schemas();
  std::mt19937_64 rng(3);
  const std::vector<std::string> slots = {"city", "restaurant_name", "date", "party_size"};
  const std::vector<std::string> values = {"1", "2", "dontcare"};
  for (int trial = 0; trial < 300; ++trial) {
    DialogueState g, p;
    for (const auto& slot : slots) {
      if (rng() % 2) g.slot_values[slot] = {values[rng() % 3]};
      if (rng() % 2) p.slot_values[slot] = {values[rng() % 3]};
    }
    const std::vector<FrameEval> one = {frame("d", 0, "Restaurants_1", g, p)};
    if (joint_goal_accuracy(one, s).value == 1.0) {
      EXPECT_DOUBLE_EQ(average_goal_accuracy(one, s).value, 1.0);
    } else if (!g.slot_values.empty() &&
               average_goal_accuracy(one, s).value == 1.0) {
      // Every gold value matched, so the failure is an extra predicted slot.
      EXPECT_GT(p.slot_values.size(), g.slot_values.size());
    }
  }
}

TEST(SeenFilter, FixedModeStopsAfterUnseenService) {
  const std::vector<FrameEval> f = {
      frame("d", 0, "A", {}, {}), frame("d", 2, "B", {}, {}), frame("d", 4, "A", {}, {}),
      frame("e", 0, "A", {}, {})};
  const std::set<std::string> train = {"A"};
  EXPECT_EQ(seen_service_filter(f, train, false), (std::vector<bool>{true, false, true, true}));
  EXPECT_EQ(seen_service_filter(f, train, true), (std::vector<bool>{true, false, false, true}));
  const std::set<std::string> both = {"A", "B"};
  EXPECT_EQ(seen_service_filter(f, both, true), seen_service_filter(f, both, false));
  const std::vector<FrameEval> first_unseen = {frame("d", 0, "B", {}, {}), frame("d", 2, "A", {}, {})};
  EXPECT_EQ(seen_service_filter(first_unseen, train, true), (std::vector<bool>{false, false}));
}

TEST(ObservedServices, ComeFromFramesNotMetadata) {
  auto d = testing::toy_dialogue();
  d.services.push_back("Flights_1");
  EXPECT_EQ(observed_services({d}), (std::set<std::string>{"Restaurants_1", "Hotels_1"}));
}

TEST(Evaluate, GoldAgainstGoldIsPerfectOnEverySlice) {
  const auto d = testing::toy_dialogue();
  std::vector<tracker::TrackedFrame> tracked;
  int user = 0;
  for (std::size_t t = 0; t < d.turns.size(); ++t) {
    if (d.turns[t].speaker != corpus::Speaker::kUser) continue;
    tracked.push_back({static_cast<int>(t), 0, d.turns[t].frames[0].service,
                       *d.turns[t].frames[0].state});
    ++user;
  }
  const auto frames = pair_frames({d}, {tracked});
  ASSERT_EQ(frames.size(), 4u);
  EXPECT_FALSE(frames[0].single_domain);
  const std::set<std::string> train = {"Restaurants_1"};
  const auto report = evaluate(frames, schemas(), &train);
  for (const auto& slice : report.slices) {
    if (slice.frames == 0) continue;
    EXPECT_DOUBLE_EQ(slice.joint_goal_accuracy.value, 1.0) << slice.name;
    EXPECT_DOUBLE_EQ(slice.average_goal_accuracy.value, 1.0) << slice.name;
    EXPECT_DOUBLE_EQ(slice.active_intent_accuracy.value, 1.0) << slice.name;
    EXPECT_DOUBLE_EQ(slice.requested_slot_f1.value, 1.0) << slice.name;
  }
  EXPECT_EQ(report.find("all")->frames, 4);
  EXPECT_EQ(report.find("multi_domain")->frames, 4);
  EXPECT_EQ(report.find("single_domain")->frames, 0);
  EXPECT_EQ(report.find("seen_unfixed")->frames, 2);
  EXPECT_EQ(report.find("seen_fixed")->frames, 2);
  EXPECT_EQ(report.find("unseen")->frames, 2);
  EXPECT_NE(report.to_text().find("all.joint_goal_accuracy="), std::string::npos);
  EXPECT_NE(report.to_json().find("\"multi_domain\""), std::string::npos);
}

TEST(Evaluate, SliceSelectionAndMismatchErrors) {
  const auto d = testing::toy_dialogue();
  const auto report = evaluate({}, schemas(), nullptr, {false, false});
  ASSERT_EQ(report.slices.size(), 1u);
  EXPECT_EQ(report.slices[0].name, "all");
  EXPECT_THROW(pair_frames({d}, {{}}), Error);
  EXPECT_THROW(pair_frames({d}, {}), Error);
}

}  // namespace
}  // namespace schemadst::metrics
