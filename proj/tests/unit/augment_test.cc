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

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "builders.h"
#include "schemadst/augment/augment.h"
#include "schemadst/common/error.h"
#include "schemadst/corpus/gold_targets.h"
#include "schemadst/corpus/validate.h"
#include "schemadst/pipeline/synth.h"

namespace schemadst::augment {
namespace {

using corpus::Dialogue;
using testing::act;
using testing::state;
using testing::system_turn;
using testing::user_turn;

corpus::ServiceSchema schema() {
  return testing::make_schema("Restaurants_1", {"city", "time", "restaurant_name"},
                              {{"party_size", {"1", "2"}}}, {"FindRestaurants"});
}

Dialogue timed(const std::string& id, const std::string& city, const std::string& time) {
  const auto s = schema();
  Dialogue d;
  d.dialogue_id = id;
  d.services = {"Restaurants_1"};
  d.turns.push_back(user_turn(s, "find a table in " + city + " for 2",
                              state("FindRestaurants", {{"city", city}, {"party_size", "2"}})));
  d.turns.push_back(system_turn("Restaurants_1", "how about " + time + "?",
                                {act("OFFER", "time", {time})}));
  d.turns.push_back(user_turn(s, time + " works, thanks",
                              state("FindRestaurants", {{"city", city}, {"party_size", "2"},
                                                        {"time", time}})));
  return d;
}

std::vector<int> statuses(const Dialogue& d, const corpus::SchemaIndex& index) {
  std::vector<int> out;
  for (const auto& f : corpus::derive_gold_targets(d, index).frames)
    for (const auto& s : f.slots) out.push_back(static_cast<int>(s.status));
  return out;
}

TEST(Pools, DistinctNonCategoricalValues) {
  const corpus::SchemaIndex index({schema()});
  const auto pools = build_pools({timed("a", "oakland", "7pm"), timed("b", "oakland", "8pm")}, index);
  EXPECT_EQ(pools.at({"Restaurants_1", "time"}), (std::vector<std::string>{"7pm", "8pm"}));
  EXPECT_EQ(pools.at({"Restaurants_1", "city"}), (std::vector<std::string>{"oakland"}));
  EXPECT_EQ(pools.count({"Restaurants_1", "party_size"}), 0u);
  EXPECT_EQ(pools.count({"Restaurants_1", "restaurant_name"}), 0u);
}

TEST(Augment, RewritesEveryOccurrenceConsistently) {
  const corpus::SchemaIndex index({schema()});
  const auto original = timed("a", "oakland", "7pm");
  const auto pools = build_pools({original, timed("b", "oakland", "8pm")}, index);
  AugmentLog log;
  const Dialogue d = augment_dialogue(original, index, pools, 1, 1, &log);
  EXPECT_EQ(d.dialogue_id, "a_aug1");
  EXPECT_EQ(d.turns[1].utterance, "how about 8pm?");
  EXPECT_EQ(d.turns[1].frames[0].actions[0].values, std::vector<std::string>{"8pm"});
  EXPECT_EQ(d.turns[2].utterance, "8pm works, thanks");
  EXPECT_EQ(d.turns[2].frames[0].state->slot_values.at("time"), std::vector<std::string>{"8pm"});
  const auto& span = d.turns[2].frames[0].slot_spans;
  ASSERT_EQ(span.size(), 1u);
  EXPECT_EQ(d.turns[2].utterance.substr(span[0].start_char, span[0].end_char - span[0].start_char),
            "8pm");
  // The city pool has one value, so there is nothing to swap it with.
  EXPECT_EQ(d.turns[0].utterance, original.turns[0].utterance);
  EXPECT_EQ(log.replaced, 1);
  EXPECT_EQ(log.skipped.at("no_replacement"), 1);
  EXPECT_NO_THROW(corpus::validate_dialogue(d, index));
  EXPECT_EQ(statuses(d, index), statuses(original, index));
}

TEST(Augment, EmptyPoolsOnlyChangeTheId) {
  const corpus::SchemaIndex index({schema()});
  const auto original = timed("a", "oakland", "7pm");
  Dialogue d = augment_dialogue(original, index, {}, 1, 4);
  EXPECT_EQ(d.dialogue_id, "a_aug4");
  d.dialogue_id = original.dialogue_id;
  EXPECT_EQ(d, original);
}

TEST(Augment, SubstringOccurrencesAreLeftAlone) {
  const corpus::SchemaIndex index({schema()});
  auto original = timed("a", "oak", "7pm");
  original.turns[0].utterance = "find a table in oak for 2 near oakwood";
  const auto pools = build_pools({original, timed("b", "napa", "7pm")}, index);
  AugmentLog log;
  const auto d = augment_dialogue(original, index, pools, 1, 1, &log);
  EXPECT_NO_THROW(corpus::validate_dialogue(d, index));
  EXPECT_NE(d.turns[0].utterance.find("oakwood"), std::string::npos);
}

TEST(Augment, MultiDomainIsRejectedAndPassedThrough) {
  const auto schemas = testing::toy_schemas();
  const corpus::SchemaIndex index(schemas);
  const auto multi = testing::toy_dialogue();
  EXPECT_THROW(augment_dialogue(multi, index, {}, 1, 1), Error);
  const auto out = augment_corpus({multi}, index, {}, {10, 1});
  EXPECT_TRUE(out.dialogues.empty());
  ASSERT_EQ(out.untouched.size(), 1u);
  EXPECT_EQ(out.untouched[0], multi);
}

TEST(Augment, TenfoldSyntheticCorpusKeepsInvariants) {
  pipeline::SynthConfig cfg;
  cfg.dialogues = 60;
  const auto corpus = pipeline::synthesize_corpus(cfg);
  const corpus::SchemaIndex index(corpus.schemas);
  const auto pools = build_pools(corpus.dialogues, index);
  const auto out = augment_corpus(corpus.dialogues, index, pools, {10, 3});
  long single = 0;
  for (const auto& d : corpus.dialogues) single += d.single_domain();
  EXPECT_EQ(static_cast<long>(out.dialogues.size()), 10 * single);
  EXPECT_EQ(static_cast<long>(out.untouched.size()),
            static_cast<long>(corpus.dialogues.size()) - single);
  EXPECT_GT(out.log.replaced, 0);
  std::map<std::string, const Dialogue*> originals;
  for (const auto& d : corpus.dialogues) originals[d.dialogue_id] = &d;
  long changed = 0;
  for (const auto& d : out.dialogues) {
    EXPECT_NO_THROW(corpus::validate_dialogue(d, index)) << d.dialogue_id;
    const auto base = d.dialogue_id.substr(0, d.dialogue_id.find("_aug"));
    const Dialogue& o = *originals.at(base);
    EXPECT_EQ(statuses(d, index), statuses(o, index)) << d.dialogue_id;
    changed += d.turns != o.turns;
  }
  EXPECT_GT(changed, 8 * single);
  EXPECT_NO_THROW(corpus::validate_corpus({corpus.schemas, out.dialogues}));
  const auto again = augment_corpus(corpus.dialogues, index, pools, {10, 3});
  EXPECT_EQ(again.dialogues, out.dialogues);
  EXPECT_NE(out.manifest_json({10, 3}).find("\"multiplier\""), std::string::npos);
}

}  // namespace
}  // namespace schemadst::augment
