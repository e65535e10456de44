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

#include <algorithm>
#include <array>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "builders.h"
#include "schemadst/common/error.h"
#include "schemadst/corpus/gold_targets.h"
#include "schemadst/corpus/sgd_io.h"
#include "schemadst/corpus/split.h"
#include "schemadst/corpus/switches.h"
#include "schemadst/corpus/types.h"
#include "schemadst/corpus/validate.h"

namespace schemadst::corpus {
namespace {

using testing::toy_dialogue;
using testing::toy_schemas;

std::vector<Dialogue> numbered(int n) {
  std::vector<Dialogue> out;
  for (int i = 0; i < n; ++i) out.push_back(toy_dialogue("d" + std::to_string(i)));
  return out;
}

std::set<std::string> ids(const std::vector<Dialogue>& ds) {
  std::set<std::string> out;
  for (const auto& d : ds) out.insert(d.dialogue_id);
  return out;
}

const SlotTarget& slot(const FrameTargets& f, const std::string& name) {
  for (const auto& s : f.slots)
    if (s.slot == name) return s;
  throw Error("no slot " + name);
}

TEST(Values, DontCareSpellings) {
  EXPECT_TRUE(is_dont_care("dontcare"));
  EXPECT_TRUE(is_dont_care("don't care"));
  EXPECT_TRUE(is_dont_care("  Don't   Care "));
  EXPECT_FALSE(is_dont_care("care"));
  EXPECT_EQ(canonical_value("don't care"), "dontcare");
  EXPECT_EQ(canonical_value("Oakland"), "Oakland");
  EXPECT_TRUE(values_overlap({"don't care"}, {"dontcare"}));
  EXPECT_FALSE(values_overlap({"a", "b"}, {"c"}));
}

TEST(Values, FindWordRespectsBoundaries) {
  EXPECT_EQ(find_word("party of 2 people", "2"), 9u);
  EXPECT_EQ(find_word("room 12", "2"), std::string_view::npos);
  EXPECT_TRUE(contains_word("Cheap food", "cheap"));
  EXPECT_FALSE(contains_word("cheapest", "cheap"));
}

TEST(SgdIo, RoundTripPreservesEverything) {
  const auto schemas = toy_schemas();
  const std::vector<Dialogue> dialogues = {toy_dialogue("a"), toy_dialogue("b")};
  EXPECT_EQ(dialogues_from_json(dialogues_to_json(dialogues), "mem"), dialogues);
  const auto back = schemas_from_json(schemas_to_json(schemas), "mem");
  ASSERT_EQ(back.size(), schemas.size());
  for (std::size_t i = 0; i < schemas.size(); ++i) {
    EXPECT_EQ(back[i].service_name, schemas[i].service_name);
    ASSERT_EQ(back[i].slots.size(), schemas[i].slots.size());
    for (std::size_t k = 0; k < schemas[i].slots.size(); ++k) {
      EXPECT_EQ(back[i].slots[k].name, schemas[i].slots[k].name);
      EXPECT_EQ(back[i].slots[k].is_categorical, schemas[i].slots[k].is_categorical);
      EXPECT_EQ(back[i].slots[k].possible_values, schemas[i].slots[k].possible_values);
    }
  }
}

TEST(SgdIo, DirectoryRoundTrip) {
  const auto root = std::filesystem::temp_directory_path() / "schemadst_io_test";
  std::filesystem::remove_all(root);
  Corpus c{toy_schemas(), numbered(5)};
  write_corpus(root, c, 2);
  EXPECT_TRUE(std::filesystem::exists(root / "dialogues_003.json"));
  const Corpus back = parse_corpus(root);
  EXPECT_EQ(back.dialogues, c.dialogues);
  std::filesystem::remove_all(root);
}

TEST(SgdIo, MissingFieldNamesFileAndField) {
  const std::string text = R"([{"dialogue_id": "x", "services": ["S"]}])";
  try {
    dialogues_from_json(text, "broken.json");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.file(), "broken.json");
    EXPECT_NE(e.field().find("turns"), std::string::npos) << e.field();
  }
}

TEST(SgdIo, MalformedJsonIsParseError) {
  EXPECT_THROW(dialogues_from_json("[{", "bad.json"), ParseError);
  EXPECT_THROW(read_dialogues("/nonexistent/file.json"), ParseError);
}

TEST(Validate, ToyDialogueIsValid) {
  const SchemaIndex index(toy_schemas());
  EXPECT_NO_THROW(validate_dialogue(toy_dialogue(), index));
  EXPECT_NO_THROW(validate_schemas(toy_schemas()));
}

TEST(Validate, RejectsBrokenDialogues) {
  const SchemaIndex index(toy_schemas());
  auto expect_turn = [&](const Dialogue& d, int turn) {
    try {
      validate_dialogue(d, index);
      FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
      EXPECT_EQ(e.dialogue_id(), d.dialogue_id);
      EXPECT_EQ(e.turn_index(), turn) << e.what();
    }
  };
  {
    auto d = toy_dialogue();
    d.turns.erase(d.turns.begin() + 1);
    expect_turn(d, 1);
  }
  {
    auto d = toy_dialogue();
    d.turns[2].frames[0].state->slot_values["cuisine"] = {"thai"};
    expect_turn(d, 2);
  }
  {
    auto d = toy_dialogue();
    d.turns[0].frames[0].slot_spans[0].end_char = 1000;
    expect_turn(d, 0);
  }
  {
    auto d = toy_dialogue();
    d.turns[0].frames[0].state->active_intent = "FlyAway";
    expect_turn(d, 0);
  }
  {
    auto d = toy_dialogue();
    d.services = {"Restaurants_1"};
    expect_turn(d, 4);
  }
}

TEST(Validate, RejectsBadSchemasAndDuplicateIds) {
  auto schemas = toy_schemas();
  schemas[1].service_name = schemas[0].service_name;
  EXPECT_THROW(validate_schemas(schemas), Error);
  auto cat = toy_schemas();
  cat[0].slots[3].possible_values.clear();
  EXPECT_THROW(validate_schemas(cat), Error);
  Corpus c{toy_schemas(), {toy_dialogue("same"), toy_dialogue("same")}};
  EXPECT_THROW(validate_corpus(c), ValidationError);
}

TEST(Split, SizesFollowSeventyFifteenFifteen) {
  for (auto [n, tr, dv] : std::vector<std::array<int, 3>>{
           {20, 14, 3}, {100, 70, 15}, {3, 2, 0}, {7, 4, 1}, {285, 199, 42}}) {
    const Split s = resplit_sgd_plus(numbered(n), 2020);
    EXPECT_EQ(static_cast<int>(s.train.size()), tr) << n;
    EXPECT_EQ(static_cast<int>(s.dev.size()), dv) << n;
    EXPECT_EQ(static_cast<int>(s.test.size()), n - tr - dv) << n;
  }
}

TEST(Split, DisjointCoveringAndDeterministic) {
  const auto all = numbered(50);
  const Split a = resplit_sgd_plus(all, 7);
  const Split b = resplit_sgd_plus(all, 7);
  EXPECT_EQ(ids(a.train), ids(b.train));
  EXPECT_EQ(ids(a.dev), ids(b.dev));
  std::set<std::string> seen;
  for (const auto* part : {&a.train, &a.dev, &a.test})
    for (const auto& d : *part) EXPECT_TRUE(seen.insert(d.dialogue_id).second);
  EXPECT_EQ(seen, ids(all));
  const Split c = resplit_sgd_plus(all, 8);
  EXPECT_NE(ids(a.train), ids(c.train));
}

TEST(Split, TooFewDialoguesIsAnError) {
  EXPECT_THROW(resplit_sgd_plus(numbered(2), 1), Error);
}

TEST(Switches, DetectsServiceChange) {
  const auto events = detect_switches(toy_dialogue());
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].turn_index, 4);
  EXPECT_EQ(events[0].user_turn, 2);
  EXPECT_EQ(events[0].from_service, "Restaurants_1");
  EXPECT_EQ(events[0].to_service, "Hotels_1");
}

TEST(Switches, SingleServiceHasNone) {
  auto d = toy_dialogue();
  d.turns.resize(4);
  d.services = {"Restaurants_1"};
  EXPECT_TRUE(detect_switches(d).empty());
}

TEST(GoldTargets, StatusesAndSources) {
  const SchemaIndex index(toy_schemas());
  const GoldTargets g = derive_gold_targets(toy_dialogue(), index);
  ASSERT_EQ(g.frames.size(), 4u);

  const auto& t0 = g.frames[0];
  EXPECT_EQ(t0.intent_index, 1);
  EXPECT_EQ(slot(t0, "city").status, SlotStatus::kActive);
  EXPECT_EQ(slot(t0, "city").user_span, (CharSpan{32, 39}));
  EXPECT_EQ(slot(t0, "price_range").status, SlotStatus::kActive);
  EXPECT_EQ(slot(t0, "price_range").categorical_index, 1);
  EXPECT_EQ(slot(t0, "date").status, SlotStatus::kInactive);

  const auto& t2 = g.frames[1];
  EXPECT_EQ(slot(t2, "city").status, SlotStatus::kInactive);
  EXPECT_EQ(slot(t2, "restaurant_name").status, SlotStatus::kCarryOver);
  EXPECT_EQ(slot(t2, "restaurant_name").source, ValueSource::kSystemAction);
  EXPECT_EQ(slot(t2, "party_size").status, SlotStatus::kActive);
  EXPECT_EQ(slot(t2, "party_size").categorical_index, 2);

  const auto& t4 = g.frames[2];
  EXPECT_EQ(t4.service, "Hotels_1");
  EXPECT_EQ(slot(t4, "city").status, SlotStatus::kCarryOver);
  EXPECT_EQ(slot(t4, "city").source, ValueSource::kOtherService);

  const auto& t6 = g.frames[3];
  EXPECT_EQ(slot(t6, "check_in_date").status, SlotStatus::kDontCare);
  EXPECT_EQ(slot(t6, "number_of_rooms").status, SlotStatus::kActive);
  EXPECT_EQ(slot(t6, "hotel_name").source, ValueSource::kSystemAction);
}

TEST(GoldTargets, UnrecoverableValueIsFlagged) {
  auto d = toy_dialogue();
  d.turns[2].frames[0].state->slot_values["date"] = {"next friday"};
  const GoldTargets g = derive_gold_targets(d, SchemaIndex(toy_schemas()));
  const auto& s = slot(g.frames[1], "date");
  EXPECT_EQ(s.status, SlotStatus::kCarryOver);
  EXPECT_EQ(s.source, ValueSource::kUnrecoverable);
  EXPECT_FALSE(s.note.empty());
}

TEST(GoldTargets, StatusOrderIsTieBreakOrder) {
  EXPECT_LT(static_cast<int>(SlotStatus::kInactive), static_cast<int>(SlotStatus::kActive));
  EXPECT_LT(static_cast<int>(SlotStatus::kActive), static_cast<int>(SlotStatus::kDontCare));
  EXPECT_LT(static_cast<int>(SlotStatus::kDontCare), static_cast<int>(SlotStatus::kCarryOver));
  EXPECT_EQ(status_name(SlotStatus::kCarryOver), "carry_over");
}

}  // namespace
}  // namespace schemadst::corpus
