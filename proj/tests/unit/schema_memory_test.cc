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

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "builders.h"
#include "schemadst/common/error.h"
#include "schemadst/pipeline/config.h"
#include "schemadst/schema_memory/memory.h"

namespace schemadst::schema_memory {
namespace {

using corpus::ServiceSchema;

// 4 intents, 10 slots, 6 of them categorical with 3 values each.
ServiceSchema counting_schema() {
  std::vector<std::pair<std::string, std::vector<std::string>>> cat;
  for (int i = 0; i < 6; ++i)
    cat.push_back({"cat" + std::to_string(i),
                   {"v" + std::to_string(i) + "a", "v" + std::to_string(i) + "b", "v" + std::to_string(i) + "c"}});
  return testing::make_schema("Counting_1", {"f0", "f1", "f2", "f3"}, cat,
                              {"IntentA", "IntentB", "IntentC", "IntentD"});
}

class MemoryTest : public ::testing::Test {
 protected:
  MemoryTest()
      : tokenizer_(encoder::Vocabulary::build(texts(), 200)), rng_(5) {
    encoder::EncoderConfig c;
    c.vocab_size = static_cast<int>(tokenizer_.vocab().size());
    c.model_dim = 16;
    c.num_layers = 1;
    c.num_heads = 2;
    c.ffn_dim = 32;
    c.max_seq_len = 64;
    c.init_stddev = 0.1;
    encoder_ = std::make_unique<encoder::TransformerEncoder>(store_, "encoder", c, rng_);
  }

  static std::vector<std::string> texts() {
    std::vector<std::string> out;
    for (const auto& s : schemas()) {
      out.push_back(s.description);
      for (const auto& i : s.intents) out.push_back(i.description);
      for (const auto& sl : s.slots) {
        out.push_back(sl.description);
        for (const auto& v : sl.possible_values) out.push_back(v);
      }
    }
    return out;
  }

  static std::vector<ServiceSchema> schemas() {
    auto out = testing::toy_schemas();
    out.push_back(counting_schema());
    return out;
  }

  SchemaEmbeddingMemory build(const std::vector<ServiceSchema>& s,
                              const std::string& hash = "h") {
    return build_memory(s, tokenizer_, *encoder_, hash);
  }

  encoder::Tokenizer tokenizer_;
  std::mt19937_64 rng_;
  tensor::ParameterStore store_;
  std::unique_ptr<encoder::TransformerEncoder> encoder_;
};

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("schemadst_memory_" + name);
}

TEST_F(MemoryTest, CountsMatchSchema) {
  const auto m = build({counting_schema()});
  const auto& e = m.at("Counting_1");
  EXPECT_EQ(e.intents.rows(), 4);
  EXPECT_EQ(e.categorical_slots.rows() + e.noncategorical_slots.rows(), 10);
  EXPECT_EQ(e.categorical_slots.rows(), 6);
  int values = 0;
  for (const auto& v : e.categorical_values) {
    values += static_cast<int>(v.rows());
    EXPECT_EQ(v.cols(), 16);
  }
  EXPECT_EQ(values, 18);
  EXPECT_EQ(e.vector_count(), 4u + 10u + 18u);
  EXPECT_EQ(e.intents.cols(), 16);
  EXPECT_EQ(m.dim(), 16);
  EXPECT_EQ(e.slots_in_schema_order(counting_schema()).rows(), 10);
  EXPECT_NO_THROW(m.check_against(counting_schema()));
}

TEST_F(MemoryTest, IdenticalDescriptionsGiveIdenticalVectors) {
  auto s = counting_schema();
  s.intents[2].description = s.intents[0].description;
  const auto& e = build({s}).at("Counting_1");
  EXPECT_EQ(e.intents.row(0), e.intents.row(2));
  EXPECT_NE(e.intents.row(0), e.intents.row(1));
}

TEST_F(MemoryTest, RebuildIsBitIdentical) {
  const auto a = build(schemas());
  const auto b = build(schemas());
  EXPECT_EQ(a.checksum(), b.checksum());
  const auto& x = a.at("Hotels_1").noncategorical_slots;
  const auto& y = b.at("Hotels_1").noncategorical_slots;
  EXPECT_EQ(std::memcmp(x.data(), y.data(), sizeof(double) * x.size()), 0);
}

TEST_F(MemoryTest, MemoryIsDetachedFromLaterParameterChanges) {
  const auto m = build(schemas());
  const auto before = m.checksum();
  for (std::size_t i = 0; i < store_.size(); ++i) store_[i].value.array() += 0.5;
  EXPECT_EQ(m.checksum(), before);
  EXPECT_NE(build(schemas()).checksum(), before);
}

TEST_F(MemoryTest, MissingDescriptionNamesEntity) {
  auto s = counting_schema();
  s.slots[7].description.clear();
  try {
    build({s});
    FAIL() << "expected error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("cat3"), std::string::npos) << e.what();
  }
}

TEST_F(MemoryTest, SaveLoadRoundTrip) {
  const auto m = build(schemas(), "abc123");
  const auto file = temp_file("roundtrip.bin");
  save_memory(file, m);
  const auto back = load_memory(file, "abc123");
  EXPECT_TRUE(back == m);
  EXPECT_EQ(back.at("Counting_1").value_names, m.at("Counting_1").value_names);
  EXPECT_EQ(back.at("Restaurants_1").categorical_values[1],
            m.at("Restaurants_1").categorical_values[1]);
}

TEST_F(MemoryTest, LoadRefusesOtherEncoderConfiguration) {
  pipeline::ModelConfig small;
  pipeline::ModelConfig wide = small;
  wide.model_dim = 128;
  const auto hash = pipeline::model_hash(small, tokenizer_.vocab());
  const auto other = pipeline::model_hash(wide, tokenizer_.vocab());
  ASSERT_NE(hash, other);
  const auto file = temp_file("hash.bin");
  save_memory(file, build(schemas(), hash));
  EXPECT_THROW(load_memory(file, other), ProvenanceError);
  EXPECT_NO_THROW(load_memory(file, hash));
}

TEST_F(MemoryTest, CorruptFileIsParseError) {
  const auto file = temp_file("corrupt.bin");
  save_memory(file, build(schemas()));
  std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
  f.seekp(200);
  f.put('\x7f');
  f.close();
  EXPECT_THROW(load_memory(file, ""), ParseError);
}

TEST_F(MemoryTest, CheckAgainstDetectsSchemaDrift) {
  const auto m = build(schemas());
  auto s = testing::toy_schemas()[1];
  s.slots.push_back({"extra", "extra slot", false, {}});
  EXPECT_THROW(m.check_against(s), ProvenanceError);
  EXPECT_THROW(m.at("Flights_1"), Error);
}

}  // namespace
}  // namespace schemadst::schema_memory
