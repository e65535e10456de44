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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int status = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(SCHEMADST_CLI) + " " + args + " 2>&1";
  Outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof(buf), p) != nullptr) r.out += buf;
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() / "schemadst_cli_test";
    fs::remove_all(root_);
    fs::create_directories(root_);
    common_ = "--data " + (root_ / "data").string() + " --work " + (root_ / "work").string() +
              " --set model.model_dim=16 --set model.num_layers=1 --set model.num_heads=2"
              " --set model.ffn_dim=32 --set model.vocab_max_words=300"
              " --set pretrain.steps=5 --set optimizer.batch_size=2"
              " --set training.total_steps=8 --set training.eval_every=4";
  }
  fs::path root_;
  std::string common_;
};

TEST_F(Cli, EndToEndOnSyntheticData) {
  Outcome r = run("synth --out " + (root_ / "flat").string() + " --dialogues 30");
  ASSERT_EQ(r.status, 0) << r.out;
  r = run(common_ + " split --in " + (root_ / "flat").string());
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(fs::exists(root_ / "data" / "dev" / "schema.json"));

  r = run(common_ + " build-memory");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(fs::exists(root_ / "work" / "memory.bin"));
  r = run(common_ + " build-candidates");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(fs::exists(root_ / "work" / "candidates.tsv"));

  r = run(common_ + " train --steps 4");
  ASSERT_EQ(r.status, 0) << r.out;
  r = run(common_ + " train --resume");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("resume step 4"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("trained steps 5..8"), std::string::npos) << r.out;

  r = run(common_ + " eval --split test --json");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto report = nlohmann::json::parse(r.out);
  ASSERT_TRUE(report.is_array());
  EXPECT_EQ(report.at(0).at("slice"), "all");
  EXPECT_TRUE(report.at(0).at("joint_goal_accuracy").contains("value"));
  EXPECT_TRUE(fs::exists(root_ / "work" / "reports" / "eval_test.json"));

  std::ifstream test_file(root_ / "data" / "test" / "dialogues_001.json");
  const auto dialogues = nlohmann::json::parse(test_file);
  const std::string id = dialogues.at(0).at("dialogue_id");
  r = run(common_ + " trace --split test --dialogue " + id);
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("state diff:"), std::string::npos) << r.out;

  r = run(common_ + " augment --out " + (root_ / "aug").string());
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(fs::exists(root_ / "aug" / "augment_manifest.json"));
}

TEST_F(Cli, StructuredErrors) {
  Outcome r = run("--set model.bogus=1 config");
  EXPECT_EQ(r.status, 2) << r.out;
  const auto err = nlohmann::json::parse(r.out.substr(0, r.out.find('\n')));
  EXPECT_EQ(err.at("error"), "config");
  r = run(common_ + " train");
  EXPECT_EQ(r.status, 1) << r.out;
  EXPECT_NE(r.out.find("build-memory"), std::string::npos) << r.out;
  r = run("config");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NO_THROW(nlohmann::json::parse(r.out));
}

}  // namespace
