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
#ifndef SCHEMADST_PIPELINE_CONFIG_H_
#define SCHEMADST_PIPELINE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "schemadst/decoders/loss.h"
#include "schemadst/encoder/tokenizer.h"
#include "schemadst/tensor/adam.h"

namespace schemadst::pipeline {

// Self-supervised encoder warm-up run before the schema memory is built.
struct PretrainConfig {
  long steps = 0;  // 0 keeps the random initialisation
  int batch_size = 16;
  double peak_learning_rate = 1e-3;
  double mask_rate = 0.15;
  std::uint64_t seed = 13;
};

struct ModelConfig {
  int model_dim = 64;
  int num_layers = 2;
  int num_heads = 4;
  int ffn_dim = 256;
  int max_seq_len = 128;
  double init_stddev = 0.02;
  int vocab_max_words = 8000;
  std::uint64_t init_seed = 7;
  PretrainConfig pretrain;
};

struct TrainingConfig {
  long total_steps = 1500;
  int eval_every = 250;
  int log_every = 50;
  std::uint64_t seed = 11;
};

struct RunConfig {
  std::string preset = "desk";
  // Corpus root with train/, dev/ and test/ sub-directories.
  std::filesystem::path data_dir = "data";
  // Artifacts: vocabulary, schema memory, candidate table, checkpoints,
  // reports.
  std::filesystem::path work_dir = "work";

  ModelConfig model;
  tensor::OptimizerConfig optimizer;
  decoders::LossWeights loss_weights;
  TrainingConfig training;

  double requested_threshold = 0.5;
  double candidate_threshold = 0.1;

  std::uint64_t split_seed = 2020;
  std::uint64_t augment_seed = 3;
  int augment_multiplier = 10;
  std::uint64_t synth_seed = 5;

  bool slice_domain = true;
  bool slice_seen = true;

  void validate() const;

  std::filesystem::path vocab_path() const { return work_dir / "vocab.txt"; }
  std::filesystem::path memory_path() const { return work_dir / "memory.bin"; }
  std::filesystem::path table_path() const {
    return work_dir / "candidates.tsv";
  }
  std::filesystem::path checkpoint_dir() const {
    return work_dir / "checkpoints";
  }
  // Parameters right after pretraining; the schema memory is built from it.
  std::filesystem::path init_checkpoint() const {
    return work_dir / "init.ckpt";
  }
  std::filesystem::path best_checkpoint() const {
    return checkpoint_dir() / "best.ckpt";
  }
  std::filesystem::path report_dir() const { return work_dir / "reports"; }
};

// "desk": small encoder trained from scratch on one CPU core.
// "paper": the reference large-scale settings (documentation only; far
// beyond desk-scale compute).
RunConfig preset(const std::string& name);

std::string to_json(const RunConfig& config);
// Missing keys keep the values of the preset named by "preset" (or "desk").
// Throws ConfigError on unknown keys or bad types.
RunConfig config_from_json(const std::string& text, const std::string& source);
// Applies "section.key=value" assignments (for example
// "training.total_steps=200"). Values are read as JSON when they parse and
// as strings otherwise. Throws ConfigError on malformed assignments.
RunConfig apply_overrides(const RunConfig& config,
                          const std::vector<std::string>& assignments);
RunConfig load_config(const std::filesystem::path& file);
void save_config(const std::filesystem::path& file, const RunConfig& config);

// Stamps every artifact derived from the model: the model configuration and
// the vocabulary fingerprint.
std::string model_hash(const ModelConfig& model,
                       const encoder::Vocabulary& vocab);

}  // namespace schemadst::pipeline

#endif  // SCHEMADST_PIPELINE_CONFIG_H_
