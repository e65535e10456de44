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
#ifndef SCHEMADST_PIPELINE_TRAINER_H_
#define SCHEMADST_PIPELINE_TRAINER_H_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "schemadst/corpus/types.h"
#include "schemadst/decoders/labels.h"
#include "schemadst/decoders/loss.h"
#include "schemadst/encoder/tokenizer.h"
#include "schemadst/pipeline/config.h"
#include "schemadst/pipeline/model.h"
#include "schemadst/schema_memory/memory.h"
#include "schemadst/tensor/adam.h"
#include "schemadst/tracker/candidates.h"

namespace schemadst::pipeline {

// One user frame ready for the loss.
struct Example {
  std::string dialogue_id;
  int turn_index = 0;
  int frame_index = 0;
  std::string service;
  encoder::PairInput input;
  decoders::FrameLabels labels;
};

struct ExampleStats {
  long frames = 0;
  long too_long = 0;  // skipped: the user utterance alone exceeds the limit
  long unaligned_spans = 0;
};

std::vector<Example> make_examples(
    const std::vector<corpus::Dialogue>& dialogues,
    const corpus::SchemaIndex& schemas, const Model& model,
    ExampleStats* stats = nullptr);

struct TrainOptions {
  tensor::OptimizerConfig optimizer;
  decoders::LossWeights loss_weights;
  TrainingConfig training;
  double requested_threshold = 0.5;
  // last.ckpt and best.ckpt are written here when set.
  std::filesystem::path checkpoint_dir;
  // Continue from checkpoint_dir/last.ckpt when it exists.
  bool resume = false;
  // Stop after this many steps of the current run, checkpointing so that a
  // resumed run continues exactly; 0 runs to total_steps.
  long stop_after = 0;
  std::ostream* log = nullptr;

  static TrainOptions from(const RunConfig& config);
};

struct DevPoint {
  long step = 0;
  double joint_goal_accuracy = 0.0;
};

struct TrainResult {
  long first_step = 1;  // > 1 after a resume
  long last_step = 0;
  std::vector<double> losses;  // mean batch loss of each step run here
  std::vector<DevPoint> dev;
  long best_step = 0;  // 0 when no dev evaluation happened
  double best_joint_goal_accuracy = 0.0;
  double seconds = 0.0;
  ExampleStats examples;
};

// Mini-batch Adam on the summed multi-task loss. Dev joint goal accuracy is
// measured every eval_every steps and at the end; the best parameters are
// put back into `model` before returning. Deterministic in the training
// seed: epoch orders and dropout masks are derived from (seed, position).
TrainResult train_model(Model& model,
                        const schema_memory::SchemaEmbeddingMemory& memory,
                        const std::vector<corpus::Dialogue>& train,
                        const std::vector<corpus::Dialogue>& dev,
                        const corpus::SchemaIndex& schemas,
                        const tracker::CandidateTable& table,
                        const TrainOptions& options);

}  // namespace schemadst::pipeline

#endif  // SCHEMADST_PIPELINE_TRAINER_H_
