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
#ifndef SCHEMADST_PIPELINE_WORKFLOW_H_
#define SCHEMADST_PIPELINE_WORKFLOW_H_

#include <filesystem>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "schemadst/corpus/types.h"
#include "schemadst/metrics/metrics.h"
#include "schemadst/pipeline/config.h"
#include "schemadst/pipeline/model.h"
#include "schemadst/pipeline/predictor.h"
#include "schemadst/pipeline/trainer.h"
#include "schemadst/schema_memory/memory.h"
#include "schemadst/tracker/candidates.h"
#include "schemadst/tracker/tracker.h"

// File-level steps behind the command-line tool. Every step reads its
// inputs from RunConfig::data_dir / work_dir and writes its artifacts back
// into work_dir.
namespace schemadst::pipeline {

// data_dir/<split>, parsed and validated.
corpus::Corpus load_split(const RunConfig& config, const std::string& split);

// Schemas of every split present under data_dir, first definition wins.
std::vector<corpus::ServiceSchema> all_schemas(const RunConfig& config);

struct MemoryBuild {
  std::string model_hash;
  std::size_t vocab_size = 0;
  std::size_t vectors = 0;
  double pretrain_seconds = 0.0;
};

// Vocabulary from the training split, encoder pretraining, the initial
// checkpoint and the schema memory of all_schemas().
MemoryBuild build_memory_step(const RunConfig& config,
                              std::ostream* log = nullptr);

// Candidate table of the training split, saved to table_path().
tracker::CandidateTable build_candidates_step(const RunConfig& config);

// Model from the saved vocabulary and `checkpoint`; the checkpoint must
// carry the model's hash.
std::unique_ptr<Model> open_model(const RunConfig& config,
                                  const std::filesystem::path& checkpoint);
// Both throw an Error naming the command that produces the missing file.
schema_memory::SchemaEmbeddingMemory open_memory(const RunConfig& config,
                                                 const Model& model);
tracker::CandidateTable open_candidates(const RunConfig& config);

// Trains from the initial checkpoint (or resumes), writing checkpoints and
// a log under work_dir. `stop_after` > 0 ends the run early (see
// TrainOptions::stop_after).
TrainResult train_step(const RunConfig& config, bool resume,
                       std::ostream* log = nullptr, long stop_after = 0);

// Metrics of `split` with the given checkpoint (best by default); the
// report is also written to report_dir()/eval_<split>.json.
metrics::EvalReport eval_step(const RunConfig& config, const std::string& split,
                              std::filesystem::path checkpoint = {});

// Human-readable per-turn trace of one dialogue.
std::string format_trace(const corpus::Dialogue& dialogue,
                         const corpus::SchemaIndex& schemas,
                         const std::vector<tracker::FrameTrace>& traces,
                         const std::vector<FramePrediction>& predictions);

std::string trace_step(const RunConfig& config, const std::string& split,
                       const std::string& dialogue_id,
                       std::filesystem::path checkpoint = {});

}  // namespace schemadst::pipeline

#endif  // SCHEMADST_PIPELINE_WORKFLOW_H_
