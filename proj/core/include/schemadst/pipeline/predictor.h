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
#ifndef SCHEMADST_PIPELINE_PREDICTOR_H_
#define SCHEMADST_PIPELINE_PREDICTOR_H_

#include <set>
#include <string>
#include <vector>

#include "schemadst/corpus/types.h"
#include "schemadst/decoders/state_decoder.h"
#include "schemadst/metrics/metrics.h"
#include "schemadst/pipeline/model.h"
#include "schemadst/schema_memory/memory.h"
#include "schemadst/tracker/candidates.h"
#include "schemadst/tracker/tracker.h"

namespace schemadst::pipeline {

// Head outputs behind one tracked frame.
struct FramePrediction {
  int turn_index = 0;
  int frame_index = 0;
  std::string service;
  std::vector<std::string> tokens;
  decoders::DecoderOutput output;
  decoders::FrameDecision decision;
  bool too_long = false;  // input did not fit; every slot left inactive
};

// Model decisions folded through the tracker, one dialogue at a time.
class Predictor {
 public:
  // Throws ProvenanceError when the memory was built for another model or
  // does not match a schema.
  Predictor(const Model& model, const schema_memory::SchemaEmbeddingMemory& memory,
            const corpus::SchemaIndex& schemas,
            const tracker::CandidateTable& table,
            double requested_threshold = 0.5,
            tracker::TrackerOptions options = {});

  std::vector<tracker::TrackedFrame> track(
      const corpus::Dialogue& dialogue,
      std::vector<tracker::FrameTrace>* traces = nullptr,
      std::vector<FramePrediction>* predictions = nullptr) const;

  std::vector<metrics::FrameEval> evaluate_frames(
      const std::vector<corpus::Dialogue>& dialogues) const;

 private:
  const Model& model_;
  const schema_memory::SchemaEmbeddingMemory& memory_;
  const corpus::SchemaIndex& schemas_;
  const tracker::CandidateTable& table_;
  double requested_threshold_;
  tracker::TrackerOptions options_;
};

// Runs the predictor over `dialogues` and reports every metric slice.
metrics::EvalReport evaluate_model(
    const Predictor& predictor, const std::vector<corpus::Dialogue>& dialogues,
    const corpus::SchemaIndex& schemas,
    const std::set<std::string>* train_services = nullptr,
    metrics::SliceSelection selection = {});

}  // namespace schemadst::pipeline

#endif  // SCHEMADST_PIPELINE_PREDICTOR_H_
