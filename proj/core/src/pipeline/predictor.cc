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
#include "schemadst/pipeline/predictor.h"

#include <map>
#include <memory>

#include "schemadst/common/error.h"

namespace schemadst::pipeline {

Predictor::Predictor(const Model& model,
                     const schema_memory::SchemaEmbeddingMemory& memory,
                     const corpus::SchemaIndex& schemas,
                     const tracker::CandidateTable& table,
                     double requested_threshold,
                     tracker::TrackerOptions options)
    : model_(model),
      memory_(memory),
      schemas_(schemas),
      table_(table),
      requested_threshold_(requested_threshold),
      options_(options) {
  if (memory.config_hash() != model.hash()) {
    throw ProvenanceError("schema memory was built for model " +
                          memory.config_hash() + ", not " + model.hash());
  }
  for (const corpus::ServiceSchema& s : schemas.schemas()) {
    if (memory.find(s.service_name) != nullptr) memory.check_against(s);
  }
}

std::vector<tracker::TrackedFrame> Predictor::track(
    const corpus::Dialogue& dialogue, std::vector<tracker::FrameTrace>* traces,
    std::vector<FramePrediction>* predictions) const {
  // One encoder input per turn, shared by its frames; the tracker keeps
  // pointers into this map.
  std::map<int, std::unique_ptr<encoder::PairInput>> inputs;
  auto observe = [&](int turn, int frame) {
    const corpus::Frame& f = dialogue.turns[turn].frames[frame];
    const corpus::ServiceSchema& schema = schemas_.at(f.service);
    const std::string_view system = dialogue.preceding_system_utterance(turn);
    const std::string& user = dialogue.turns[turn].utterance;
    tracker::FrameObservation obs;
    obs.service = f.service;
    obs.system_utterance = system;
    obs.user_utterance = user;
    FramePrediction pred;
    pred.turn_index = turn;
    pred.frame_index = frame;
    pred.service = f.service;

    auto it = inputs.find(turn);
    if (it == inputs.end()) {
      std::unique_ptr<encoder::PairInput> input;
      try {
        input = std::make_unique<encoder::PairInput>(
            model_.make_input(system, user));
      } catch (const encoder::InputTooLongError&) {
      }
      it = inputs.emplace(turn, std::move(input)).first;
    }
    if (it->second) {
      const encoder::PairInput& input = *it->second;
      pred.output = model_.predict(input, schema, memory_.at(f.service));
      pred.decision =
          decoders::decide(pred.output, schema, requested_threshold_);
      obs.input = &input;
      if (predictions) {
        pred.tokens = encoder::token_strings(input, model_.tokenizer().vocab());
      }
    } else {
      pred.too_long = true;
      pred.decision.requested.assign(schema.slots.size(), false);
      pred.decision.slots.assign(schema.slots.size(), {});
    }
    obs.decision = pred.decision;
    if (predictions) predictions->push_back(std::move(pred));
    return obs;
  };
  return tracker::track_dialogue(dialogue, schemas_, observe, table_, options_,
                                 traces);
}

std::vector<metrics::FrameEval> Predictor::evaluate_frames(
    const std::vector<corpus::Dialogue>& dialogues) const {
  std::vector<std::vector<tracker::TrackedFrame>> predicted;
  predicted.reserve(dialogues.size());
  for (const corpus::Dialogue& d : dialogues) predicted.push_back(track(d));
  return metrics::pair_frames(dialogues, predicted);
}

metrics::EvalReport evaluate_model(
    const Predictor& predictor, const std::vector<corpus::Dialogue>& dialogues,
    const corpus::SchemaIndex& schemas,
    const std::set<std::string>* train_services,
    metrics::SliceSelection selection) {
  return metrics::evaluate(predictor.evaluate_frames(dialogues), schemas,
                           train_services, selection);
}

}  // namespace schemadst::pipeline
