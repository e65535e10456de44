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
#include "schemadst/pipeline/oracle.h"

#include <map>
#include <utility>

#include "schemadst/common/error.h"
#include "schemadst/corpus/gold_targets.h"
#include "schemadst/decoders/labels.h"

namespace schemadst::pipeline {

std::vector<tracker::TrackedFrame> oracle_track(
    const corpus::Dialogue& dialogue, const corpus::SchemaIndex& schemas,
    const encoder::Tokenizer& tokenizer, int max_seq_len,
    const tracker::CandidateTable& table,
    const tracker::TrackerOptions& options, OracleStats* stats,
    std::vector<tracker::FrameTrace>* traces) {
  const corpus::GoldTargets gold =
      corpus::derive_gold_targets(dialogue, schemas);
  std::map<std::pair<int, int>, const corpus::FrameTargets*> by_frame;
  for (const corpus::FrameTargets& f : gold.frames) {
    by_frame[{f.turn_index, f.frame_index}] = &f;
  }
  // Inputs must outlive the observations that point at them.
  std::map<std::pair<int, int>, encoder::PairInput> inputs;

  auto observe = [&](int turn, int frame) {
    const corpus::FrameTargets* targets = by_frame.at({turn, frame});
    const corpus::ServiceSchema& schema = schemas.at(targets->service);
    const std::string_view system = dialogue.preceding_system_utterance(turn);
    const std::string& user = dialogue.turns[turn].utterance;
    encoder::PairInput& input = inputs[{turn, frame}] =
        encoder::build_pair_input(tokenizer, system, user, max_seq_len);
    const decoders::FrameLabels labels =
        decoders::make_labels(*targets, schema, input);
    if (stats) {
      ++stats->frames;
      stats->unaligned_spans += labels.unaligned_spans;
      for (const corpus::SlotTarget& s : targets->slots) {
        if (s.source == corpus::ValueSource::kUnrecoverable) {
          ++stats->unrecoverable;
        }
      }
    }
    tracker::FrameObservation obs;
    obs.service = targets->service;
    obs.decision = decoders::decide(
        decoders::oracle_output(labels, schema,
                                static_cast<int>(input.size())),
        schema);
    obs.input = &input;
    obs.system_utterance = system;
    obs.user_utterance = user;
    return obs;
  };
  return tracker::track_dialogue(dialogue, schemas, observe, table, options,
                                 traces);
}

}  // namespace schemadst::pipeline
