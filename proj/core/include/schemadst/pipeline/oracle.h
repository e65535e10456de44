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
#ifndef SCHEMADST_PIPELINE_ORACLE_H_
#define SCHEMADST_PIPELINE_ORACLE_H_

#include <vector>

#include "schemadst/corpus/types.h"
#include "schemadst/encoder/tokenizer.h"
#include "schemadst/tracker/candidates.h"
#include "schemadst/tracker/tracker.h"

namespace schemadst::pipeline {

struct OracleStats {
  long frames = 0;
  long unaligned_spans = 0;
  long unrecoverable = 0;  // carry-over targets with no recoverable source
};

// Runs the tracker on decisions read off the dialogue's own gold targets,
// so that only the rules and the candidate table can lose accuracy.
std::vector<tracker::TrackedFrame> oracle_track(
    const corpus::Dialogue& dialogue, const corpus::SchemaIndex& schemas,
    const encoder::Tokenizer& tokenizer, int max_seq_len,
    const tracker::CandidateTable& table,
    const tracker::TrackerOptions& options = {}, OracleStats* stats = nullptr,
    std::vector<tracker::FrameTrace>* traces = nullptr);

}  // namespace schemadst::pipeline

#endif  // SCHEMADST_PIPELINE_ORACLE_H_
