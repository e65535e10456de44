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

#ifndef SCHEMADST_CORPUS_VALIDATE_H_
#define SCHEMADST_CORPUS_VALIDATE_H_

#include <vector>

#include "schemadst/corpus/types.h"

namespace schemadst::corpus {

// Schema invariants: unique service/intent/slot names, non-empty intent
// names distinct from NONE, categorical iff possible values are listed.
void validate_schemas(const std::vector<ServiceSchema>& schemas);

// Referential and positional invariants of one dialogue against the schemas.
// Throws ValidationError naming the dialogue and turn.
void validate_dialogue(const Dialogue& dialogue, const SchemaIndex& schemas);

// Both of the above plus unique dialogue ids.
void validate_corpus(const Corpus& corpus);

}  // namespace schemadst::corpus

#endif  // SCHEMADST_CORPUS_VALIDATE_H_
