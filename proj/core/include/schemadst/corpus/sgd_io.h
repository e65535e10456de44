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

#ifndef SCHEMADST_CORPUS_SGD_IO_H_
#define SCHEMADST_CORPUS_SGD_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "schemadst/corpus/types.h"

namespace schemadst::corpus {

// Reads the schema-guided dialogue layout: `schema.json` plus every
// `dialogues_*.json` in `root`, merged in file-name order, then validated.
// Throws ParseError (file + field) or ValidationError.
Corpus parse_corpus(const std::filesystem::path& root);

std::vector<ServiceSchema> read_schemas(const std::filesystem::path& file);
std::vector<Dialogue> read_dialogues(const std::filesystem::path& file);

void write_schemas(const std::filesystem::path& file,
                   const std::vector<ServiceSchema>& schemas);
void write_dialogues(const std::filesystem::path& file,
                     const std::vector<Dialogue>& dialogues);
// Writes `schema.json` and `dialogues_001.json`, `dialogues_002.json`, ...
// with at most `per_file` dialogues each.
void write_corpus(const std::filesystem::path& root, const Corpus& corpus,
                  std::size_t per_file = 128);

// JSON text forms, used by the file functions above and by tests.
std::string schemas_to_json(const std::vector<ServiceSchema>& schemas);
std::string dialogues_to_json(const std::vector<Dialogue>& dialogues);
std::vector<ServiceSchema> schemas_from_json(const std::string& text,
                                             const std::string& source);
std::vector<Dialogue> dialogues_from_json(const std::string& text,
                                          const std::string& source);

}  // namespace schemadst::corpus

#endif  // SCHEMADST_CORPUS_SGD_IO_H_
