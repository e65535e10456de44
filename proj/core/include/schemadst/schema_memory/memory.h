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
#ifndef SCHEMADST_SCHEMA_MEMORY_MEMORY_H_
#define SCHEMADST_SCHEMA_MEMORY_MEMORY_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "schemadst/corpus/types.h"
#include "schemadst/encoder/transformer.h"

namespace schemadst::schema_memory {

using tensor::Matrix;

// Fixed schema vectors of one service. Row i of each matrix belongs to the
// i-th entity of the corresponding name list.
struct ServiceEmbeddings {
  Matrix intents;               // N_I x q, schema intent order
  Matrix categorical_slots;     // N_C x q
  Matrix noncategorical_slots;  // N_NC x q
  // One N_V x q block per categorical slot, same order as
  // categorical_slots.
  std::vector<Matrix> categorical_values;

  std::vector<std::string> intent_names;
  std::vector<std::string> categorical_slot_names;
  std::vector<std::string> noncategorical_slot_names;
  std::vector<std::vector<std::string>> value_names;

  // All slot vectors in schema slot order.
  Matrix slots_in_schema_order(const corpus::ServiceSchema& schema) const;
  std::size_t vector_count() const;
};

class SchemaEmbeddingMemory {
 public:
  SchemaEmbeddingMemory() = default;
  SchemaEmbeddingMemory(std::string config_hash, int dim)
      : config_hash_(std::move(config_hash)), dim_(dim) {}

  const std::string& config_hash() const { return config_hash_; }
  int dim() const { return dim_; }

  void insert(const std::string& service, ServiceEmbeddings embeddings);
  const ServiceEmbeddings* find(std::string_view service) const;
  // Throws schemadst::Error for services that were never encoded.
  const ServiceEmbeddings& at(std::string_view service) const;
  const std::map<std::string, ServiceEmbeddings, std::less<>>& services()
      const {
    return services_;
  }

  // Throws ProvenanceError when entity names or counts differ from the
  // schema.
  void check_against(const corpus::ServiceSchema& schema) const;

  // Hash over names and raw vector bytes.
  std::uint64_t checksum() const;

  friend bool operator==(const SchemaEmbeddingMemory& a,
                         const SchemaEmbeddingMemory& b) {
    return a.checksum() == b.checksum() && a.config_hash_ == b.config_hash_;
  }

 private:
  std::string config_hash_;
  int dim_ = 0;
  std::map<std::string, ServiceEmbeddings, std::less<>> services_;
};

// Encodes every description pair once with the given (frozen) encoder and
// keeps the [CLS] output:
//   intent:  service description, intent description
//   slot:    service description, slot description
//   value:   slot description, value string
// Throws schemadst::Error naming the entity when a description is empty.
SchemaEmbeddingMemory build_memory(
    const std::vector<corpus::ServiceSchema>& schemas,
    const encoder::Tokenizer& tokenizer,
    const encoder::TransformerEncoder& encoder, std::string config_hash);

void save_memory(const std::filesystem::path& file,
                 const SchemaEmbeddingMemory& memory);

// Bit-exact inverse of save_memory. Throws ProvenanceError when the stored
// config hash differs from `expected_hash` (skipped when empty) and
// ParseError on a damaged file.
SchemaEmbeddingMemory load_memory(const std::filesystem::path& file,
                                  std::string_view expected_hash);

}  // namespace schemadst::schema_memory

#endif  // SCHEMADST_SCHEMA_MEMORY_MEMORY_H_
