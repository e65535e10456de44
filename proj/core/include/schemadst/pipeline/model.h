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
#ifndef SCHEMADST_PIPELINE_MODEL_H_
#define SCHEMADST_PIPELINE_MODEL_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "schemadst/corpus/types.h"
#include "schemadst/decoders/state_decoder.h"
#include "schemadst/encoder/tokenizer.h"
#include "schemadst/encoder/transformer.h"
#include "schemadst/pipeline/config.h"
#include "schemadst/schema_memory/memory.h"
#include "schemadst/tensor/parameter.h"

namespace schemadst::pipeline {

// Vocabulary over training utterances plus every schema description, name
// and categorical value.
encoder::Vocabulary build_vocabulary(
    const std::vector<corpus::Dialogue>& dialogues,
    const std::vector<corpus::ServiceSchema>& schemas, std::size_t max_words);

// Utterance encoder and decoding heads sharing one parameter store.
// Parameters are initialised from ModelConfig::init_seed, so two models
// with the same config and vocabulary start out identical.
class Model {
 public:
  Model(const ModelConfig& config, encoder::Vocabulary vocab);
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  const ModelConfig& config() const { return config_; }
  const std::string& hash() const { return hash_; }
  tensor::ParameterStore& store() { return *store_; }
  const tensor::ParameterStore& store() const { return *store_; }
  const encoder::Tokenizer& tokenizer() const { return tokenizer_; }
  const encoder::TransformerEncoder& encoder() const { return *encoder_; }
  const decoders::StateDecoder& decoder() const { return *decoder_; }

  // [CLS] system [SEP] user [SEP]. Throws InputTooLongError.
  encoder::PairInput make_input(std::string_view system,
                                std::string_view user) const;

  // Schema vectors from the encoder as it currently stands.
  schema_memory::SchemaEmbeddingMemory build_memory(
      const std::vector<corpus::ServiceSchema>& schemas) const;

  decoders::DecoderGraph forward(
      tensor::Tape& tape, const encoder::PairInput& input,
      const corpus::ServiceSchema& schema,
      const schema_memory::ServiceEmbeddings& embeddings,
      const encoder::ForwardOptions& options = {}) const;

  // Evaluation-mode head distributions.
  decoders::DecoderOutput predict(
      const encoder::PairInput& input, const corpus::ServiceSchema& schema,
      const schema_memory::ServiceEmbeddings& embeddings) const;

 private:
  ModelConfig config_;
  std::string hash_;
  encoder::Tokenizer tokenizer_;
  std::unique_ptr<tensor::ParameterStore> store_;
  std::unique_ptr<encoder::TransformerEncoder> encoder_;
  std::unique_ptr<decoders::StateDecoder> decoder_;
};

}  // namespace schemadst::pipeline

#endif  // SCHEMADST_PIPELINE_MODEL_H_
