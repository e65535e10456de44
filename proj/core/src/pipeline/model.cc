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
#include "schemadst/pipeline/model.h"

#include <random>

namespace schemadst::pipeline {

encoder::Vocabulary build_vocabulary(
    const std::vector<corpus::Dialogue>& dialogues,
    const std::vector<corpus::ServiceSchema>& schemas, std::size_t max_words) {
  std::vector<std::string> texts;
  for (const corpus::Dialogue& d : dialogues) {
    for (const corpus::Turn& t : d.turns) texts.push_back(t.utterance);
  }
  for (const corpus::ServiceSchema& s : schemas) {
    texts.push_back(s.description);
    for (const corpus::IntentSpec& i : s.intents) {
      texts.push_back(i.description);
    }
    for (const corpus::SlotSpec& sl : s.slots) {
      texts.push_back(sl.description);
      for (const std::string& v : sl.possible_values) texts.push_back(v);
    }
  }
  return encoder::Vocabulary::build(texts, max_words);
}

Model::Model(const ModelConfig& config, encoder::Vocabulary vocab)
    : config_(config),
      hash_(model_hash(config, vocab)),
      tokenizer_(std::move(vocab)),
      store_(std::make_unique<tensor::ParameterStore>()) {
  std::mt19937_64 rng(config.init_seed);
  encoder::EncoderConfig ec;
  ec.vocab_size = static_cast<int>(tokenizer_.vocab().size());
  ec.model_dim = config.model_dim;
  ec.num_layers = config.num_layers;
  ec.num_heads = config.num_heads;
  ec.ffn_dim = config.ffn_dim;
  ec.max_seq_len = config.max_seq_len;
  ec.init_stddev = config.init_stddev;
  encoder_ =
      std::make_unique<encoder::TransformerEncoder>(*store_, "encoder", ec, rng);
  decoders::DecoderConfig dc;
  dc.model_dim = config.model_dim;
  dc.num_heads = config.num_heads;
  dc.init_stddev = config.init_stddev;
  decoder_ =
      std::make_unique<decoders::StateDecoder>(*store_, "decoder", dc, rng);
}

encoder::PairInput Model::make_input(std::string_view system,
                                     std::string_view user) const {
  return encoder::build_pair_input(tokenizer_, system, user,
                                   config_.max_seq_len);
}

schema_memory::SchemaEmbeddingMemory Model::build_memory(
    const std::vector<corpus::ServiceSchema>& schemas) const {
  return schema_memory::build_memory(schemas, tokenizer_, *encoder_, hash_);
}

decoders::DecoderGraph Model::forward(
    tensor::Tape& tape, const encoder::PairInput& input,
    const corpus::ServiceSchema& schema,
    const schema_memory::ServiceEmbeddings& embeddings,
    const encoder::ForwardOptions& options) const {
  const encoder::EncoderOutput enc = encoder_->forward(tape, input, options);
  const std::vector<bool> mask(input.size(), true);
  return decoder_->forward(tape, enc.tokens, enc.cls, mask, schema,
                           embeddings);
}

decoders::DecoderOutput Model::predict(
    const encoder::PairInput& input, const corpus::ServiceSchema& schema,
    const schema_memory::ServiceEmbeddings& embeddings) const {
  tensor::Tape tape;
  return decoders::distributions(forward(tape, input, schema, embeddings),
                                 schema);
}

}  // namespace schemadst::pipeline
