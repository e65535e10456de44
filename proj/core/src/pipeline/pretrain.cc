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
#include "schemadst/pipeline/pretrain.h"

#include <chrono>
#include <cstdio>
#include <random>

#include "schemadst/common/error.h"
#include "schemadst/common/hash.h"
#include "schemadst/common/random.h"
#include "schemadst/tensor/adam.h"
#include "schemadst/tensor/ops.h"

namespace schemadst::pipeline {

std::vector<TextPair> pretraining_pairs(
    const std::vector<corpus::Dialogue>& dialogues,
    const std::vector<corpus::ServiceSchema>& schemas) {
  std::vector<TextPair> out;
  for (const corpus::Dialogue& d : dialogues) {
    for (std::size_t t = 0; t < d.turns.size(); ++t) {
      if (d.turns[t].speaker != corpus::Speaker::kUser) continue;
      out.emplace_back(std::string(d.preceding_system_utterance(t)),
                       d.turns[t].utterance);
    }
  }
  for (const corpus::ServiceSchema& s : schemas) {
    for (const corpus::IntentSpec& i : s.intents) {
      out.emplace_back(s.description, i.description);
    }
    for (const corpus::SlotSpec& sl : s.slots) {
      out.emplace_back(s.description, sl.description);
      for (const std::string& v : sl.possible_values) {
        out.emplace_back(sl.description, v);
      }
    }
  }
  return out;
}

PretrainResult pretrain_encoder(Model& model, const std::vector<TextPair>& pairs,
                                const PretrainConfig& config,
                                std::ostream* log) {
  using tensor::Var;
  const auto t0 = std::chrono::steady_clock::now();
  PretrainResult result;
  if (config.steps <= 0) return result;
  if (pairs.empty()) throw Error("pretraining: no text pairs");
  if (!(config.mask_rate > 0.0 && config.mask_rate < 1.0)) {
    throw ConfigError("pretraining: mask_rate must lie in (0, 1)");
  }

  std::vector<encoder::PairInput> inputs;
  inputs.reserve(pairs.size());
  for (const TextPair& p : pairs) {
    try {
      inputs.push_back(model.make_input(p.first, p.second));
    } catch (const encoder::InputTooLongError&) {
    }
  }
  if (inputs.empty()) throw Error("pretraining: every pair is too long");

  tensor::OptimizerConfig oc;
  oc.peak_learning_rate = config.peak_learning_rate;
  oc.warmup_fraction = 0.05;
  oc.total_steps = config.steps;
  oc.batch_size = config.batch_size;
  oc.dropout = 0.0;
  tensor::ParameterStore& store = model.store();
  tensor::Adam adam(store, oc);
  tensor::Gradients grads(store);
  std::mt19937_64 rng(Fnv1a().update("pretrain").update_u64(config.seed).digest());
  const tensor::Parameter& embedding = model.encoder().token_embedding();

  for (long step = 1; step <= config.steps; ++step) {
    grads.zero();
    double loss_sum = 0.0;
    for (int b = 0; b < config.batch_size; ++b) {
      const encoder::PairInput& input = inputs[uniform_below(rng, inputs.size())];
      std::vector<int> ids = input.ids;
      std::vector<int> masked_positions;
      std::vector<int> masked_targets;
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (input.origins[i].segment == encoder::Segment::kSpecial) continue;
        if (unit(rng) < config.mask_rate) {
          masked_positions.push_back(static_cast<int>(i));
          masked_targets.push_back(ids[i]);
          ids[i] = encoder::Vocabulary::kUnk;
        }
      }
      std::vector<int> words;
      for (int i = input.second.begin; i < input.second.end; ++i) {
        if (input.origins[i].segment == encoder::Segment::kSecond) {
          words.push_back(input.ids[i]);
        }
      }
      tensor::Tape tape;
      const encoder::EncoderOutput enc = model.encoder().forward(
          tape, ids, input.segment_ids, std::vector<bool>(ids.size(), true));
      const Var table = tape.parameter(embedding);
      std::vector<Var> terms;
      if (!masked_positions.empty()) {
        const Var logits = tensor::matmul_nt(
            tensor::gather_rows(enc.tokens, masked_positions), table);
        terms.push_back(tensor::scale(
            tensor::cross_entropy(logits, masked_targets),
            1.0 / static_cast<double>(masked_positions.size())));
      }
      if (!words.empty()) {
        const Var logits = tensor::matmul_nt(enc.cls, table);
        const Var rows =
            tensor::gather_rows(logits, std::vector<int>(words.size(), 0));
        terms.push_back(tensor::scale(tensor::cross_entropy(rows, words),
                                      1.0 / static_cast<double>(words.size())));
      }
      if (terms.empty()) continue;
      const Var loss = tensor::add_n(terms);
      tape.backward(loss);
      tape.accumulate(grads);
      loss_sum += loss.scalar();
    }
    grads.scale(1.0 / config.batch_size);
    adam.step(store, grads, step);
    result.losses.push_back(loss_sum / config.batch_size);
    if (log != nullptr && (step % 50 == 0 || step == config.steps)) {
      char line[96];
      std::snprintf(line, sizeof(line), "pretrain step %ld loss %.6f", step,
                    loss_sum / config.batch_size);
      *log << line << '\n' << std::flush;
    }
  }
  result.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return result;
}

}  // namespace schemadst::pipeline
