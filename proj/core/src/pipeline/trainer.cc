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
#include "schemadst/pipeline/trainer.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "schemadst/common/error.h"
#include "schemadst/common/hash.h"
#include "schemadst/common/random.h"
#include "schemadst/corpus/gold_targets.h"
#include "schemadst/pipeline/predictor.h"
#include "schemadst/tensor/archive.h"

namespace schemadst::pipeline {

std::vector<Example> make_examples(
    const std::vector<corpus::Dialogue>& dialogues,
    const corpus::SchemaIndex& schemas, const Model& model,
    ExampleStats* stats) {
  std::vector<Example> out;
  ExampleStats local;
  for (const corpus::Dialogue& d : dialogues) {
    const corpus::GoldTargets gold = corpus::derive_gold_targets(d, schemas);
    for (const corpus::FrameTargets& f : gold.frames) {
      ++local.frames;
      Example ex;
      try {
        ex.input =
            model.make_input(d.preceding_system_utterance(f.turn_index),
                             d.turns[f.turn_index].utterance);
      } catch (const encoder::InputTooLongError&) {
        ++local.too_long;
        continue;
      }
      ex.dialogue_id = d.dialogue_id;
      ex.turn_index = f.turn_index;
      ex.frame_index = f.frame_index;
      ex.service = f.service;
      ex.labels = decoders::make_labels(f, schemas.at(f.service), ex.input);
      local.unaligned_spans += ex.labels.unaligned_spans;
      out.push_back(std::move(ex));
    }
  }
  if (stats) *stats = local;
  return out;
}

TrainOptions TrainOptions::from(const RunConfig& config) {
  TrainOptions o;
  o.optimizer = config.optimizer;
  o.loss_weights = config.loss_weights;
  o.training = config.training;
  o.requested_threshold = config.requested_threshold;
  o.checkpoint_dir = config.checkpoint_dir();
  return o;
}

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::string_view what, long a,
                          long b = 0) {
  return Fnv1a()
      .update_u64(seed)
      .update(what)
      .update_u64(static_cast<std::uint64_t>(a))
      .update_u64(static_cast<std::uint64_t>(b))
      .digest();
}

std::vector<std::size_t> epoch_order(std::size_t n, std::uint64_t seed,
                                     long epoch) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(derive_seed(seed, "epoch", epoch));
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[uniform_below(rng, i)]);
  }
  return order;
}

void log_line(std::ostream* log, const std::string& line) {
  if (log) *log << line << '\n' << std::flush;
}

}  // namespace

TrainResult train_model(Model& model,
                        const schema_memory::SchemaEmbeddingMemory& memory,
                        const std::vector<corpus::Dialogue>& train,
                        const std::vector<corpus::Dialogue>& dev,
                        const corpus::SchemaIndex& schemas,
                        const tracker::CandidateTable& table,
                        const TrainOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  options.optimizer.validate();
  if (memory.config_hash() != model.hash()) {
    throw ProvenanceError("schema memory was built for model " +
                          memory.config_hash() + ", not " + model.hash());
  }
  TrainResult result;
  const std::vector<Example> examples =
      make_examples(train, schemas, model, &result.examples);
  if (examples.empty()) throw Error("no training examples");

  tensor::ParameterStore& store = model.store();
  tensor::Adam adam(store, options.optimizer);
  std::vector<tensor::Matrix> best_values;
  long start = 1;

  const std::filesystem::path last_file = options.checkpoint_dir / "last.ckpt";
  const std::filesystem::path best_file = options.checkpoint_dir / "best.ckpt";
  if (!options.checkpoint_dir.empty()) {
    std::filesystem::create_directories(options.checkpoint_dir);
    if (options.resume && std::filesystem::exists(last_file)) {
      if (std::filesystem::exists(best_file)) {
        tensor::load_checkpoint(best_file, store, nullptr, model.hash());
        best_values = store.snapshot();
      }
      const tensor::CheckpointInfo info =
          tensor::load_checkpoint(last_file, store, &adam, model.hash());
      start = info.step + 1;
      const auto extra = nlohmann::json::parse(info.extra);
      result.best_step = extra.value("best_step", 0L);
      result.best_joint_goal_accuracy =
          extra.value("best_joint_goal_accuracy", 0.0);
      char line[128];
      std::snprintf(line, sizeof(line), "resume step %ld", info.step);
      log_line(options.log, line);
    }
  }
  result.first_step = start;

  const long total = options.optimizer.total_steps;
  const int batch = options.optimizer.batch_size;
  const std::size_t n = examples.size();
  long cached_epoch = -1;
  std::vector<std::size_t> order;
  tensor::Gradients grads(store);

  auto evaluate_dev = [&](long step) {
    const Predictor predictor(model, memory, schemas, table,
                              options.requested_threshold);
    const std::vector<metrics::FrameEval> frames =
        predictor.evaluate_frames(dev);
    const double jga = metrics::joint_goal_accuracy(frames, schemas).value;
    result.dev.push_back({step, jga});
    if (result.best_step == 0 || jga > result.best_joint_goal_accuracy) {
      result.best_step = step;
      result.best_joint_goal_accuracy = jga;
      best_values = store.snapshot();
      if (!options.checkpoint_dir.empty()) {
        tensor::save_checkpoint(best_file, store, nullptr,
                                {model.hash(), step, "{}"});
      }
    }
    char line[160];
    std::snprintf(line, sizeof(line),
                  "eval step %ld dev_joint_goal_accuracy %.6f best %.6f@%ld",
                  step, jga, result.best_joint_goal_accuracy,
                  result.best_step);
    log_line(options.log, line);
  };

  const long end =
      options.stop_after > 0 ? std::min(total, start + options.stop_after - 1)
                             : total;
  for (long step = start; step <= end; ++step) {
    grads.zero();
    double loss_sum = 0.0;
    for (int b = 0; b < batch; ++b) {
      const long k = (step - 1) * batch + b;
      const long epoch = k / static_cast<long>(n);
      if (epoch != cached_epoch) {
        order = epoch_order(n, options.training.seed, epoch);
        cached_epoch = epoch;
      }
      const Example& ex = examples[order[k % static_cast<long>(n)]];
      std::mt19937_64 rng(derive_seed(options.training.seed, "dropout", step, b));
      encoder::ForwardOptions fo;
      fo.dropout = options.optimizer.dropout;
      fo.rng = &rng;
      tensor::Tape tape;
      const decoders::DecoderGraph graph = model.forward(
          tape, ex.input, schemas.at(ex.service), memory.at(ex.service), fo);
      const decoders::LossResult loss = decoders::multitask_loss(
          tape, graph, ex.labels, options.loss_weights);
      tape.backward(loss.total);
      tape.accumulate(grads);
      loss_sum += loss.total.scalar();
    }
    grads.scale(1.0 / batch);
    adam.step(store, grads, step);
    result.losses.push_back(loss_sum / batch);
    result.last_step = step;

    const int log_every = options.training.log_every;
    if (log_every > 0 && step % log_every == 0) {
      char line[128];
      std::snprintf(line, sizeof(line), "step %ld loss %.6f lr %.6g", step,
                    loss_sum / batch, adam.schedule()(step));
      log_line(options.log, line);
    }
    const int eval_every = options.training.eval_every;
    const bool eval_now =
        !dev.empty() &&
        (step == total || (eval_every > 0 && step % eval_every == 0));
    if (eval_now) evaluate_dev(step);
    if (!options.checkpoint_dir.empty() &&
        (eval_now || step == end)) {
      nlohmann::json extra = {
          {"best_step", result.best_step},
          {"best_joint_goal_accuracy", result.best_joint_goal_accuracy}};
      tensor::save_checkpoint(last_file, store, &adam,
                              {model.hash(), step, extra.dump()});
    }
  }
  if (!best_values.empty()) store.restore(best_values);
  result.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return result;
}

}  // namespace schemadst::pipeline
