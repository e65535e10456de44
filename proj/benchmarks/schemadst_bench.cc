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

#include <memory>
#include <vector>

#include <benchmark/benchmark.h>

#include "schemadst/corpus/types.h"
#include "schemadst/decoders/loss.h"
#include "schemadst/metrics/metrics.h"
#include "schemadst/pipeline/config.h"
#include "schemadst/pipeline/model.h"
#include "schemadst/pipeline/oracle.h"
#include "schemadst/pipeline/predictor.h"
#include "schemadst/pipeline/synth.h"
#include "schemadst/pipeline/trainer.h"
#include "schemadst/tensor/adam.h"
#include "schemadst/tracker/candidates.h"

namespace schemadst {
namespace {

struct Fixture {
  corpus::Corpus data;
  corpus::SchemaIndex index;
  std::unique_ptr<pipeline::Model> model;
  schema_memory::SchemaEmbeddingMemory memory;
  tracker::CandidateTable table;
  std::vector<pipeline::Example> examples;

  Fixture() {
    pipeline::SynthConfig synth;
    synth.dialogues = 100;
    data = pipeline::synthesize_corpus(synth);
    index = corpus::SchemaIndex(data.schemas);
    const auto cfg = pipeline::preset("desk");
    model = std::make_unique<pipeline::Model>(
        cfg.model, pipeline::build_vocabulary(data.dialogues, data.schemas,
                                              cfg.model.vocab_max_words));
    memory = model->build_memory(data.schemas);
    table = tracker::build_candidate_table(data.dialogues);
    examples = pipeline::make_examples(data.dialogues, index, *model);
  }
};

Fixture& fixture() {
  static Fixture f;
  return f;
}

void BM_EncoderForward(benchmark::State& state) {
  auto& f = fixture();
  const auto& input = f.examples[state.range(0)].input;
  for (auto _ : state) {
    tensor::Tape tape;
    benchmark::DoNotOptimize(f.model->encoder().forward(tape, input));
  }
  state.counters["tokens"] = static_cast<double>(input.size());
}
BENCHMARK(BM_EncoderForward)->Arg(0)->Arg(7)->Unit(benchmark::kMicrosecond);

void BM_Predict(benchmark::State& state) {
  auto& f = fixture();
  const auto& ex = f.examples.front();
  const auto& schema = f.index.at(ex.service);
  for (auto _ : state)
    benchmark::DoNotOptimize(f.model->predict(ex.input, schema, f.memory.at(ex.service)));
}
BENCHMARK(BM_Predict)->Unit(benchmark::kMicrosecond);

// Forward, backward and one optimizer update over a batch of 8 frames.
void BM_TrainStep(benchmark::State& state) {
  auto& f = fixture();
  auto& store = f.model->store();
  const auto saved = store.snapshot();
  tensor::OptimizerConfig oc;
  oc.total_steps = 1000000;
  tensor::Adam adam(store, oc);
  long step = 0;
  for (auto _ : state) {
    tensor::Gradients grads(store);
    for (int b = 0; b < 8; ++b) {
      const auto& ex = f.examples[(step * 8 + b) % f.examples.size()];
      tensor::Tape tape;
      const auto graph = f.model->forward(tape, ex.input, f.index.at(ex.service),
                                          f.memory.at(ex.service));
      tape.backward(decoders::multitask_loss(tape, graph, ex.labels).total);
      tape.accumulate(grads);
    }
    adam.step(store, grads, ++step);
  }
  store.restore(saved);
}
BENCHMARK(BM_TrainStep)->Unit(benchmark::kMillisecond);

void BM_OracleTrackCorpus(benchmark::State& state) {
  auto& f = fixture();
  for (auto _ : state) {
    for (const auto& d : f.data.dialogues) {
      benchmark::DoNotOptimize(pipeline::oracle_track(
          d, f.index, f.model->tokenizer(), f.model->config().max_seq_len, f.table));
    }
  }
  state.SetItemsProcessed(state.iterations() * f.data.dialogues.size());
}
BENCHMARK(BM_OracleTrackCorpus)->Unit(benchmark::kMillisecond);

void BM_CandidateTable(benchmark::State& state) {
  auto& f = fixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(tracker::build_candidate_table(f.data.dialogues));
}
BENCHMARK(BM_CandidateTable)->Unit(benchmark::kMicrosecond);

void BM_Metrics(benchmark::State& state) {
  auto& f = fixture();
  std::vector<std::vector<tracker::TrackedFrame>> pred;
  for (const auto& d : f.data.dialogues)
    pred.push_back(pipeline::oracle_track(d, f.index, f.model->tokenizer(),
                                          f.model->config().max_seq_len, f.table));
  const auto frames = metrics::pair_frames(f.data.dialogues, pred);
  const auto train = metrics::observed_services(f.data.dialogues);
  for (auto _ : state)
    benchmark::DoNotOptimize(metrics::evaluate(frames, f.index, &train));
  state.SetItemsProcessed(state.iterations() * frames.size());
}
BENCHMARK(BM_Metrics)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace schemadst

BENCHMARK_MAIN();
