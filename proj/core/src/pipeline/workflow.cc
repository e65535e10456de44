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
#include "schemadst/pipeline/workflow.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "schemadst/common/error.h"
#include "schemadst/corpus/gold_targets.h"
#include "schemadst/corpus/sgd_io.h"
#include "schemadst/pipeline/pretrain.h"
#include "schemadst/tensor/archive.h"

namespace schemadst::pipeline {

namespace fs = std::filesystem;

corpus::Corpus load_split(const RunConfig& config, const std::string& split) {
  const fs::path dir = config.data_dir / split;
  if (!fs::is_directory(dir)) {
    throw Error("no corpus at " + dir.string() +
                " (run `schemadst split` or `schemadst synth` first)");
  }
  return corpus::parse_corpus(dir);
}

std::vector<corpus::ServiceSchema> all_schemas(const RunConfig& config) {
  std::vector<corpus::ServiceSchema> out;
  std::set<std::string> seen;
  for (const char* split : {"train", "dev", "test"}) {
    const fs::path file = config.data_dir / split / "schema.json";
    if (!fs::exists(file)) continue;
    for (corpus::ServiceSchema& s : corpus::read_schemas(file)) {
      if (seen.insert(s.service_name).second) out.push_back(std::move(s));
    }
  }
  if (out.empty()) {
    throw Error("no schema.json under " + config.data_dir.string());
  }
  return out;
}

MemoryBuild build_memory_step(const RunConfig& config, std::ostream* log) {
  config.validate();
  const corpus::Corpus train = load_split(config, "train");
  const std::vector<corpus::ServiceSchema> schemas = all_schemas(config);
  fs::create_directories(config.work_dir);

  encoder::Vocabulary vocab = build_vocabulary(
      train.dialogues, schemas,
      static_cast<std::size_t>(config.model.vocab_max_words));
  vocab.save(config.vocab_path());
  Model model(config.model, std::move(vocab));
  const PretrainResult pre = pretrain_encoder(
      model, pretraining_pairs(train.dialogues, schemas),
      config.model.pretrain, log);
  tensor::save_checkpoint(config.init_checkpoint(), model.store(), nullptr,
                          {model.hash(), 0, R"({"kind":"init"})"});
  const schema_memory::SchemaEmbeddingMemory memory =
      model.build_memory(schemas);
  schema_memory::save_memory(config.memory_path(), memory);

  MemoryBuild out;
  out.model_hash = model.hash();
  out.vocab_size = model.tokenizer().vocab().size();
  for (const auto& [name, e] : memory.services()) out.vectors += e.vector_count();
  out.pretrain_seconds = pre.seconds;
  return out;
}

tracker::CandidateTable build_candidates_step(const RunConfig& config) {
  const corpus::Corpus train = load_split(config, "train");
  tracker::CandidateTable table =
      tracker::build_candidate_table(train.dialogues, config.candidate_threshold);
  fs::create_directories(config.work_dir);
  std::ofstream out(config.table_path(), std::ios::binary);
  if (!out) throw Error("cannot write " + config.table_path().string());
  char header[96];
  std::snprintf(header, sizeof(header),
                "# candidate table: %zu training dialogues, threshold %.17g\n",
                train.dialogues.size(), config.candidate_threshold);
  out << header << table.to_tsv();
  if (!out) throw Error("cannot write " + config.table_path().string());
  return table;
}

std::unique_ptr<Model> open_model(const RunConfig& config,
                                  const fs::path& checkpoint) {
  if (!fs::exists(config.vocab_path())) {
    throw Error("missing " + config.vocab_path().string() +
                " (run `schemadst build-memory` first)");
  }
  if (!fs::exists(checkpoint)) {
    throw Error("missing checkpoint " + checkpoint.string() +
                " (run `schemadst train` first)");
  }
  auto model = std::make_unique<Model>(
      config.model, encoder::Vocabulary::load(config.vocab_path()));
  tensor::load_checkpoint(checkpoint, model->store(), nullptr, model->hash());
  return model;
}

schema_memory::SchemaEmbeddingMemory open_memory(const RunConfig& config,
                                                 const Model& model) {
  if (!fs::exists(config.memory_path())) {
    throw Error("missing schema memory " + config.memory_path().string() +
                " (run `schemadst build-memory` first)");
  }
  return schema_memory::load_memory(config.memory_path(), model.hash());
}

tracker::CandidateTable open_candidates(const RunConfig& config) {
  if (!fs::exists(config.table_path())) {
    throw Error("missing candidate table " + config.table_path().string() +
                " (run `schemadst build-candidates` first)");
  }
  return tracker::CandidateTable::load(config.table_path(),
                                       config.candidate_threshold);
}

TrainResult train_step(const RunConfig& config, bool resume, std::ostream* log,
                       long stop_after) {
  config.validate();
  if (!fs::exists(config.memory_path())) {
    throw Error("missing schema memory " + config.memory_path().string() +
                " (run `schemadst build-memory` first)");
  }
  std::unique_ptr<Model> model = open_model(config, config.init_checkpoint());
  const schema_memory::SchemaEmbeddingMemory memory =
      open_memory(config, *model);
  const tracker::CandidateTable table = open_candidates(config);
  const corpus::Corpus train = load_split(config, "train");
  const std::vector<corpus::Dialogue> dev =
      fs::is_directory(config.data_dir / "dev")
          ? load_split(config, "dev").dialogues
          : std::vector<corpus::Dialogue>{};
  const corpus::SchemaIndex schemas(all_schemas(config));
  for (const corpus::ServiceSchema& s : schemas.schemas()) {
    memory.check_against(s);
  }

  TrainOptions options = TrainOptions::from(config);
  options.resume = resume;
  options.stop_after = stop_after;
  options.log = log;
  TrainResult result =
      train_model(*model, memory, train.dialogues, dev, schemas, table, options);
  if (dev.empty()) {
    // Without a dev split the final parameters are the best ones.
    tensor::save_checkpoint(config.best_checkpoint(), model->store(), nullptr,
                            {model->hash(), result.last_step, "{}"});
  }
  return result;
}

metrics::EvalReport eval_step(const RunConfig& config, const std::string& split,
                              fs::path checkpoint) {
  if (checkpoint.empty()) checkpoint = config.best_checkpoint();
  std::unique_ptr<Model> model = open_model(config, checkpoint);
  const schema_memory::SchemaEmbeddingMemory memory =
      open_memory(config, *model);
  const tracker::CandidateTable table = open_candidates(config);
  const corpus::SchemaIndex schemas(all_schemas(config));
  const corpus::Corpus data = load_split(config, split);
  const Predictor predictor(*model, memory, schemas, table,
                            config.requested_threshold);
  std::set<std::string> train_services;
  const std::set<std::string>* seen = nullptr;
  if (config.slice_seen && fs::is_directory(config.data_dir / "train")) {
    train_services = metrics::observed_services(
        load_split(config, "train").dialogues);
    seen = &train_services;
  }
  const metrics::EvalReport report =
      evaluate_model(predictor, data.dialogues, schemas, seen,
                     {config.slice_domain, config.slice_seen});

  fs::create_directories(config.report_dir());
  nlohmann::json j = {{"config_hash", model->hash()},
                      {"split", split},
                      {"checkpoint", checkpoint.string()},
                      {"slices", nlohmann::json::parse(report.to_json())}};
  std::ofstream out(config.report_dir() / ("eval_" + split + ".json"));
  out << j.dump(2) << '\n';
  if (!out) throw Error("cannot write report under " + config.report_dir().string());
  return report;
}

namespace {

std::string join_values(const std::vector<std::string>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += " | ";
    out += values[i];
  }
  return out;
}

std::string fmt(const char* format, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

void state_diff(std::ostringstream& out, const corpus::DialogueState& before,
                const corpus::DialogueState& after) {
  std::vector<std::string> lines;
  for (const auto& [slot, values] : after.slot_values) {
    auto it = before.slot_values.find(slot);
    if (it == before.slot_values.end()) {
      lines.push_back("+ " + slot + " = " + join_values(values));
    } else if (it->second != values) {
      lines.push_back("~ " + slot + " = " + join_values(it->second) + " -> " +
                      join_values(values));
    }
  }
  for (const auto& [slot, values] : before.slot_values) {
    if (!after.slot_values.count(slot)) {
      lines.push_back("- " + slot + " = " + join_values(values));
    }
  }
  if (before.active_intent != after.active_intent) {
    lines.push_back("~ intent " + before.active_intent + " -> " +
                    after.active_intent);
  }
  if (lines.empty()) {
    out << "  state diff: (empty)\n";
    return;
  }
  out << "  state diff:\n";
  for (const std::string& l : lines) out << "    " << l << '\n';
}

}  // namespace

std::string format_trace(const corpus::Dialogue& dialogue,
                         const corpus::SchemaIndex& schemas,
                         const std::vector<tracker::FrameTrace>& traces,
                         const std::vector<FramePrediction>& predictions) {
  std::ostringstream out;
  out << "dialogue " << dialogue.dialogue_id << '\n';
  std::map<std::string, corpus::DialogueState> last;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const tracker::FrameTrace& t = traces[i];
    const corpus::ServiceSchema& schema = schemas.at(t.service);
    out << "\nturn " << t.turn_index << " [" << t.service << "]";
    if (t.switched) {
      out << " switch from "
          << (t.previous_service.empty() ? "(start)" : t.previous_service);
    }
    out << '\n';
    const std::string_view system =
        dialogue.preceding_system_utterance(t.turn_index);
    if (!system.empty()) out << "  system: " << system << '\n';
    out << "  user: " << dialogue.turns[t.turn_index].utterance << '\n';

    if (i < predictions.size()) {
      const FramePrediction& p = predictions[i];
      if (p.too_long) {
        out << "  input too long; every slot left inactive\n";
      } else {
        std::vector<std::pair<double, std::string>> intents;
        for (std::size_t k = 0; k < p.output.intent.size(); ++k) {
          intents.emplace_back(p.output.intent[k],
                               k == 0 ? std::string(corpus::kNoneIntent)
                                      : schema.intents[k - 1].name);
        }
        std::stable_sort(intents.begin(), intents.end(),
                         [](const auto& a, const auto& b) {
                           return a.first > b.first;
                         });
        out << "  intent:";
        for (std::size_t k = 0; k < intents.size() && k < 3; ++k) {
          out << ' ' << intents[k].second << fmt("=%.3f", intents[k].first);
        }
        out << '\n';
        std::string requested;
        for (std::size_t s = 0; s < schema.slots.size(); ++s) {
          if (p.output.requested[s] > 0.1) {
            requested += ' ' + schema.slots[s].name +
                         fmt("=%.3f", p.output.requested[s]);
          }
        }
        if (!requested.empty()) out << "  requested:" << requested << '\n';
      }
    }

    long inactive = static_cast<long>(schema.slots.size()) -
                    static_cast<long>(t.slots.size());
    for (const tracker::SlotTrace& s : t.slots) {
      out << "  slot " << s.slot << ": " << corpus::status_name(s.status);
      if (i < predictions.size() && !predictions[i].too_long) {
        const auto& dist =
            predictions[i].output.status[schema.slot_index(s.slot)];
        out << " (";
        for (int k = 0; k < corpus::kNumStatuses; ++k) {
          if (k > 0) out << ' ';
          out << corpus::status_name(static_cast<corpus::SlotStatus>(k))
              << fmt("=%.3f", dist[k]);
        }
        out << ')';
      }
      out << '\n';
      if (s.trigger != tracker::Trigger::kNone) {
        out << "    carry-over trigger " << tracker::trigger_name(s.trigger)
            << '\n';
      }
      for (const std::string& c : s.consulted) {
        out << "    consulted " << c << '\n';
      }
      if (!s.resolved_from.empty()) {
        out << "    value from " << s.resolved_from << '\n';
      }
    }
    out << "  inactive slots: " << inactive << '\n';
    state_diff(out, last[t.service], t.state);
    last[t.service] = t.state;
  }
  return out.str();
}

std::string trace_step(const RunConfig& config, const std::string& split,
                       const std::string& dialogue_id, fs::path checkpoint) {
  if (checkpoint.empty()) checkpoint = config.best_checkpoint();
  const corpus::Corpus data = load_split(config, split);
  const auto it = std::find_if(
      data.dialogues.begin(), data.dialogues.end(),
      [&](const corpus::Dialogue& d) { return d.dialogue_id == dialogue_id; });
  if (it == data.dialogues.end()) {
    throw Error("unknown dialogue id '" + dialogue_id + "' in split " + split);
  }
  std::unique_ptr<Model> model = open_model(config, checkpoint);
  const schema_memory::SchemaEmbeddingMemory memory =
      open_memory(config, *model);
  const tracker::CandidateTable table = open_candidates(config);
  const corpus::SchemaIndex schemas(all_schemas(config));
  const Predictor predictor(*model, memory, schemas, table,
                            config.requested_threshold);
  std::vector<tracker::FrameTrace> traces;
  std::vector<FramePrediction> predictions;
  predictor.track(*it, &traces, &predictions);
  return format_trace(*it, schemas, traces, predictions);
}

}  // namespace schemadst::pipeline
