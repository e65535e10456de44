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
// schemadst: corpus preparation, schema memory, candidate table, training,
// evaluation, augmentation and tracing from the command line.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "schemadst/augment/augment.h"
#include "schemadst/common/error.h"
#include "schemadst/corpus/sgd_io.h"
#include "schemadst/corpus/split.h"
#include "schemadst/corpus/validate.h"
#include "schemadst/pipeline/config.h"
#include "schemadst/pipeline/synth.h"
#include "schemadst/pipeline/workflow.h"

namespace fs = std::filesystem;
using namespace schemadst;

namespace {

struct Globals {
  std::string config_file;
  std::string preset;
  std::string data;
  std::string work;
  std::vector<std::string> overrides;
};

pipeline::RunConfig resolve(const Globals& g) {
  pipeline::RunConfig c = g.config_file.empty()
                              ? pipeline::preset(g.preset.empty() ? "desk" : g.preset)
                              : pipeline::load_config(g.config_file);
  if (!g.config_file.empty() && !g.preset.empty()) {
    throw ConfigError("--preset and --config are mutually exclusive");
  }
  std::vector<std::string> sets = g.overrides;
  if (!g.data.empty()) sets.push_back("paths.data=\"" + g.data + "\"");
  if (!g.work.empty()) sets.push_back("paths.work=\"" + g.work + "\"");
  return pipeline::apply_overrides(c, sets);
}

// Every dialogue under `root`: either a single corpus directory or one
// with per-split sub-directories.
corpus::Corpus read_any(const fs::path& root) {
  if (fs::exists(root / "schema.json")) return corpus::parse_corpus(root);
  corpus::Corpus merged;
  std::set<std::string> services;
  bool found = false;
  for (const char* split : {"train", "dev", "test"}) {
    if (!fs::exists(root / split / "schema.json")) continue;
    found = true;
    corpus::Corpus part = corpus::parse_corpus(root / split);
    for (auto& s : part.schemas) {
      if (services.insert(s.service_name).second) {
        merged.schemas.push_back(std::move(s));
      }
    }
    for (auto& d : part.dialogues) merged.dialogues.push_back(std::move(d));
  }
  if (!found) throw Error("no corpus found under " + root.string());
  corpus::validate_corpus(merged);
  return merged;
}

void write_split(const fs::path& root, const std::string& name,
                 const std::vector<corpus::ServiceSchema>& schemas,
                 const std::vector<corpus::Dialogue>& dialogues) {
  fs::remove_all(root / name);
  corpus::write_corpus(root / name, {schemas, dialogues});
}

int error_exit(const std::string& kind, const std::string& message, int code) {
  nlohmann::json j = {{"error", kind}, {"message", message}};
  std::cerr << j.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schema-guided dialogue state tracking"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_file, "JSON run configuration");
  app.add_option("--preset", g.preset, "desk or paper (default desk)");
  app.add_option("--data", g.data, "corpus root with train/ dev/ test/");
  app.add_option("--work", g.work, "artifact directory");
  app.add_option("--set", g.overrides,
                 "override a config entry, e.g. training.total_steps=200");

  auto* show = app.add_subcommand("config", "print the resolved configuration");

  auto* synth = app.add_subcommand("synth", "write a synthetic corpus");
  std::string synth_out;
  int synth_dialogues = 285;
  double synth_multi = 0.4;
  synth->add_option("--out", synth_out, "output corpus directory")->required();
  synth->add_option("--dialogues", synth_dialogues, "number of dialogues");
  synth->add_option("--multi-domain-fraction", synth_multi);

  auto* split = app.add_subcommand("split", "70/15/15 re-split into --data");
  std::string split_in;
  split->add_option("--in", split_in, "corpus directory (flat or per split)")
      ->required();

  auto* memory = app.add_subcommand(
      "build-memory", "vocabulary, encoder pretraining and schema memory");
  auto* candidates =
      app.add_subcommand("build-candidates", "cross-service candidate table");

  auto* train = app.add_subcommand("train", "train the state decoder");
  bool resume = false;
  train->add_flag("--resume", resume, "continue from the last checkpoint");
  long train_steps = 0;
  train->add_option("--steps", train_steps,
                    "stop after this many steps (resume later with --resume)")
      ->check(CLI::NonNegativeNumber);

  auto* eval = app.add_subcommand("eval", "evaluate a checkpoint");
  std::string eval_split = "test";
  std::string eval_checkpoint;
  eval->add_option("--split", eval_split, "dev or test");
  eval->add_option("--checkpoint", eval_checkpoint, "default: best checkpoint");
  bool eval_json = false;
  eval->add_flag("--json", eval_json, "print the report as JSON");

  auto* augment =
      app.add_subcommand("augment", "value-replacement augmentation of train");
  std::string augment_out;
  augment->add_option("--out", augment_out,
                      "new corpus root (dev/ and test/ are copied)")
      ->required();

  auto* trace = app.add_subcommand("trace", "per-turn trace of one dialogue");
  std::string trace_id;
  std::string trace_split = "test";
  std::string trace_checkpoint;
  trace->add_option("--dialogue", trace_id, "dialogue id")->required();
  trace->add_option("--split", trace_split, "split holding the dialogue");
  trace->add_option("--checkpoint", trace_checkpoint,
                    "default: best checkpoint");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const pipeline::RunConfig config = resolve(g);
    if (*show) {
      std::cout << pipeline::to_json(config) << '\n';
    } else if (*synth) {
      pipeline::SynthConfig sc;
      sc.dialogues = synth_dialogues;
      sc.multi_domain_fraction = synth_multi;
      sc.seed = config.synth_seed;
      const corpus::Corpus c = pipeline::synthesize_corpus(sc);
      corpus::validate_corpus(c);
      fs::remove_all(synth_out);
      corpus::write_corpus(synth_out, c);
      std::cout << "wrote " << c.dialogues.size() << " dialogues to "
                << synth_out << '\n';
    } else if (*split) {
      const corpus::Corpus c = read_any(split_in);
      const corpus::Split s =
          corpus::resplit_sgd_plus(c.dialogues, config.split_seed);
      write_split(config.data_dir, "train", c.schemas, s.train);
      write_split(config.data_dir, "dev", c.schemas, s.dev);
      write_split(config.data_dir, "test", c.schemas, s.test);
      std::cout << "train " << s.train.size() << " dev " << s.dev.size()
                << " test " << s.test.size() << " (seed " << config.split_seed
                << ")\n";
    } else if (*memory) {
      const pipeline::MemoryBuild m = pipeline::build_memory_step(config, &std::cout);
      std::cout << "model " << m.model_hash << " vocabulary " << m.vocab_size
                << " schema vectors " << m.vectors << '\n';
    } else if (*candidates) {
      const tracker::CandidateTable t = pipeline::build_candidates_step(config);
      std::cout << t.size() << " candidate entries written to "
                << config.table_path().string() << '\n';
    } else if (*train) {
      fs::create_directories(config.work_dir);
      std::ofstream log(config.work_dir / "train_log.txt",
                        resume ? std::ios::app : std::ios::trunc);
      struct Tee : std::streambuf {
        std::streambuf* a;
        std::streambuf* b;
        int overflow(int c) override {
          if (c == EOF) return !EOF;
          a->sputc(static_cast<char>(c));
          b->sputc(static_cast<char>(c));
          return c;
        }
        int sync() override { return a->pubsync() | b->pubsync(); }
      } tee;
      tee.a = std::cout.rdbuf();
      tee.b = log.rdbuf();
      std::ostream both(&tee);
      const pipeline::TrainResult r = pipeline::train_step(config, resume, &both, train_steps);
      both << "trained steps " << r.first_step << ".." << r.last_step
           << " in " << r.seconds << "s; best dev joint goal accuracy "
           << r.best_joint_goal_accuracy << " at step " << r.best_step
           << '\n';
    } else if (*eval) {
      const metrics::EvalReport report =
          pipeline::eval_step(config, eval_split, eval_checkpoint);
      std::cout << (eval_json ? report.to_json() + "\n" : report.to_text());
    } else if (*augment) {
      const corpus::Corpus c = pipeline::load_split(config, "train");
      const corpus::SchemaIndex schemas(c.schemas);
      augment::AugmentConfig ac;
      ac.multiplier = config.augment_multiplier;
      ac.seed = config.augment_seed;
      const augment::AugmentedCorpus a = augment::augment_corpus(
          c.dialogues, schemas, augment::build_pools(c.dialogues, schemas), ac);
      std::vector<corpus::Dialogue> all = a.dialogues;
      all.insert(all.end(), a.untouched.begin(), a.untouched.end());
      corpus::validate_corpus({c.schemas, all});
      const fs::path out = augment_out;
      write_split(out, "train", c.schemas, all);
      for (const char* other : {"dev", "test"}) {
        const fs::path from = config.data_dir / other;
        if (!fs::is_directory(from)) continue;
        fs::remove_all(out / other);
        fs::copy(from, out / other, fs::copy_options::recursive);
      }
      std::ofstream manifest(out / "augment_manifest.json");
      manifest << a.manifest_json(ac) << '\n';
      std::cout << "train " << c.dialogues.size() << " -> " << all.size()
                << " dialogues (" << a.untouched.size()
                << " multi-domain untouched); " << a.log.replaced
                << " values replaced\n";
    } else if (*trace) {
      std::cout << pipeline::trace_step(config, trace_split, trace_id,
                                        trace_checkpoint);
    }
  } catch (const ConfigError& e) {
    return error_exit("config", e.what(), 2);
  } catch (const ParseError& e) {
    return error_exit("parse", e.what(), 3);
  } catch (const ValidationError& e) {
    return error_exit("validation", e.what(), 4);
  } catch (const ProvenanceError& e) {
    return error_exit("provenance", e.what(), 5);
  } catch (const std::exception& e) {
    return error_exit("error", e.what(), 1);
  }
  return 0;
}
