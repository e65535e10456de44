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
#include "schemadst/pipeline/config.h"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "schemadst/common/error.h"
#include "schemadst/common/hash.h"

namespace schemadst::pipeline {

using json = nlohmann::ordered_json;

void RunConfig::validate() const {
  optimizer.validate();
  tensor::AttentionConfig{model.model_dim, model.num_heads}.validate();
  if (model.num_layers < 1 || model.ffn_dim < 1 || model.max_seq_len < 8) {
    throw ConfigError("model: layers, ffn_dim and max_seq_len must be positive"
                      " (max_seq_len >= 8)");
  }
  if (model.pretrain.steps < 0 || model.pretrain.batch_size < 1 ||
      !(model.pretrain.mask_rate > 0.0 && model.pretrain.mask_rate < 1.0) ||
      !(model.pretrain.peak_learning_rate > 0.0)) {
    throw ConfigError("pretrain: steps >= 0, batch_size >= 1, learning rate "
                      "> 0 and mask_rate in (0, 1) required");
  }
  if (training.total_steps < 1) {
    throw ConfigError("training.total_steps must be >= 1");
  }
  if (!(requested_threshold >= 0.0 && requested_threshold <= 1.0)) {
    throw ConfigError("thresholds.requested must lie in [0, 1]");
  }
  if (!(candidate_threshold >= 0.0 && candidate_threshold <= 1.0)) {
    throw ConfigError("thresholds.candidate must lie in [0, 1]");
  }
  if (augment_multiplier < 1) {
    throw ConfigError("augment.multiplier must be >= 1");
  }
}

RunConfig preset(const std::string& name) {
  RunConfig c;
  c.preset = name;
  if (name == "desk") {
    c.model = ModelConfig{};
    c.model.init_stddev = 0.1;
    c.model.pretrain.steps = 400;
    c.optimizer.peak_learning_rate = 2e-3;
    c.optimizer.warmup_fraction = 0.02;
    c.optimizer.dropout = 0.0;
    c.optimizer.batch_size = 8;
    c.training.total_steps = 3000;
    c.training.eval_every = 500;
    c.training.log_every = 100;
    c.optimizer.total_steps = c.training.total_steps;
    return c;
  }
  if (name == "paper") {
    c.model.model_dim = 768;
    c.model.num_layers = 12;
    c.model.num_heads = 16;
    c.model.ffn_dim = 3072;
    c.model.max_seq_len = 512;
    c.model.init_stddev = 0.02;
    c.model.vocab_max_words = 28996;
    c.optimizer.peak_learning_rate = 4e-4;
    c.optimizer.warmup_fraction = 0.02;
    c.optimizer.dropout = 0.2;
    c.optimizer.batch_size = 128;
    // 160 epochs of the 70% split at batch 128 x 8 workers.
    c.training.total_steps = 180000;
    c.training.eval_every = 5000;
    c.optimizer.total_steps = c.training.total_steps;
    return c;
  }
  throw ConfigError("unknown preset '" + name + "' (expected desk or paper)");
}

std::string to_json(const RunConfig& c) {
  json j;
  j["preset"] = c.preset;
  j["paths"] = {{"data", c.data_dir.string()}, {"work", c.work_dir.string()}};
  j["model"] = {{"model_dim", c.model.model_dim},
                {"num_layers", c.model.num_layers},
                {"num_heads", c.model.num_heads},
                {"ffn_dim", c.model.ffn_dim},
                {"max_seq_len", c.model.max_seq_len},
                {"init_stddev", c.model.init_stddev},
                {"vocab_max_words", c.model.vocab_max_words},
                {"init_seed", c.model.init_seed}};
  const auto& p = c.model.pretrain;
  j["pretrain"] = {{"steps", p.steps},
                   {"batch_size", p.batch_size},
                   {"peak_learning_rate", p.peak_learning_rate},
                   {"mask_rate", p.mask_rate},
                   {"seed", p.seed}};
  const auto& o = c.optimizer;
  j["optimizer"] = {{"peak_learning_rate", o.peak_learning_rate},
                    {"warmup_fraction", o.warmup_fraction},
                    {"dropout", o.dropout},
                    {"batch_size", o.batch_size},
                    {"beta1", o.beta1},
                    {"beta2", o.beta2},
                    {"epsilon", o.epsilon},
                    {"weight_decay", o.weight_decay},
                    {"clip_norm", o.clip_norm ? json(*o.clip_norm) : json()}};
  const auto& w = c.loss_weights;
  j["loss_weights"] = {{"intent", w.intent},   {"requested", w.requested},
                       {"status", w.status},   {"value", w.value},
                       {"span", w.span}};
  j["training"] = {{"total_steps", c.training.total_steps},
                   {"eval_every", c.training.eval_every},
                   {"log_every", c.training.log_every},
                   {"seed", c.training.seed}};
  j["thresholds"] = {{"requested", c.requested_threshold},
                     {"candidate", c.candidate_threshold}};
  j["seeds"] = {{"split", c.split_seed},
                {"augment", c.augment_seed},
                {"synth", c.synth_seed}};
  j["augment"] = {{"multiplier", c.augment_multiplier}};
  j["slices"] = {{"domain", c.slice_domain}, {"seen", c.slice_seen}};
  return j.dump(2);
}

namespace {

class Reader {
 public:
  Reader(const json& root, std::string source)
      : root_(root), source_(std::move(source)) {}

  template <typename T>
  void get(const char* section, const char* key, T& out) const {
    const json* node = &root_;
    std::string path = key;
    if (section != nullptr) {
      auto it = root_.find(section);
      if (it == root_.end()) return;
      node = &*it;
      path = std::string(section) + "." + key;
    }
    auto it = node->find(key);
    if (it == node->end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(source_ + ": " + path + ": " + e.what());
    }
  }

  void check_keys(const char* section,
                  std::initializer_list<const char*> allowed) const {
    const json* node = &root_;
    if (section != nullptr) {
      auto it = root_.find(section);
      if (it == root_.end()) return;
      node = &*it;
      if (!node->is_object()) {
        throw ConfigError(source_ + ": " + section + " must be an object");
      }
    }
    for (const auto& [key, value] : node->items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) {
        throw ConfigError(source_ + ": unknown key '" +
                          (section ? std::string(section) + "." : "") + key +
                          "'");
      }
    }
  }

 private:
  const json& root_;
  std::string source_;
};

}  // namespace

RunConfig config_from_json(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(source + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(source + ": expected a JSON object");
  Reader r(j, source);
  r.check_keys(nullptr, {"preset", "paths", "model", "optimizer",
                         "loss_weights", "training", "thresholds", "seeds", "pretrain",
                         "augment", "slices"});
  std::string name = "desk";
  r.get(nullptr, "preset", name);
  RunConfig c = preset(name);

  r.check_keys("paths", {"data", "work"});
  std::string path;
  path = c.data_dir.string();
  r.get("paths", "data", path);
  c.data_dir = path;
  path = c.work_dir.string();
  r.get("paths", "work", path);
  c.work_dir = path;

  r.check_keys("model", {"model_dim", "num_layers", "num_heads", "ffn_dim",
                         "max_seq_len", "init_stddev", "vocab_max_words",
                         "init_seed"});
  r.get("model", "model_dim", c.model.model_dim);
  r.get("model", "num_layers", c.model.num_layers);
  r.get("model", "num_heads", c.model.num_heads);
  r.get("model", "ffn_dim", c.model.ffn_dim);
  r.get("model", "max_seq_len", c.model.max_seq_len);
  r.get("model", "init_stddev", c.model.init_stddev);
  r.get("model", "vocab_max_words", c.model.vocab_max_words);
  r.get("model", "init_seed", c.model.init_seed);

  auto& p = c.model.pretrain;
  r.check_keys("pretrain",
               {"steps", "batch_size", "peak_learning_rate", "mask_rate", "seed"});
  r.get("pretrain", "steps", p.steps);
  r.get("pretrain", "batch_size", p.batch_size);
  r.get("pretrain", "peak_learning_rate", p.peak_learning_rate);
  r.get("pretrain", "mask_rate", p.mask_rate);
  r.get("pretrain", "seed", p.seed);

  auto& o = c.optimizer;
  r.check_keys("optimizer", {"peak_learning_rate", "warmup_fraction",
                             "dropout", "batch_size", "beta1", "beta2",
                             "epsilon", "weight_decay", "clip_norm"});
  r.get("optimizer", "peak_learning_rate", o.peak_learning_rate);
  r.get("optimizer", "warmup_fraction", o.warmup_fraction);
  r.get("optimizer", "dropout", o.dropout);
  r.get("optimizer", "batch_size", o.batch_size);
  r.get("optimizer", "beta1", o.beta1);
  r.get("optimizer", "beta2", o.beta2);
  r.get("optimizer", "epsilon", o.epsilon);
  r.get("optimizer", "weight_decay", o.weight_decay);
  if (j.contains("optimizer") && j["optimizer"].contains("clip_norm")) {
    const json& v = j["optimizer"]["clip_norm"];
    if (v.is_null()) {
      o.clip_norm.reset();
    } else if (v.is_number()) {
      o.clip_norm = v.get<double>();
    } else {
      throw ConfigError(source + ": optimizer.clip_norm must be a number or "
                                 "null");
    }
  }

  r.check_keys("loss_weights",
               {"intent", "requested", "status", "value", "span"});
  r.get("loss_weights", "intent", c.loss_weights.intent);
  r.get("loss_weights", "requested", c.loss_weights.requested);
  r.get("loss_weights", "status", c.loss_weights.status);
  r.get("loss_weights", "value", c.loss_weights.value);
  r.get("loss_weights", "span", c.loss_weights.span);

  r.check_keys("training", {"total_steps", "eval_every", "log_every", "seed"});
  r.get("training", "total_steps", c.training.total_steps);
  r.get("training", "eval_every", c.training.eval_every);
  r.get("training", "log_every", c.training.log_every);
  r.get("training", "seed", c.training.seed);
  o.total_steps = c.training.total_steps;

  r.check_keys("thresholds", {"requested", "candidate"});
  r.get("thresholds", "requested", c.requested_threshold);
  r.get("thresholds", "candidate", c.candidate_threshold);

  r.check_keys("seeds", {"split", "augment", "synth"});
  r.get("seeds", "split", c.split_seed);
  r.get("seeds", "augment", c.augment_seed);
  r.get("seeds", "synth", c.synth_seed);

  r.check_keys("augment", {"multiplier"});
  r.get("augment", "multiplier", c.augment_multiplier);

  r.check_keys("slices", {"domain", "seen"});
  r.get("slices", "domain", c.slice_domain);
  r.get("slices", "seen", c.slice_seen);

  c.validate();
  return c;
}

RunConfig apply_overrides(const RunConfig& config,
                          const std::vector<std::string>& assignments) {
  if (assignments.empty()) return config;
  json j = json::parse(to_json(config));
  for (const std::string& a : assignments) {
    const std::size_t eq = a.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("override '" + a + "': expected key=value");
    }
    const std::string key = a.substr(0, eq);
    const std::string text = a.substr(eq + 1);
    json value;
    try {
      value = json::parse(text);
    } catch (const json::exception&) {
      value = text;
    }
    json* node = &j;
    std::size_t start = 0;
    for (;;) {
      const std::size_t dot = key.find('.', start);
      const std::string part = key.substr(start, dot - start);
      if (part.empty()) throw ConfigError("override '" + a + "': empty key");
      if (dot == std::string::npos) {
        (*node)[part] = value;
        break;
      }
      node = &(*node)[part];
      if (!node->is_object()) {
        throw ConfigError("override '" + a + "': " + part +
                          " is not a section");
      }
      start = dot + 1;
    }
  }
  return config_from_json(j.dump(), "override");
}

RunConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str(), file.string());
}

void save_config(const std::filesystem::path& file, const RunConfig& config) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write " + file.string());
  out << to_json(config) << '\n';
}

std::string model_hash(const ModelConfig& m, const encoder::Vocabulary& vocab) {
  Fnv1a h;
  h.update("schemadst-model-v1");
  for (long v : {long{m.model_dim}, long{m.num_layers}, long{m.num_heads},
                 long{m.ffn_dim}, long{m.max_seq_len}}) {
    h.update_u64(static_cast<std::uint64_t>(v));
  }
  h.update(&m.init_stddev, sizeof(m.init_stddev));
  h.update_u64(m.init_seed);
  h.update_u64(static_cast<std::uint64_t>(m.pretrain.steps));
  h.update_u64(static_cast<std::uint64_t>(m.pretrain.batch_size));
  h.update(&m.pretrain.peak_learning_rate, sizeof(double));
  h.update(&m.pretrain.mask_rate, sizeof(double));
  h.update_u64(m.pretrain.seed);
  h.update_u64(vocab.fingerprint());
  return hex64(h.digest());
}

}  // namespace schemadst::pipeline
