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

#include "schemadst/corpus/sgd_io.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "schemadst/common/error.h"
#include "schemadst/corpus/validate.h"

namespace schemadst::corpus {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Typed access to a JSON node that reports the full field path on failure.
class Field {
 public:
  Field(const json& node, std::string path, const std::string& file)
      : node_(node), path_(std::move(path)), file_(file) {}

  Field operator[](const char* key) const {
    if (!node_.is_object()) fail("expected an object");
    auto it = node_.find(key);
    if (it == node_.end()) {
      throw ParseError(file_, path_ + "." + key, "missing field");
    }
    return Field(*it, path_ + "." + key, file_);
  }
  Field operator[](std::size_t i) const {
    return Field(node_.at(i), path_ + "[" + std::to_string(i) + "]", file_);
  }
  bool has(const char* key) const {
    return node_.is_object() && node_.contains(key);
  }
  std::size_t size() const {
    if (!node_.is_array()) fail("expected an array");
    return node_.size();
  }
  std::string str() const {
    if (!node_.is_string()) fail("expected a string");
    return node_.get<std::string>();
  }
  bool boolean() const {
    if (!node_.is_boolean()) fail("expected a boolean");
    return node_.get<bool>();
  }
  int integer() const {
    if (!node_.is_number_integer()) fail("expected an integer");
    return node_.get<int>();
  }
  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].str());
    return out;
  }
  const json& raw() const { return node_; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(file_, path_, what);
  }

 private:
  const json& node_;
  std::string path_;
  const std::string& file_;
};

json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, "<document>", e.what());
  }
}

std::string read_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ParseError(file.string(), "<file>", "cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& file, const std::string& text) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write " + file.string());
  out << text;
}

DialogueState parse_state(const Field& f) {
  DialogueState s;
  s.active_intent = f["active_intent"].str();
  if (s.active_intent.empty()) s.active_intent = std::string(kNoneIntent);
  for (auto& r : f["requested_slots"].strings()) s.requested_slots.insert(r);
  const Field values = f["slot_values"];
  if (!values.raw().is_object()) values.fail("expected an object");
  for (auto it = values.raw().begin(); it != values.raw().end(); ++it) {
    s.slot_values[it.key()] = values[it.key().c_str()].strings();
  }
  return s;
}

Frame parse_frame(const Field& f, Speaker speaker) {
  Frame frame;
  frame.service = f["service"].str();
  if (f.has("actions")) {
    const Field actions = f["actions"];
    for (std::size_t i = 0; i < actions.size(); ++i) {
      const Field a = actions[i];
      SystemAction act;
      act.act = a["act"].str();
      if (a.has("slot")) {
        std::string slot = a["slot"].str();
        if (!slot.empty()) act.slot = std::move(slot);
      }
      if (a.has("values")) act.values = a["values"].strings();
      frame.actions.push_back(std::move(act));
    }
  }
  if (f.has("slots")) {
    const Field spans = f["slots"];
    for (std::size_t i = 0; i < spans.size(); ++i) {
      const Field s = spans[i];
      frame.slot_spans.push_back(
          {s["slot"].str(), s["start"].integer(), s["exclusive_end"].integer()});
    }
  }
  if (speaker == Speaker::kUser || f.has("state")) {
    frame.state = parse_state(f["state"]);
  }
  return frame;
}

json state_to_json(const DialogueState& s) {
  json values = json::object();
  for (const auto& [slot, v] : s.slot_values) values[slot] = v;
  return {{"active_intent", s.active_intent},
          {"requested_slots",
           std::vector<std::string>(s.requested_slots.begin(),
                                    s.requested_slots.end())},
          {"slot_values", values}};
}

json frame_to_json(const Frame& f) {
  json actions = json::array();
  for (const auto& a : f.actions) {
    actions.push_back({{"act", a.act},
                       {"slot", a.slot.value_or("")},
                       {"values", a.values}});
  }
  json spans = json::array();
  for (const auto& s : f.slot_spans) {
    spans.push_back(
        {{"slot", s.slot}, {"start", s.start_char}, {"exclusive_end", s.end_char}});
  }
  json out = {{"service", f.service}, {"actions", actions}, {"slots", spans}};
  if (f.state) out["state"] = state_to_json(*f.state);
  return out;
}

}  // namespace

std::vector<ServiceSchema> schemas_from_json(const std::string& text,
                                             const std::string& source) {
  const json doc = parse_text(text, source);
  const Field root(doc, "$", source);
  std::vector<ServiceSchema> out;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const Field s = root[i];
    ServiceSchema schema;
    schema.service_name = s["service_name"].str();
    schema.description = s["description"].str();
    const Field slots = s["slots"];
    for (std::size_t j = 0; j < slots.size(); ++j) {
      const Field sl = slots[j];
      SlotSpec slot;
      slot.name = sl["name"].str();
      slot.description = sl["description"].str();
      slot.is_categorical = sl["is_categorical"].boolean();
      slot.possible_values = sl["possible_values"].strings();
      schema.slots.push_back(std::move(slot));
    }
    const Field intents = s["intents"];
    for (std::size_t j = 0; j < intents.size(); ++j) {
      const Field in = intents[j];
      IntentSpec intent;
      intent.name = in["name"].str();
      intent.description = in["description"].str();
      if (in.has("is_transactional")) {
        intent.is_transactional = in["is_transactional"].boolean();
      }
      if (in.has("required_slots")) {
        intent.required_slots = in["required_slots"].strings();
      }
      if (in.has("result_slots")) {
        intent.result_slots = in["result_slots"].strings();
      }
      if (in.has("optional_slots")) {
        const Field opt = in["optional_slots"];
        if (!opt.raw().is_object()) opt.fail("expected an object");
        for (auto it = opt.raw().begin(); it != opt.raw().end(); ++it) {
          intent.optional_slots[it.key()] = opt[it.key().c_str()].str();
        }
      }
      schema.intents.push_back(std::move(intent));
    }
    out.push_back(std::move(schema));
  }
  return out;
}

std::vector<Dialogue> dialogues_from_json(const std::string& text,
                                          const std::string& source) {
  const json doc = parse_text(text, source);
  const Field root(doc, "$", source);
  std::vector<Dialogue> out;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const Field d = root[i];
    Dialogue dialogue;
    dialogue.dialogue_id = d["dialogue_id"].str();
    dialogue.services = d["services"].strings();
    const Field turns = d["turns"];
    for (std::size_t t = 0; t < turns.size(); ++t) {
      const Field tf = turns[t];
      Turn turn;
      const std::string speaker = tf["speaker"].str();
      if (speaker == "USER") {
        turn.speaker = Speaker::kUser;
      } else if (speaker == "SYSTEM") {
        turn.speaker = Speaker::kSystem;
      } else {
        tf["speaker"].fail("expected USER or SYSTEM, got '" + speaker + "'");
      }
      turn.utterance = tf["utterance"].str();
      const Field frames = tf["frames"];
      for (std::size_t k = 0; k < frames.size(); ++k) {
        turn.frames.push_back(parse_frame(frames[k], turn.speaker));
      }
      dialogue.turns.push_back(std::move(turn));
    }
    out.push_back(std::move(dialogue));
  }
  return out;
}

std::string schemas_to_json(const std::vector<ServiceSchema>& schemas) {
  json out = json::array();
  for (const auto& s : schemas) {
    json slots = json::array();
    for (const auto& sl : s.slots) {
      slots.push_back({{"name", sl.name},
                       {"description", sl.description},
                       {"is_categorical", sl.is_categorical},
                       {"possible_values", sl.possible_values}});
    }
    json intents = json::array();
    for (const auto& in : s.intents) {
      json optional = json::object();
      for (const auto& [k, v] : in.optional_slots) optional[k] = v;
      intents.push_back({{"name", in.name},
                         {"description", in.description},
                         {"is_transactional", in.is_transactional},
                         {"required_slots", in.required_slots},
                         {"optional_slots", optional},
                         {"result_slots", in.result_slots}});
    }
    out.push_back({{"service_name", s.service_name},
                   {"description", s.description},
                   {"slots", slots},
                   {"intents", intents}});
  }
  return out.dump(2);
}

std::string dialogues_to_json(const std::vector<Dialogue>& dialogues) {
  json out = json::array();
  for (const auto& d : dialogues) {
    json turns = json::array();
    for (const auto& t : d.turns) {
      json frames = json::array();
      for (const auto& f : t.frames) frames.push_back(frame_to_json(f));
      turns.push_back(
          {{"speaker", t.speaker == Speaker::kUser ? "USER" : "SYSTEM"},
           {"utterance", t.utterance},
           {"frames", frames}});
    }
    out.push_back({{"dialogue_id", d.dialogue_id},
                   {"services", d.services},
                   {"turns", turns}});
  }
  return out.dump(2);
}

std::vector<ServiceSchema> read_schemas(const fs::path& file) {
  return schemas_from_json(read_file(file), file.string());
}

std::vector<Dialogue> read_dialogues(const fs::path& file) {
  return dialogues_from_json(read_file(file), file.string());
}

void write_schemas(const fs::path& file,
                   const std::vector<ServiceSchema>& schemas) {
  write_file(file, schemas_to_json(schemas));
}

void write_dialogues(const fs::path& file,
                     const std::vector<Dialogue>& dialogues) {
  write_file(file, dialogues_to_json(dialogues));
}

Corpus parse_corpus(const fs::path& root) {
  if (!fs::is_directory(root)) {
    throw ParseError(root.string(), "<directory>", "not a directory");
  }
  Corpus corpus;
  corpus.schemas = read_schemas(root / "schema.json");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(root)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.starts_with("dialogues_") &&
        name.ends_with(".json")) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    auto part = read_dialogues(f);
    std::move(part.begin(), part.end(), std::back_inserter(corpus.dialogues));
  }
  validate_corpus(corpus);
  return corpus;
}

void write_corpus(const fs::path& root, const Corpus& corpus,
                  std::size_t per_file) {
  fs::create_directories(root);
  write_schemas(root / "schema.json", corpus.schemas);
  if (per_file == 0) per_file = corpus.dialogues.size() + 1;
  std::size_t file_no = 1;
  for (std::size_t i = 0; i < corpus.dialogues.size() || file_no == 1;
       i += per_file, ++file_no) {
    const std::size_t end = std::min(corpus.dialogues.size(), i + per_file);
    std::vector<Dialogue> chunk(corpus.dialogues.begin() + i,
                                corpus.dialogues.begin() + end);
    char name[32];
    std::snprintf(name, sizeof(name), "dialogues_%03zu.json", file_no);
    write_dialogues(root / name, chunk);
    if (end == corpus.dialogues.size()) break;
  }
}

}  // namespace schemadst::corpus
