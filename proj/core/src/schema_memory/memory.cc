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
#include "schemadst/schema_memory/memory.h"

#include <nlohmann/json.hpp>

#include "schemadst/common/error.h"
#include "schemadst/common/hash.h"
#include "schemadst/tensor/archive.h"

namespace schemadst::schema_memory {

using corpus::ServiceSchema;
using json = nlohmann::json;

Matrix ServiceEmbeddings::slots_in_schema_order(
    const ServiceSchema& schema) const {
  const int q = static_cast<int>(
      categorical_slots.rows() > 0 ? categorical_slots.cols()
                                   : noncategorical_slots.cols());
  Matrix out(static_cast<int>(schema.slots.size()), q);
  int c = 0;
  int n = 0;
  for (std::size_t i = 0; i < schema.slots.size(); ++i) {
    out.row(static_cast<int>(i)) = schema.slots[i].is_categorical
                                       ? categorical_slots.row(c++)
                                       : noncategorical_slots.row(n++);
  }
  return out;
}

std::size_t ServiceEmbeddings::vector_count() const {
  std::size_t n = intents.rows() + categorical_slots.rows() +
                  noncategorical_slots.rows();
  for (const Matrix& v : categorical_values) n += v.rows();
  return n;
}

void SchemaEmbeddingMemory::insert(const std::string& service,
                                   ServiceEmbeddings embeddings) {
  services_.insert_or_assign(service, std::move(embeddings));
}

const ServiceEmbeddings* SchemaEmbeddingMemory::find(
    std::string_view service) const {
  auto it = services_.find(service);
  return it == services_.end() ? nullptr : &it->second;
}

const ServiceEmbeddings& SchemaEmbeddingMemory::at(
    std::string_view service) const {
  const ServiceEmbeddings* e = find(service);
  if (e == nullptr) {
    throw Error("schema memory has no entry for service '" +
                std::string(service) + "'");
  }
  return *e;
}

void SchemaEmbeddingMemory::check_against(const ServiceSchema& schema) const {
  const ServiceEmbeddings& e = at(schema.service_name);
  auto fail = [&](const std::string& what) {
    throw ProvenanceError("schema memory for service '" +
                          schema.service_name + "' " + what +
                          "; rebuild the memory for this schema");
  };
  std::vector<std::string> intents;
  for (const auto& i : schema.intents) intents.push_back(i.name);
  if (intents != e.intent_names) fail("lists different intents");
  std::vector<std::string> cat, noncat;
  std::vector<std::vector<std::string>> values;
  for (const auto& s : schema.slots) {
    if (s.is_categorical) {
      cat.push_back(s.name);
      values.push_back(s.possible_values);
    } else {
      noncat.push_back(s.name);
    }
  }
  if (cat != e.categorical_slot_names || noncat != e.noncategorical_slot_names)
    fail("lists different slots");
  if (values != e.value_names) fail("lists different categorical values");
}

std::uint64_t SchemaEmbeddingMemory::checksum() const {
  Fnv1a h;
  auto add = [&](const Matrix& m) {
    h.update_u64(m.rows()).update_u64(m.cols());
    h.update(m.data(), sizeof(double) * m.size());
  };
  for (const auto& [service, e] : services_) {
    h.update(service).update("\x1f");
    add(e.intents);
    add(e.categorical_slots);
    add(e.noncategorical_slots);
    for (const Matrix& v : e.categorical_values) add(v);
    for (const auto& n : e.intent_names) h.update(n).update("\x1f");
    for (const auto& n : e.categorical_slot_names) h.update(n).update("\x1f");
    for (const auto& n : e.noncategorical_slot_names) h.update(n).update("\x1f");
    for (const auto& vs : e.value_names)
      for (const auto& n : vs) h.update(n).update("\x1f");
  }
  return h.digest();
}

namespace {

class PairEncoder {
 public:
  PairEncoder(const encoder::Tokenizer& tokenizer,
              const encoder::TransformerEncoder& encoder)
      : tokenizer_(tokenizer), encoder_(encoder) {}

  Eigen::RowVectorXd operator()(const std::string& first,
                                const std::string& second) {
    auto key = first + '\x1e' + second;
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const encoder::PairInput input = encoder::build_pair_input(
        tokenizer_, first, second, encoder_.config().max_seq_len);
    const encoder::EncodedTurn enc = encoder::encode_turn(encoder_, input);
    Eigen::RowVectorXd cls = enc.y_cls.row(0);
    cache_.emplace(std::move(key), cls);
    return cls;
  }

 private:
  const encoder::Tokenizer& tokenizer_;
  const encoder::TransformerEncoder& encoder_;
  std::map<std::string, Eigen::RowVectorXd> cache_;
};

void require_text(const std::string& text, const std::string& entity) {
  if (text.empty()) throw Error(entity + " has no description");
}

}  // namespace

SchemaEmbeddingMemory build_memory(const std::vector<ServiceSchema>& schemas,
                                   const encoder::Tokenizer& tokenizer,
                                   const encoder::TransformerEncoder& encoder,
                                   std::string config_hash) {
  const int q = encoder.config().model_dim;
  SchemaEmbeddingMemory memory(std::move(config_hash), q);
  PairEncoder encode(tokenizer, encoder);
  for (const ServiceSchema& schema : schemas) {
    const std::string svc = "service '" + schema.service_name + "'";
    require_text(schema.description, svc);
    ServiceEmbeddings e;
    e.intents.resize(static_cast<int>(schema.intents.size()), q);
    for (std::size_t i = 0; i < schema.intents.size(); ++i) {
      const auto& intent = schema.intents[i];
      require_text(intent.description,
                   "intent '" + intent.name + "' of " + svc);
      e.intents.row(static_cast<int>(i)) =
          encode(schema.description, intent.description);
      e.intent_names.push_back(intent.name);
    }
    const auto cat = schema.categorical_slots();
    const auto noncat = schema.noncategorical_slots();
    e.categorical_slots.resize(static_cast<int>(cat.size()), q);
    e.noncategorical_slots.resize(static_cast<int>(noncat.size()), q);
    for (std::size_t k = 0; k < cat.size(); ++k) {
      const auto& slot = schema.slots[cat[k]];
      const std::string entity = "slot '" + slot.name + "' of " + svc;
      require_text(slot.description, entity);
      e.categorical_slots.row(static_cast<int>(k)) =
          encode(schema.description, slot.description);
      e.categorical_slot_names.push_back(slot.name);
      Matrix values(static_cast<int>(slot.possible_values.size()), q);
      for (std::size_t v = 0; v < slot.possible_values.size(); ++v) {
        require_text(slot.possible_values[v],
                     "value " + std::to_string(v) + " of " + entity);
        values.row(static_cast<int>(v)) =
            encode(slot.description, slot.possible_values[v]);
      }
      e.categorical_values.push_back(std::move(values));
      e.value_names.push_back(slot.possible_values);
    }
    for (std::size_t k = 0; k < noncat.size(); ++k) {
      const auto& slot = schema.slots[noncat[k]];
      require_text(slot.description, "slot '" + slot.name + "' of " + svc);
      e.noncategorical_slots.row(static_cast<int>(k)) =
          encode(schema.description, slot.description);
      e.noncategorical_slot_names.push_back(slot.name);
    }
    memory.insert(schema.service_name, std::move(e));
  }
  return memory;
}

void save_memory(const std::filesystem::path& file,
                 const SchemaEmbeddingMemory& memory) {
  tensor::TensorArchive archive;
  json manifest;
  manifest["kind"] = "schema_memory";
  manifest["config_hash"] = memory.config_hash();
  manifest["dim"] = memory.dim();
  manifest["services"] = json::object();
  for (const auto& [service, e] : memory.services()) {
    json entry;
    entry["intents"] = e.intent_names;
    entry["categorical_slots"] = e.categorical_slot_names;
    entry["noncategorical_slots"] = e.noncategorical_slot_names;
    entry["values"] = e.value_names;
    manifest["services"][service] = std::move(entry);
    archive.tensors.push_back({service + "/intents", e.intents});
    archive.tensors.push_back({service + "/categorical_slots",
                               e.categorical_slots});
    archive.tensors.push_back({service + "/noncategorical_slots",
                               e.noncategorical_slots});
    for (std::size_t k = 0; k < e.categorical_values.size(); ++k) {
      archive.tensors.push_back(
          {service + "/values/" + e.categorical_slot_names[k],
           e.categorical_values[k]});
    }
  }
  archive.metadata = manifest.dump();
  tensor::write_archive(file, archive);
}

SchemaEmbeddingMemory load_memory(const std::filesystem::path& file,
                                  std::string_view expected_hash) {
  const std::string source = file.string();
  const tensor::TensorArchive archive = tensor::read_archive(file);
  json manifest;
  try {
    manifest = json::parse(archive.metadata);
  } catch (const json::exception& e) {
    throw ParseError(source, "metadata", e.what());
  }
  if (!manifest.is_object() || manifest.value("kind", "") != "schema_memory") {
    throw ParseError(source, "metadata.kind", "not a schema memory file");
  }
  SchemaEmbeddingMemory memory;
  try {
    memory = SchemaEmbeddingMemory(manifest.at("config_hash").get<std::string>(),
                                   manifest.at("dim").get<int>());
  } catch (const json::exception& e) {
    throw ParseError(source, "metadata", e.what());
  }
  if (!expected_hash.empty() && memory.config_hash() != expected_hash) {
    throw ProvenanceError(
        "schema memory " + source + " was built for configuration " +
        memory.config_hash() + " but the model expects " +
        std::string(expected_hash) +
        "; rebuild it with the same encoder settings and seed");
  }
  auto tensor = [&](const std::string& name, int rows) {
    const Matrix* m = archive.find(name);
    if (m == nullptr) throw ParseError(source, name, "tensor missing");
    if (m->rows() != rows || (rows > 0 && m->cols() != memory.dim())) {
      throw ParseError(source, name, "shape disagrees with manifest");
    }
    return *m;
  };
  try {
    for (const auto& [service, entry] : manifest.at("services").items()) {
      ServiceEmbeddings e;
      e.intent_names = entry.at("intents").get<std::vector<std::string>>();
      e.categorical_slot_names =
          entry.at("categorical_slots").get<std::vector<std::string>>();
      e.noncategorical_slot_names =
          entry.at("noncategorical_slots").get<std::vector<std::string>>();
      e.value_names =
          entry.at("values").get<std::vector<std::vector<std::string>>>();
      if (e.value_names.size() != e.categorical_slot_names.size()) {
        throw ParseError(source, "services." + service + ".values",
                         "one value list per categorical slot expected");
      }
      e.intents = tensor(service + "/intents",
                         static_cast<int>(e.intent_names.size()));
      e.categorical_slots =
          tensor(service + "/categorical_slots",
                 static_cast<int>(e.categorical_slot_names.size()));
      e.noncategorical_slots =
          tensor(service + "/noncategorical_slots",
                 static_cast<int>(e.noncategorical_slot_names.size()));
      for (std::size_t k = 0; k < e.value_names.size(); ++k) {
        e.categorical_values.push_back(
            tensor(service + "/values/" + e.categorical_slot_names[k],
                   static_cast<int>(e.value_names[k].size())));
      }
      memory.insert(service, std::move(e));
    }
  } catch (const json::exception& e) {
    throw ParseError(source, "metadata.services", e.what());
  }
  return memory;
}

}  // namespace schemadst::schema_memory
