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

#include "schemadst/corpus/validate.h"

#include <algorithm>
#include <set>
#include <string>

#include "schemadst/common/error.h"

namespace schemadst::corpus {
namespace {

void check_unique(const std::vector<std::string>& names,
                  const std::string& what, const std::string& owner) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) {
      throw Error("duplicate " + what + " '" + n + "' in " + owner);
    }
  }
}

// Values a span for `slot` in `frame` may legitimately cover.
std::vector<std::string> span_candidates(const Frame& frame,
                                         const std::string& slot) {
  std::vector<std::string> out;
  for (const auto& a : frame.actions) {
    if (a.slot && *a.slot == slot) {
      out.insert(out.end(), a.values.begin(), a.values.end());
    }
  }
  if (frame.state) {
    auto it = frame.state->slot_values.find(slot);
    if (it != frame.state->slot_values.end()) {
      out.insert(out.end(), it->second.begin(), it->second.end());
    }
  }
  return out;
}

}  // namespace

void validate_schemas(const std::vector<ServiceSchema>& schemas) {
  std::vector<std::string> services;
  for (const auto& s : schemas) {
    if (s.service_name.empty()) throw Error("service with empty name");
    services.push_back(s.service_name);
    std::vector<std::string> intents;
    for (const auto& i : s.intents) {
      if (i.name.empty()) {
        throw Error("intent with empty name in " + s.service_name);
      }
      if (i.name == kNoneIntent) {
        throw Error("intent name NONE is reserved (" + s.service_name + ")");
      }
      intents.push_back(i.name);
    }
    check_unique(intents, "intent", s.service_name);
    std::vector<std::string> slots;
    for (const auto& sl : s.slots) {
      if (sl.name.empty()) {
        throw Error("slot with empty name in " + s.service_name);
      }
      if (sl.is_categorical == sl.possible_values.empty()) {
        throw Error("slot " + s.service_name + "." + sl.name +
                    (sl.is_categorical
                         ? " is categorical but lists no possible values"
                         : " is non-categorical but lists possible values"));
      }
      slots.push_back(sl.name);
    }
    check_unique(slots, "slot", s.service_name);
  }
  check_unique(services, "service", "corpus");
}

void validate_dialogue(const Dialogue& d, const SchemaIndex& schemas) {
  const std::string& id = d.dialogue_id;
  if (id.empty()) throw ValidationError(id, -1, "empty dialogue_id");
  for (const auto& s : d.services) {
    if (!schemas.contains(s)) {
      throw ValidationError(id, -1, "unknown service '" + s + "'");
    }
  }
  for (std::size_t t = 0; t < d.turns.size(); ++t) {
    const Turn& turn = d.turns[t];
    const int ti = static_cast<int>(t);
    if (t > 0 && d.turns[t - 1].speaker == turn.speaker) {
      throw ValidationError(id, ti, "speakers do not alternate");
    }
    if (turn.speaker == Speaker::kUser && turn.frames.empty()) {
      throw ValidationError(id, ti, "user turn without frames");
    }
    for (const Frame& f : turn.frames) {
      if (std::find(d.services.begin(), d.services.end(), f.service) ==
          d.services.end()) {
        throw ValidationError(id, ti,
                              "frame references unknown service '" +
                                  f.service + "'");
      }
      const ServiceSchema& schema = schemas.at(f.service);
      if (turn.speaker == Speaker::kUser) {
        if (!f.state) throw ValidationError(id, ti, "user frame without state");
        if (f.state->active_intent != kNoneIntent &&
            schema.intent_index(f.state->active_intent) < 0) {
          throw ValidationError(id, ti,
                                "unknown intent '" + f.state->active_intent +
                                    "' for " + f.service);
        }
        for (const auto& r : f.state->requested_slots) {
          if (schema.slot_index(r) < 0) {
            throw ValidationError(id, ti, "unknown requested slot '" + r + "'");
          }
        }
        for (const auto& [slot, values] : f.state->slot_values) {
          if (schema.slot_index(slot) < 0) {
            throw ValidationError(id, ti, "unknown slot '" + slot + "' in " +
                                              f.service + " state");
          }
          if (values.empty()) {
            throw ValidationError(id, ti, "slot '" + slot + "' has no values");
          }
        }
      }
      for (const auto& a : f.actions) {
        if (!a.values.empty() && !a.slot) {
          throw ValidationError(id, ti, "action " + a.act +
                                            " carries values without a slot");
        }
      }
      const int len = static_cast<int>(turn.utterance.size());
      for (const auto& span : f.slot_spans) {
        if (schema.slot_index(span.slot) < 0) {
          throw ValidationError(id, ti, "span for unknown slot '" + span.slot + "'");
        }
        if (span.start_char < 0 || span.end_char <= span.start_char ||
            span.end_char > len) {
          throw ValidationError(
              id, ti,
              "span [" + std::to_string(span.start_char) + ", " +
                  std::to_string(span.end_char) + ") for slot '" + span.slot +
                  "' lies outside the utterance (length " +
                  std::to_string(len) + ")");
        }
        const auto candidates = span_candidates(f, span.slot);
        const std::string text = turn.utterance.substr(
            span.start_char, span.end_char - span.start_char);
        if (!candidates.empty() &&
            std::find(candidates.begin(), candidates.end(), text) ==
                candidates.end()) {
          throw ValidationError(id, ti,
                                "span text '" + text + "' for slot '" +
                                    span.slot +
                                    "' matches no annotated value");
        }
      }
    }
  }
}

void validate_corpus(const Corpus& corpus) {
  validate_schemas(corpus.schemas);
  const SchemaIndex index(corpus.schemas);
  std::set<std::string> ids;
  for (const auto& d : corpus.dialogues) {
    if (!ids.insert(d.dialogue_id).second) {
      throw ValidationError(d.dialogue_id, -1, "duplicate dialogue_id");
    }
    validate_dialogue(d, index);
  }
}

}  // namespace schemadst::corpus
