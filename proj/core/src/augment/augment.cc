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
#include "schemadst/augment/augment.h"

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "schemadst/common/error.h"
#include "schemadst/common/hash.h"
#include "schemadst/common/random.h"
#include "schemadst/corpus/validate.h"

namespace schemadst::augment {

using corpus::Dialogue;
using corpus::ServiceSchema;

namespace {

void for_each_slot_value(
    const Dialogue& d,
    const std::function<void(const std::string& service,
                             const std::string& slot,
                             const std::string& value)>& fn) {
  for (const corpus::Turn& t : d.turns) {
    for (const corpus::Frame& f : t.frames) {
      if (f.state) {
        for (const auto& [slot, values] : f.state->slot_values) {
          for (const auto& v : values) fn(f.service, slot, v);
        }
      }
      for (const corpus::SystemAction& a : f.actions) {
        if (!a.slot) continue;
        for (const auto& v : a.values) fn(f.service, *a.slot, v);
      }
    }
  }
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

// Case-insensitive occurrences, word-bounded or not.
std::vector<std::size_t> raw_occurrences(std::string_view text,
                                         std::string_view needle) {
  std::vector<std::size_t> out;
  const std::string t = lower(text);
  const std::string n = lower(needle);
  for (std::size_t p = t.find(n); p != std::string::npos; p = t.find(n, p + 1)) {
    out.push_back(p);
  }
  return out;
}

std::vector<std::size_t> word_occurrences(std::string_view text,
                                          std::string_view needle) {
  std::vector<std::size_t> out;
  for (std::size_t p = corpus::find_word(text, needle); p != std::string::npos;
       p = corpus::find_word(text, needle, p + needle.size())) {
    out.push_back(p);
  }
  return out;
}

bool overlaps(std::string_view a, std::string_view b) {
  const std::string la = lower(a);
  const std::string lb = lower(b);
  return la.find(lb) != std::string::npos || lb.find(la) != std::string::npos;
}

bool same_value(std::string_view a, std::string_view b) {
  return corpus::normalize_text(a) == corpus::normalize_text(b);
}

// Returns false when a span boundary falls strictly inside an occurrence.
bool rewrite_turn(corpus::Turn& turn, const std::string& slot,
                  const std::string& from, const std::string& to) {
  const auto occ = word_occurrences(turn.utterance, from);
  const long delta = static_cast<long>(to.size()) - static_cast<long>(from.size());
  auto map_offset = [&](int x, bool& ok) {
    long shift = 0;
    for (std::size_t p : occ) {
      const std::size_t end = p + from.size();
      if (static_cast<std::size_t>(x) >= end) {
        shift += delta;
      } else if (static_cast<std::size_t>(x) > p) {
        ok = false;
      }
    }
    return static_cast<int>(x + shift);
  };
  bool ok = true;
  for (corpus::Frame& f : turn.frames) {
    for (corpus::SlotSpan& s : f.slot_spans) {
      s.start_char = map_offset(s.start_char, ok);
      s.end_char = map_offset(s.end_char, ok);
    }
    if (f.state) {
      auto it = f.state->slot_values.find(slot);
      if (it != f.state->slot_values.end()) {
        for (auto& v : it->second) {
          if (same_value(v, from)) v = to;
        }
      }
    }
    for (corpus::SystemAction& a : f.actions) {
      if (!a.slot || *a.slot != slot) continue;
      for (auto& v : a.values) {
        if (same_value(v, from)) v = to;
      }
    }
  }
  std::string text;
  std::size_t cursor = 0;
  for (std::size_t p : occ) {
    text.append(turn.utterance, cursor, p - cursor);
    text += to;
    cursor = p + from.size();
  }
  text.append(turn.utterance, cursor, std::string::npos);
  turn.utterance = std::move(text);
  return ok;
}

}  // namespace

ValuePools build_pools(const std::vector<Dialogue>& dialogues,
                       const corpus::SchemaIndex& schemas) {
  std::map<std::pair<std::string, std::string>, std::set<std::string>> sets;
  for (const Dialogue& d : dialogues) {
    for_each_slot_value(d, [&](const std::string& service,
                               const std::string& slot,
                               const std::string& value) {
      const ServiceSchema* schema = schemas.find(service);
      if (schema == nullptr) return;
      const corpus::SlotSpec* spec = schema->find_slot(slot);
      if (spec == nullptr || spec->is_categorical) return;
      if (value.empty() || corpus::is_dont_care(value)) return;
      sets[{service, slot}].insert(value);
    });
  }
  ValuePools pools;
  for (auto& [key, values] : sets) {
    pools[key] = std::vector<std::string>(values.begin(), values.end());
  }
  return pools;
}

void AugmentLog::skip(const std::string& reason, const std::string& message) {
  ++skipped[reason];
  messages.push_back(message);
}

AugmentLog& AugmentLog::operator+=(const AugmentLog& o) {
  replaced += o.replaced;
  for (const auto& [k, v] : o.skipped) skipped[k] += v;
  messages.insert(messages.end(), o.messages.begin(), o.messages.end());
  return *this;
}

Dialogue augment_dialogue(const Dialogue& dialogue,
                          const corpus::SchemaIndex& schemas,
                          const ValuePools& pools, std::uint64_t seed,
                          int copy_index, AugmentLog* log) {
  if (!dialogue.single_domain()) {
    throw Error("augmentation needs a single-domain dialogue; " +
                dialogue.dialogue_id + " spans " +
                std::to_string(dialogue.services.size()) + " services");
  }
  AugmentLog local;
  AugmentLog& out_log = log != nullptr ? *log : local;
  const ServiceSchema& schema = schemas.at(dialogue.services.front());
  Dialogue out = dialogue;
  out.dialogue_id = dialogue.dialogue_id + "_aug" + std::to_string(copy_index);
  std::mt19937_64 rng(Fnv1a()
                          .update(dialogue.dialogue_id)
                          .update_u64(seed)
                          .update_u64(static_cast<std::uint64_t>(copy_index))
                          .digest());

  // Which slots each value string is annotated for, in first-seen order.
  std::vector<std::pair<std::string, std::string>> order;  // (slot, value)
  std::map<std::string, std::set<std::string>> slots_of;   // norm -> slots
  for_each_slot_value(dialogue, [&](const std::string&, const std::string& slot,
                                    const std::string& value) {
    if (value.empty() || corpus::is_dont_care(value)) return;
    auto& s = slots_of[corpus::normalize_text(value)];
    if (s.insert(slot).second) order.push_back({slot, value});
  });
  std::vector<std::string> categorical_values;
  for (const auto& slot : schema.slots) {
    if (!slot.is_categorical) continue;
    categorical_values.insert(categorical_values.end(),
                              slot.possible_values.begin(),
                              slot.possible_values.end());
  }
  auto mentions_categorical = [&](std::string_view text) {
    return std::any_of(categorical_values.begin(), categorical_values.end(),
                       [&](const std::string& c) {
                         return corpus::contains_word(text, c);
                       });
  };

  std::vector<std::string> current_values;  // every value in `out`
  for (const auto& [slot, value] : order) current_values.push_back(value);

  for (const auto& [slot, value] : order) {
    const corpus::SlotSpec* spec = schema.find_slot(slot);
    if (spec == nullptr || spec->is_categorical) continue;
    const std::string where =
        dialogue.dialogue_id + " " + slot + "='" + value + "': ";
    auto pool_it = pools.find({schema.service_name, slot});
    if (pool_it == pools.end() || pool_it->second.empty()) {
      out_log.skip("empty_pool", where + "no pool for this slot");
      continue;
    }
    if (slots_of[corpus::normalize_text(value)].size() > 1) {
      out_log.skip("shared_value", where + "value shared with another slot");
      continue;
    }
    if (mentions_categorical(value) ||
        std::any_of(categorical_values.begin(), categorical_values.end(),
                    [&](const std::string& c) { return same_value(c, value); })) {
      out_log.skip("categorical_collision",
                   where + "value collides with a categorical value");
      continue;
    }
    bool inside_word = false;
    for (const corpus::Turn& t : out.turns) {
      if (raw_occurrences(t.utterance, value).size() !=
          word_occurrences(t.utterance, value).size()) {
        inside_word = true;
      }
    }
    if (inside_word) {
      out_log.skip("substring", where + "value occurs inside another word");
      continue;
    }
    bool nested = false;
    for (const std::string& other : current_values) {
      if (!same_value(other, value) && overlaps(other, value)) nested = true;
    }
    if (nested) {
      out_log.skip("nested_value", where + "value overlaps another value");
      continue;
    }

    std::vector<std::string> choices;
    for (const std::string& r : pool_it->second) {
      if (same_value(r, value) || mentions_categorical(r)) continue;
      bool clash = false;
      for (const std::string& other : current_values) {
        if (overlaps(other, r)) clash = true;
      }
      for (const corpus::Turn& t : out.turns) {
        if (!raw_occurrences(t.utterance, r).empty()) clash = true;
      }
      if (!clash) choices.push_back(r);
    }
    if (choices.empty()) {
      out_log.skip("no_replacement", where + "no eligible replacement");
      continue;
    }
    const std::string& replacement =
        choices[uniform_below(rng, choices.size())];

    Dialogue next = out;
    bool ok = true;
    for (corpus::Turn& t : next.turns) {
      ok = rewrite_turn(t, slot, value, replacement) && ok;
    }
    if (ok) {
      try {
        corpus::validate_dialogue(next, schemas);
      } catch (const ValidationError& e) {
        ok = false;
        out_log.skip("validation", where + e.what());
        continue;
      }
    } else {
      out_log.skip("span_overlap", where + "a span boundary cuts the value");
      continue;
    }
    out = std::move(next);
    ++out_log.replaced;
    for (auto& v : current_values) {
      if (same_value(v, value)) v = replacement;
    }
  }
  return out;
}

AugmentedCorpus augment_corpus(const std::vector<Dialogue>& dialogues,
                               const corpus::SchemaIndex& schemas,
                               const ValuePools& pools,
                               const AugmentConfig& config) {
  if (config.multiplier < 1) {
    throw ConfigError("augment: multiplier must be >= 1");
  }
  AugmentedCorpus out;
  std::vector<const Dialogue*> single;
  for (const Dialogue& d : dialogues) {
    if (d.single_domain()) {
      single.push_back(&d);
    } else {
      out.untouched.push_back(d);
    }
  }
  out.dialogues.reserve(single.size() * config.multiplier);
  for (const Dialogue* d : single) {
    out.dialogues.push_back(*d);
    for (int k = 1; k < config.multiplier; ++k) {
      out.dialogues.push_back(
          augment_dialogue(*d, schemas, pools, config.seed, k, &out.log));
    }
  }
  return out;
}

std::string AugmentedCorpus::manifest_json(const AugmentConfig& config) const {
  nlohmann::json j;
  j["seed"] = config.seed;
  j["multiplier"] = config.multiplier;
  j["dialogues"] = dialogues.size();
  j["untouched_multi_domain"] = untouched.size();
  j["replaced"] = log.replaced;
  j["skipped"] = log.skipped;
  return j.dump(2);
}

}  // namespace schemadst::augment
