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

#include "schemadst/corpus/types.h"

#include <algorithm>
#include <cctype>

#include "schemadst/common/error.h"

namespace schemadst::corpus {

int ServiceSchema::intent_index(std::string_view name) const {
  for (std::size_t i = 0; i < intents.size(); ++i) {
    if (intents[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

int ServiceSchema::slot_index(std::string_view name) const {
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

const SlotSpec* ServiceSchema::find_slot(std::string_view name) const {
  const int i = slot_index(name);
  return i < 0 ? nullptr : &slots[i];
}

std::vector<int> ServiceSchema::categorical_slots() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].is_categorical) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> ServiceSchema::noncategorical_slots() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].is_categorical) out.push_back(static_cast<int>(i));
  }
  return out;
}

SchemaIndex::SchemaIndex(std::vector<ServiceSchema> schemas)
    : schemas_(std::move(schemas)) {
  for (std::size_t i = 0; i < schemas_.size(); ++i) {
    if (!by_name_.emplace(schemas_[i].service_name, i).second) {
      throw Error("duplicate service '" + schemas_[i].service_name + "'");
    }
  }
}

const ServiceSchema* SchemaIndex::find(std::string_view service) const {
  auto it = by_name_.find(service);
  return it == by_name_.end() ? nullptr : &schemas_[it->second];
}

const ServiceSchema& SchemaIndex::at(std::string_view service) const {
  const ServiceSchema* s = find(service);
  if (s == nullptr) throw Error("unknown service '" + std::string(service) + "'");
  return *s;
}

std::string_view Dialogue::preceding_system_utterance(
    std::size_t turn_index) const {
  if (turn_index == 0 || turn_index > turns.size()) return {};
  const Turn& prev = turns[turn_index - 1];
  return prev.speaker == Speaker::kSystem ? std::string_view(prev.utterance)
                                          : std::string_view();
}

std::string normalize_text(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  bool pending_space = false;
  for (char c : value) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::size_t find_word(std::string_view text, std::string_view needle,
                      std::size_t from) {
  if (needle.empty() || needle.size() > text.size()) return std::string_view::npos;
  auto lower = [](char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  };
  auto word_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
  };
  for (std::size_t i = from; i + needle.size() <= text.size(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < needle.size() && match; ++k) {
      match = lower(text[i + k]) == lower(needle[k]);
    }
    if (!match) continue;
    const bool left_ok = i == 0 || !word_char(text[i - 1]) || !word_char(needle.front());
    const std::size_t end = i + needle.size();
    const bool right_ok =
        end == text.size() || !word_char(text[end]) || !word_char(needle.back());
    if (left_ok && right_ok) return i;
  }
  return std::string_view::npos;
}

bool is_dont_care(std::string_view value) {
  const std::string n = normalize_text(value);
  return n == kDontCare || n == "don't care" || n == "dont care";
}

std::string canonical_value(std::string_view value) {
  if (is_dont_care(value)) return std::string(kDontCare);
  return std::string(value);
}

bool values_overlap(const std::vector<std::string>& a,
                    const std::vector<std::string>& b) {
  for (const auto& x : a) {
    const std::string cx = canonical_value(x);
    for (const auto& y : b) {
      if (cx == canonical_value(y)) return true;
    }
  }
  return false;
}

}  // namespace schemadst::corpus
