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

#ifndef SCHEMADST_CORPUS_TYPES_H_
#define SCHEMADST_CORPUS_TYPES_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace schemadst::corpus {

// Reserved intent name meaning "no active intent".
inline constexpr std::string_view kNoneIntent = "NONE";
// Canonical spelling of the don't-care value. "don't care" is accepted as an
// alias wherever values are compared.
inline constexpr std::string_view kDontCare = "dontcare";

struct IntentSpec {
  std::string name;
  std::string description;
  // Passed through untouched; the engine does not interpret them.
  std::vector<std::string> required_slots;
  std::map<std::string, std::string> optional_slots;
  bool is_transactional = false;
  std::vector<std::string> result_slots;
};

struct SlotSpec {
  std::string name;
  std::string description;
  bool is_categorical = false;
  std::vector<std::string> possible_values;
};

struct ServiceSchema {
  std::string service_name;
  std::string description;
  std::vector<IntentSpec> intents;
  std::vector<SlotSpec> slots;

  // -1 when absent.
  int intent_index(std::string_view name) const;
  int slot_index(std::string_view name) const;
  const SlotSpec* find_slot(std::string_view name) const;
  // Positions into `slots`, schema order preserved.
  std::vector<int> categorical_slots() const;
  std::vector<int> noncategorical_slots() const;
};

// Lookup by service name over a list of schemas.
class SchemaIndex {
 public:
  SchemaIndex() = default;
  explicit SchemaIndex(std::vector<ServiceSchema> schemas);

  const ServiceSchema* find(std::string_view service) const;
  // Throws schemadst::Error for unknown services.
  const ServiceSchema& at(std::string_view service) const;
  bool contains(std::string_view service) const {
    return find(service) != nullptr;
  }
  const std::vector<ServiceSchema>& schemas() const { return schemas_; }
  std::size_t size() const { return schemas_.size(); }

 private:
  std::vector<ServiceSchema> schemas_;
  std::map<std::string, std::size_t, std::less<>> by_name_;
};

enum class Speaker { kSystem, kUser };

struct SystemAction {
  std::string act;
  std::optional<std::string> slot;
  std::vector<std::string> values;

  friend bool operator==(const SystemAction&, const SystemAction&) = default;
};

struct SlotSpan {
  std::string slot;
  int start_char = 0;
  int end_char = 0;  // exclusive

  friend bool operator==(const SlotSpan&, const SlotSpan&) = default;
};

struct DialogueState {
  std::string active_intent{kNoneIntent};
  std::set<std::string> requested_slots;
  // Slot name to the list of accepted value strings.
  std::map<std::string, std::vector<std::string>> slot_values;

  friend bool operator==(const DialogueState&, const DialogueState&) = default;
};

struct Frame {
  std::string service;
  std::optional<DialogueState> state;  // user turns only
  std::vector<SystemAction> actions;
  std::vector<SlotSpan> slot_spans;

  friend bool operator==(const Frame&, const Frame&) = default;
};

struct Turn {
  Speaker speaker = Speaker::kUser;
  std::string utterance;
  std::vector<Frame> frames;

  friend bool operator==(const Turn&, const Turn&) = default;
};

struct Dialogue {
  std::string dialogue_id;
  std::vector<std::string> services;
  std::vector<Turn> turns;

  bool single_domain() const { return services.size() == 1; }
  // Utterance of the system turn immediately preceding `turn_index`, or ""
  // when the user speaks first.
  std::string_view preceding_system_utterance(std::size_t turn_index) const;

  friend bool operator==(const Dialogue&, const Dialogue&) = default;
};

struct Corpus {
  std::vector<ServiceSchema> schemas;
  std::vector<Dialogue> dialogues;
};

// Maps both don't-care spellings to kDontCare; other values unchanged.
std::string canonical_value(std::string_view value);
bool is_dont_care(std::string_view value);
// True when the two accepted-value lists share a value (canonical form).
bool values_overlap(const std::vector<std::string>& a,
                    const std::vector<std::string>& b);
// Lower-cased, whitespace-collapsed form used for lenient comparisons.
std::string normalize_text(std::string_view value);

// Case-insensitive search for `needle` in `text` starting at `from`, accepting
// only matches whose neighbours are not alphanumeric. npos when absent.
std::size_t find_word(std::string_view text, std::string_view needle,
                      std::size_t from = 0);
inline bool contains_word(std::string_view text, std::string_view needle) {
  return find_word(text, needle) != std::string_view::npos;
}

}  // namespace schemadst::corpus

#endif  // SCHEMADST_CORPUS_TYPES_H_
