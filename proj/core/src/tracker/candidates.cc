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
#include "schemadst/tracker/candidates.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "schemadst/common/error.h"
#include "schemadst/corpus/switches.h"

namespace schemadst::tracker {

using corpus::DialogueState;

void CandidateTable::add(const SlotKey& target, Candidate candidate) {
  if (candidate.likelihood < threshold_) return;
  auto& list = entries_[target];
  list.push_back(std::move(candidate));
  std::sort(list.begin(), list.end(), [](const Candidate& a, const Candidate& b) {
    if (a.likelihood != b.likelihood) return a.likelihood > b.likelihood;
    return std::tie(a.service, a.slot) < std::tie(b.service, b.slot);
  });
}

const std::vector<Candidate>& CandidateTable::candidates(
    const std::string& service, const std::string& slot) const {
  static const std::vector<Candidate> kEmpty;
  auto it = entries_.find({service, slot});
  return it == entries_.end() ? kEmpty : it->second;
}

std::size_t CandidateTable::size() const {
  std::size_t n = 0;
  for (const auto& [key, list] : entries_) n += list.size();
  return n;
}

std::string CandidateTable::to_tsv() const {
  std::vector<std::string> lines;
  char number[32];
  for (const auto& [target, list] : entries_) {
    for (const Candidate& c : list) {
      std::snprintf(number, sizeof(number), "%.17g", c.likelihood);
      lines.push_back(target.first + '\t' + target.second + '\t' + c.service +
                      '\t' + c.slot + '\t' + number);
    }
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + '\n';
  return out;
}

CandidateTable CandidateTable::from_tsv(const std::string& text,
                                        const std::string& source,
                                        double threshold) {
  CandidateTable table(threshold);
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    const std::string where = "line " + std::to_string(number);
    if (fields.size() != 5) {
      throw ParseError(source, where, "expected 5 tab-separated fields");
    }
    double p = 0.0;
    try {
      std::size_t used = 0;
      p = std::stod(fields[4], &used);
      if (used != fields[4].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(source, where, "likelihood is not a number");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ParseError(source, where, "likelihood outside [0, 1]");
    }
    table.add({fields[0], fields[1]}, {fields[2], fields[3], p});
  }
  return table;
}

void CandidateTable::save(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write " + file.string());
  out << to_tsv();
  if (!out) throw Error("failed writing " + file.string());
}

CandidateTable CandidateTable::load(const std::filesystem::path& file,
                                    double threshold) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot read " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_tsv(buffer.str(), file.string(), threshold);
}

namespace {

bool has_real_value(const std::vector<std::string>& values) {
  return std::any_of(values.begin(), values.end(), [](const std::string& v) {
    return !corpus::is_dont_care(v);
  });
}

}  // namespace

CandidateTable build_candidate_table(
    const std::vector<corpus::Dialogue>& dialogues, double threshold) {
  // Unordered endpoints are stored with the smaller key first.
  using SlotPair = std::pair<SlotKey, SlotKey>;
  using ServicePair = std::pair<std::string, std::string>;
  std::map<SlotPair, long> pair_counts;
  std::map<ServicePair, long> switch_counts;

  for (const corpus::Dialogue& d : dialogues) {
    const auto events = corpus::detect_switches(d);
    if (events.empty()) continue;
    std::size_t next_event = 0;
    std::map<std::string, DialogueState> latest;
    for (std::size_t t = 0; t < d.turns.size(); ++t) {
      const corpus::Turn& turn = d.turns[t];
      if (turn.speaker != corpus::Speaker::kUser) continue;
      for (const corpus::Frame& f : turn.frames) {
        latest[f.service] = f.state.value_or(DialogueState{});
      }
      for (; next_event < events.size() &&
             events[next_event].turn_index == static_cast<int>(t);
           ++next_event) {
        const corpus::SwitchEvent& e = events[next_event];
        const ServicePair services = std::minmax(e.from_service, e.to_service);
        ++switch_counts[services];
        const DialogueState& from = latest[e.from_service];
        const DialogueState& to = latest[e.to_service];
        for (const auto& [target_slot, target_values] : to.slot_values) {
          if (!has_real_value(target_values)) continue;
          for (const auto& [source_slot, source_values] : from.slot_values) {
            if (!has_real_value(source_values) ||
                !corpus::values_overlap(source_values, target_values)) {
              continue;
            }
            SlotKey a{e.from_service, source_slot};
            SlotKey b{e.to_service, target_slot};
            if (b < a) std::swap(a, b);
            ++pair_counts[{a, b}];
          }
        }
      }
    }
  }

  CandidateTable table(threshold);
  for (const auto& [pair, count] : pair_counts) {
    const auto& [a, b] = pair;
    const long switches = switch_counts[std::minmax(a.first, b.first)];
    const double p = static_cast<double>(count) / static_cast<double>(switches);
    table.add(b, {a.first, a.second, p});
    table.add(a, {b.first, b.second, p});
  }
  return table;
}

}  // namespace schemadst::tracker
