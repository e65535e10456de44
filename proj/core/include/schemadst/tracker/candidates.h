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
#ifndef SCHEMADST_TRACKER_CANDIDATES_H_
#define SCHEMADST_TRACKER_CANDIDATES_H_

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "schemadst/corpus/types.h"

namespace schemadst::tracker {

// (service, slot)
using SlotKey = std::pair<std::string, std::string>;

struct Candidate {
  std::string service;
  std::string slot;
  double likelihood = 0.0;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Cross-service carry-over candidates: for a target slot, the slots of other
// services whose values have been observed to move into it when the user
// switched services.
class CandidateTable {
 public:
  static constexpr double kDefaultThreshold = 0.1;

  CandidateTable() = default;
  explicit CandidateTable(double threshold) : threshold_(threshold) {}

  // Ignored when likelihood < threshold.
  void add(const SlotKey& target, Candidate candidate);
  // Sorted by likelihood (descending), then by service and slot.
  const std::vector<Candidate>& candidates(const std::string& service,
                                           const std::string& slot) const;
  const std::map<SlotKey, std::vector<Candidate>>& entries() const {
    return entries_;
  }
  double threshold() const { return threshold_; }
  std::size_t size() const;
  bool empty() const { return entries_.empty(); }

  // One line per entry, sorted:
  // target_service \t target_slot \t source_service \t source_slot \t p
  // Lines starting with "#" are comments.
  std::string to_tsv() const;
  static CandidateTable from_tsv(const std::string& text,
                                 const std::string& source,
                                 double threshold = kDefaultThreshold);
  void save(const std::filesystem::path& file) const;
  static CandidateTable load(const std::filesystem::path& file,
                             double threshold = kDefaultThreshold);

  friend bool operator==(const CandidateTable&, const CandidateTable&) =
      default;

 private:
  double threshold_ = kDefaultThreshold;
  std::map<SlotKey, std::vector<Candidate>> entries_;
};

// Counts, over every service switch in the annotated dialogues, the slot
// pairs whose values agree between the new service's state at the switch
// and the latest state of the service left behind. Counts of both
// directions are pooled and divided by the number of switches between the
// two services in either direction; pairs below `threshold` are dropped.
// Don't-care values are never counted.
CandidateTable build_candidate_table(
    const std::vector<corpus::Dialogue>& dialogues,
    double threshold = CandidateTable::kDefaultThreshold);

}  // namespace schemadst::tracker

#endif  // SCHEMADST_TRACKER_CANDIDATES_H_
