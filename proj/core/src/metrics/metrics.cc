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
#include "schemadst/metrics/metrics.h"

#include <cstdio>
#include <map>

#include <nlohmann/json.hpp>

#include "schemadst/common/error.h"

namespace schemadst::metrics {

std::vector<FrameEval> pair_frames(
    const std::vector<corpus::Dialogue>& gold,
    const std::vector<std::vector<tracker::TrackedFrame>>& predicted) {
  if (gold.size() != predicted.size()) {
    throw Error("metrics: " + std::to_string(gold.size()) +
                " gold dialogues but " + std::to_string(predicted.size()) +
                " predictions");
  }
  std::vector<FrameEval> out;
  for (std::size_t d = 0; d < gold.size(); ++d) {
    const corpus::Dialogue& dialogue = gold[d];
    std::size_t k = 0;
    for (std::size_t t = 0; t < dialogue.turns.size(); ++t) {
      const corpus::Turn& turn = dialogue.turns[t];
      if (turn.speaker != corpus::Speaker::kUser) continue;
      for (const corpus::Frame& f : turn.frames) {
        if (k >= predicted[d].size() ||
            predicted[d][k].service != f.service ||
            predicted[d][k].turn_index != static_cast<int>(t)) {
          throw Error("metrics: predictions for dialogue " +
                      dialogue.dialogue_id + " do not align with turn " +
                      std::to_string(t));
        }
        out.push_back({dialogue.dialogue_id, static_cast<int>(t), f.service,
                       dialogue.single_domain(),
                       f.state.value_or(DialogueState{}),
                       predicted[d][k].state});
        ++k;
      }
    }
    if (k != predicted[d].size()) {
      throw Error("metrics: extra predicted frames for dialogue " +
                  dialogue.dialogue_id);
    }
  }
  return out;
}

MetricValue active_intent_accuracy(const std::vector<FrameEval>& frames) {
  MetricValue m;
  long correct = 0;
  for (const FrameEval& f : frames) {
    ++m.count;
    if (f.gold.active_intent == f.pred.active_intent) ++correct;
  }
  m.value = m.count == 0 ? 1.0 : static_cast<double>(correct) / m.count;
  return m;
}

MetricValue requested_slot_f1(const std::vector<FrameEval>& frames) {
  MetricValue m;
  double total = 0.0;
  for (const FrameEval& f : frames) {
    const auto& gold = f.gold.requested_slots;
    const auto& pred = f.pred.requested_slots;
    if (gold.empty() && pred.empty()) continue;
    ++m.count;
    long hit = 0;
    for (const auto& s : pred) hit += gold.count(s);
    if (hit == 0) continue;
    const double precision = static_cast<double>(hit) / pred.size();
    const double recall = static_cast<double>(hit) / gold.size();
    total += 2.0 * precision * recall / (precision + recall);
  }
  m.value = m.count == 0 ? 1.0 : total / m.count;
  return m;
}

bool values_match(const std::vector<std::string>& gold,
                  const std::vector<std::string>& pred, bool categorical) {
  for (const std::string& p : pred) {
    const std::string cp = corpus::canonical_value(p);
    for (const std::string& g : gold) {
      const std::string cg = corpus::canonical_value(g);
      if (categorical ? cp == cg
                      : corpus::normalize_text(cp) == corpus::normalize_text(cg)) {
        return true;
      }
    }
  }
  return false;
}

namespace {

bool is_categorical(const corpus::SchemaIndex& schemas,
                    const std::string& service, const std::string& slot) {
  const corpus::ServiceSchema* s = schemas.find(service);
  if (s == nullptr) return false;
  const corpus::SlotSpec* spec = s->find_slot(slot);
  return spec != nullptr && spec->is_categorical;
}

}  // namespace

MetricValue average_goal_accuracy(const std::vector<FrameEval>& frames,
                                  const corpus::SchemaIndex& schemas) {
  MetricValue m;
  long correct = 0;
  for (const FrameEval& f : frames) {
    for (const auto& [slot, gold] : f.gold.slot_values) {
      if (gold.empty()) continue;
      ++m.count;
      auto it = f.pred.slot_values.find(slot);
      if (it != f.pred.slot_values.end() &&
          values_match(gold, it->second,
                       is_categorical(schemas, f.service, slot))) {
        ++correct;
      }
    }
  }
  m.value = m.count == 0 ? 1.0 : static_cast<double>(correct) / m.count;
  return m;
}

MetricValue joint_goal_accuracy(const std::vector<FrameEval>& frames,
                                const corpus::SchemaIndex& schemas) {
  MetricValue m;
  long correct = 0;
  for (const FrameEval& f : frames) {
    ++m.count;
    bool ok = true;
    for (const auto& [slot, gold] : f.gold.slot_values) {
      auto it = f.pred.slot_values.find(slot);
      if (it == f.pred.slot_values.end() ||
          !values_match(gold, it->second,
                        is_categorical(schemas, f.service, slot))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (const auto& [slot, pred] : f.pred.slot_values) {
        if (!f.gold.slot_values.count(slot)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) ++correct;
  }
  m.value = m.count == 0 ? 1.0 : static_cast<double>(correct) / m.count;
  return m;
}

std::set<std::string> observed_services(
    const std::vector<corpus::Dialogue>& dialogues) {
  std::set<std::string> out;
  for (const corpus::Dialogue& d : dialogues) {
    for (const corpus::Turn& t : d.turns) {
      for (const corpus::Frame& f : t.frames) out.insert(f.service);
    }
  }
  return out;
}

std::vector<bool> seen_service_filter(
    const std::vector<FrameEval>& frames,
    const std::set<std::string>& train_services, bool fixed) {
  std::vector<bool> keep(frames.size(), false);
  std::string dialogue;
  bool tainted = false;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const FrameEval& f = frames[i];
    if (i == 0 || f.dialogue_id != dialogue) {
      dialogue = f.dialogue_id;
      tainted = false;
    }
    const bool seen = train_services.count(f.service) > 0;
    keep[i] = seen && !(fixed && tainted);
    if (!seen) tainted = true;
  }
  return keep;
}

const SliceReport* EvalReport::find(const std::string& name) const {
  for (const SliceReport& s : slices) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

namespace {

SliceReport make_slice(std::string name, const std::vector<FrameEval>& frames,
                       const corpus::SchemaIndex& schemas) {
  SliceReport r;
  r.name = std::move(name);
  r.frames = static_cast<long>(frames.size());
  r.active_intent_accuracy = active_intent_accuracy(frames);
  r.requested_slot_f1 = requested_slot_f1(frames);
  r.average_goal_accuracy = average_goal_accuracy(frames, schemas);
  r.joint_goal_accuracy = joint_goal_accuracy(frames, schemas);
  return r;
}

std::vector<FrameEval> select(const std::vector<FrameEval>& frames,
                              const std::vector<bool>& keep) {
  std::vector<FrameEval> out;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (keep[i]) out.push_back(frames[i]);
  }
  return out;
}

const std::pair<const char*, MetricValue SliceReport::*> kMetrics[] = {
    {"active_intent_accuracy", &SliceReport::active_intent_accuracy},
    {"requested_slot_f1", &SliceReport::requested_slot_f1},
    {"average_goal_accuracy", &SliceReport::average_goal_accuracy},
    {"joint_goal_accuracy", &SliceReport::joint_goal_accuracy},
};

}  // namespace

EvalReport evaluate(const std::vector<FrameEval>& frames,
                    const corpus::SchemaIndex& schemas,
                    const std::set<std::string>* train_services,
                    SliceSelection selection) {
  EvalReport report;
  report.slices.push_back(make_slice("all", frames, schemas));
  if (selection.domain) {
    std::vector<bool> single(frames.size());
    std::vector<bool> multi(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
      single[i] = frames[i].single_domain;
      multi[i] = !frames[i].single_domain;
    }
    report.slices.push_back(
        make_slice("single_domain", select(frames, single), schemas));
    report.slices.push_back(
        make_slice("multi_domain", select(frames, multi), schemas));
  }
  if (selection.seen && train_services != nullptr) {
    const auto unfixed = seen_service_filter(frames, *train_services, false);
    const auto fixed = seen_service_filter(frames, *train_services, true);
    std::vector<bool> unseen(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) unseen[i] = !unfixed[i];
    report.slices.push_back(
        make_slice("seen_unfixed", select(frames, unfixed), schemas));
    report.slices.push_back(
        make_slice("seen_fixed", select(frames, fixed), schemas));
    report.slices.push_back(
        make_slice("unseen", select(frames, unseen), schemas));
  }
  return report;
}

std::string EvalReport::to_text() const {
  std::string out;
  char line[256];
  for (const SliceReport& s : slices) {
    std::snprintf(line, sizeof(line), "%s.frames=%ld\n", s.name.c_str(),
                  s.frames);
    out += line;
    for (const auto& [key, member] : kMetrics) {
      const MetricValue& m = s.*member;
      std::snprintf(line, sizeof(line), "%s.%s=%.6f\n%s.%s.count=%ld\n",
                    s.name.c_str(), key, m.value, s.name.c_str(), key,
                    m.count);
      out += line;
    }
  }
  return out;
}

std::string EvalReport::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const SliceReport& s : slices) {
    nlohmann::json row;
    row["slice"] = s.name;
    row["frames"] = s.frames;
    for (const auto& [key, member] : kMetrics) {
      const MetricValue& m = s.*member;
      row[key] = {{"value", m.value}, {"count", m.count}};
    }
    j.push_back(std::move(row));
  }
  return j.dump(2);
}

}  // namespace schemadst::metrics
