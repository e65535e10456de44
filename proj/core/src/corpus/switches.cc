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

#include "schemadst/corpus/switches.h"

#include <map>

namespace schemadst::corpus {

std::vector<SwitchEvent> detect_switches(const Dialogue& dialogue) {
  std::vector<SwitchEvent> events;
  std::map<std::string, DialogueState> last_state;
  std::string current;
  int user_turn = -1;
  for (std::size_t t = 0; t < dialogue.turns.size(); ++t) {
    const Turn& turn = dialogue.turns[t];
    if (turn.speaker != Speaker::kUser) continue;
    ++user_turn;
    std::vector<const Frame*> focus;
    for (const Frame& f : turn.frames) {
      const DialogueState state = f.state.value_or(DialogueState{});
      auto it = last_state.find(f.service);
      const DialogueState& prev =
          it == last_state.end() ? DialogueState{} : it->second;
      if (!(state == prev)) focus.push_back(&f);
    }
    if (focus.empty() && !turn.frames.empty()) focus.push_back(&turn.frames[0]);
    for (const Frame* f : focus) {
      if (!current.empty() && f->service != current) {
        events.push_back({static_cast<int>(t), user_turn, current, f->service});
      }
      current = f->service;
    }
    for (const Frame& f : turn.frames) {
      last_state[f.service] = f.state.value_or(DialogueState{});
    }
  }
  return events;
}

}  // namespace schemadst::corpus
