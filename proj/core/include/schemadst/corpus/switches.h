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

#ifndef SCHEMADST_CORPUS_SWITCHES_H_
#define SCHEMADST_CORPUS_SWITCHES_H_

#include <string>
#include <vector>

#include "schemadst/corpus/types.h"

namespace schemadst::corpus {

struct SwitchEvent {
  int turn_index = 0;  // index into Dialogue::turns
  int user_turn = 0;   // 0-based count of user turns
  std::string from_service;
  std::string to_service;

  friend bool operator==(const SwitchEvent&, const SwitchEvent&) = default;
};

// A user turn's "focus" frames are those whose state differs from the last
// state recorded for the same service; when no frame changed, the first frame
// is the focus. An event is emitted whenever a focus frame's service differs
// from the focus service before it, one event per changed pair.
std::vector<SwitchEvent> detect_switches(const Dialogue& dialogue);

}  // namespace schemadst::corpus

#endif  // SCHEMADST_CORPUS_SWITCHES_H_
