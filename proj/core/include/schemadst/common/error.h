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

#ifndef SCHEMADST_COMMON_ERROR_H_
#define SCHEMADST_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace schemadst {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. Carries the file and the offending field.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::string field, const std::string& what)
      : Error(file + ": " + field + ": " + what),
        file_(std::move(file)),
        field_(std::move(field)) {}

  const std::string& file() const { return file_; }
  const std::string& field() const { return field_; }

 private:
  std::string file_;
  std::string field_;
};

// Structurally valid input that violates a corpus invariant.
class ValidationError : public Error {
 public:
  ValidationError(std::string dialogue_id, int turn_index,
                  const std::string& what)
      : Error(format(dialogue_id, turn_index, what)),
        dialogue_id_(std::move(dialogue_id)),
        turn_index_(turn_index) {}

  const std::string& dialogue_id() const { return dialogue_id_; }
  // -1 when the violation is not tied to a turn.
  int turn_index() const { return turn_index_; }

 private:
  static std::string format(const std::string& id, int turn,
                            const std::string& what) {
    std::string out = "dialogue " + id;
    if (turn >= 0) out += " turn " + std::to_string(turn);
    return out + ": " + what;
  }

  std::string dialogue_id_;
  int turn_index_;
};

// Artifacts that do not belong together (e.g. memory built for another
// encoder configuration).
class ProvenanceError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace schemadst

#endif  // SCHEMADST_COMMON_ERROR_H_
