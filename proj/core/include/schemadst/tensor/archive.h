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

#ifndef SCHEMADST_TENSOR_ARCHIVE_H_
#define SCHEMADST_TENSOR_ARCHIVE_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "schemadst/tensor/adam.h"
#include "schemadst/tensor/parameter.h"

namespace schemadst::tensor {

struct NamedTensor {
  std::string name;
  Matrix value;
};

// Versioned binary container: a JSON metadata string plus named 2-D tensors
// stored as raw IEEE-754 doubles, closed by an FNV-1a checksum. Round trips
// are bit-exact.
struct TensorArchive {
  std::string metadata = "{}";
  std::vector<NamedTensor> tensors;

  const Matrix* find(std::string_view name) const;
};

void write_archive(const std::filesystem::path& file, const TensorArchive& archive);
// Throws ParseError on a bad magic, version, truncation or checksum.
TensorArchive read_archive(const std::filesystem::path& file);

// Checkpoint = parameters + Adam moments + step counter + config hash.
struct CheckpointInfo {
  std::string config_hash;
  long step = 0;
  std::string extra = "{}";  // JSON object, caller-defined
};

void save_checkpoint(const std::filesystem::path& file,
                     const ParameterStore& store, const Adam* optimizer,
                     const CheckpointInfo& info);
// Restores parameters (and moments when `optimizer` is non-null). Refuses
// with ProvenanceError when the stored hash differs from `expected_hash`
// (skipped when `expected_hash` is empty).
CheckpointInfo load_checkpoint(const std::filesystem::path& file,
                               ParameterStore& store, Adam* optimizer,
                               std::string_view expected_hash);

}  // namespace schemadst::tensor

#endif  // SCHEMADST_TENSOR_ARCHIVE_H_
