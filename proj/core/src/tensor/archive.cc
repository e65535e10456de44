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

#include "schemadst/tensor/archive.h"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "schemadst/common/error.h"
#include "schemadst/common/hash.h"

namespace schemadst::tensor {
namespace {

constexpr char kMagic[8] = {'S', 'D', 'S', 'T', 'A', 'R', 'C', 'H'};
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  void bytes(const void* p, std::size_t n) {
    buf_.append(static_cast<const char*>(p), n);
  }
  void u32(std::uint32_t v) { bytes(&v, sizeof(v)); }
  void u64(std::uint64_t v) { bytes(&v, sizeof(v)); }
  void str(std::string_view s) {
    u64(s.size());
    bytes(s.data(), s.size());
  }
  std::string& buffer() { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  Reader(const std::string& buf, std::size_t limit, std::string file)
      : buf_(buf), limit_(limit), file_(std::move(file)) {}

  void bytes(void* p, std::size_t n, const char* field) {
    if (n > limit_ - pos_) throw ParseError(file_, field, "truncated archive");
    std::memcpy(p, buf_.data() + pos_, n);
    pos_ += n;
  }
  std::uint32_t u32(const char* field) {
    std::uint32_t v;
    bytes(&v, sizeof(v), field);
    return v;
  }
  std::uint64_t u64(const char* field) {
    std::uint64_t v;
    bytes(&v, sizeof(v), field);
    return v;
  }
  std::string str(const char* field) {
    const std::uint64_t n = u64(field);
    if (n > limit_ - pos_) throw ParseError(file_, field, "truncated archive");
    std::string s(buf_.data() + pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t position() const { return pos_; }

 private:
  const std::string& buf_;
  std::size_t limit_;
  std::size_t pos_ = 0;
  std::string file_;
};

}  // namespace

const Matrix* TensorArchive::find(std::string_view name) const {
  for (const auto& t : tensors) {
    if (t.name == name) return &t.value;
  }
  return nullptr;
}

void write_archive(const std::filesystem::path& file,
                   const TensorArchive& archive) {
  Writer w;
  w.bytes(kMagic, sizeof(kMagic));
  w.u32(kVersion);
  w.str(archive.metadata);
  w.u64(archive.tensors.size());
  for (const auto& t : archive.tensors) {
    w.str(t.name);
    w.u64(static_cast<std::uint64_t>(t.value.rows()));
    w.u64(static_cast<std::uint64_t>(t.value.cols()));
    w.bytes(t.value.data(), sizeof(double) * t.value.size());
  }
  w.u64(Fnv1a().update(w.buffer()).digest());
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write " + file.string());
  out.write(w.buffer().data(), static_cast<std::streamsize>(w.buffer().size()));
}

TensorArchive read_archive(const std::filesystem::path& file) {
  const std::string name = file.string();
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ParseError(name, "<file>", "cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string buf = ss.str();
  if (buf.size() < sizeof(kMagic) + 4 + 8) {
    throw ParseError(name, "header", "file too short");
  }
  const std::size_t body = buf.size() - 8;
  std::uint64_t stored;
  std::memcpy(&stored, buf.data() + body, sizeof(stored));
  if (Fnv1a().update(buf.data(), body).digest() != stored) {
    throw ParseError(name, "checksum", "archive is corrupted");
  }
  Reader r(buf, body, name);
  char magic[8];
  r.bytes(magic, sizeof(magic), "magic");
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw ParseError(name, "magic", "not a tensor archive");
  }
  const std::uint32_t version = r.u32("version");
  if (version != kVersion) {
    throw ParseError(name, "version",
                     "unsupported version " + std::to_string(version));
  }
  TensorArchive archive;
  archive.metadata = r.str("metadata");
  const std::uint64_t count = r.u64("tensor_count");
  for (std::uint64_t i = 0; i < count; ++i) {
    NamedTensor t;
    t.name = r.str("tensor.name");
    const std::uint64_t rows = r.u64("tensor.rows");
    const std::uint64_t cols = r.u64("tensor.cols");
    if (cols != 0 && rows > (body - r.position()) / sizeof(double) / cols) {
      throw ParseError(name, "tensor." + t.name, "shape exceeds file size");
    }
    t.value.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    r.bytes(t.value.data(), sizeof(double) * rows * cols, "tensor.data");
    archive.tensors.push_back(std::move(t));
  }
  if (r.position() != body) {
    throw ParseError(name, "trailer", "unexpected bytes after tensors");
  }
  return archive;
}

void save_checkpoint(const std::filesystem::path& file,
                     const ParameterStore& store, const Adam* optimizer,
                     const CheckpointInfo& info) {
  nlohmann::json meta = {{"kind", "checkpoint"},
                         {"config_hash", info.config_hash},
                         {"step", info.step},
                         {"has_optimizer", optimizer != nullptr},
                         {"extra", nlohmann::json::parse(info.extra)}};
  TensorArchive a;
  a.metadata = meta.dump();
  for (std::size_t i = 0; i < store.size(); ++i) {
    a.tensors.push_back({"param/" + store[i].name(), store[i].value});
  }
  if (optimizer != nullptr) {
    for (std::size_t i = 0; i < store.size(); ++i) {
      a.tensors.push_back({"adam.m/" + store[i].name(), optimizer->first_moments()[i]});
      a.tensors.push_back({"adam.v/" + store[i].name(), optimizer->second_moments()[i]});
    }
  }
  write_archive(file, a);
}

CheckpointInfo load_checkpoint(const std::filesystem::path& file,
                               ParameterStore& store, Adam* optimizer,
                               std::string_view expected_hash) {
  const TensorArchive a = read_archive(file);
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(a.metadata);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(file.string(), "metadata", e.what());
  }
  if (meta.value("kind", "") != "checkpoint") {
    throw ParseError(file.string(), "metadata.kind", "not a checkpoint");
  }
  CheckpointInfo info;
  info.config_hash = meta.value("config_hash", "");
  info.step = meta.value("step", 0L);
  info.extra = meta.contains("extra") ? meta["extra"].dump() : "{}";
  if (!expected_hash.empty() && info.config_hash != expected_hash) {
    throw ProvenanceError("checkpoint " + file.string() +
                          " was written for configuration " + info.config_hash +
                          ", expected " + std::string(expected_hash));
  }
  auto fetch = [&](const std::string& key, const Matrix& like) -> const Matrix& {
    const Matrix* m = a.find(key);
    if (m == nullptr) throw ParseError(file.string(), key, "missing tensor");
    if (m->rows() != like.rows() || m->cols() != like.cols()) {
      throw ProvenanceError("checkpoint tensor " + key + " has shape " +
                            std::to_string(m->rows()) + "x" +
                            std::to_string(m->cols()) + ", model expects " +
                            std::to_string(like.rows()) + "x" +
                            std::to_string(like.cols()));
    }
    return *m;
  };
  for (std::size_t i = 0; i < store.size(); ++i) {
    store[i].value = fetch("param/" + store[i].name(), store[i].value);
  }
  if (optimizer != nullptr && meta.value("has_optimizer", false)) {
    for (std::size_t i = 0; i < store.size(); ++i) {
      optimizer->first_moments()[i] =
          fetch("adam.m/" + store[i].name(), store[i].value);
      optimizer->second_moments()[i] =
          fetch("adam.v/" + store[i].name(), store[i].value);
    }
  }
  return info;
}

}  // namespace schemadst::tensor
