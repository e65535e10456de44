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

#include "schemadst/tensor/parameter.h"

#include <cmath>

#include "schemadst/common/error.h"
#include "schemadst/common/hash.h"

namespace schemadst::tensor {

Matrix truncated_normal(int rows, int cols, double stddev,
                        std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    double x;
    do {
      x = normal(rng);
    } while (std::abs(x) > 2.0);
    m.data()[i] = x * stddev;
  }
  return m;
}

Parameter& ParameterStore::add(std::string name, Matrix init) {
  if (find(name) != nullptr) throw Error("duplicate parameter '" + name + "'");
  params_.push_back(std::make_unique<Parameter>(
      std::move(name), std::move(init), static_cast<int>(params_.size())));
  return *params_.back();
}

Parameter* ParameterStore::find(std::string_view name) {
  for (auto& p : params_) {
    if (p->name() == name) return p.get();
  }
  return nullptr;
}

const Parameter* ParameterStore::find(std::string_view name) const {
  for (const auto& p : params_) {
    if (p->name() == name) return p.get();
  }
  return nullptr;
}

std::size_t ParameterStore::scalar_count() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += static_cast<std::size_t>(p->value.size());
  return n;
}

std::uint64_t ParameterStore::checksum() const {
  Fnv1a h;
  for (const auto& p : params_) {
    h.update(p->name());
    h.update_u64(static_cast<std::uint64_t>(p->value.rows()));
    h.update_u64(static_cast<std::uint64_t>(p->value.cols()));
    h.update(p->value.data(), sizeof(double) * p->value.size());
  }
  return h.digest();
}

std::vector<Matrix> ParameterStore::snapshot() const {
  std::vector<Matrix> out;
  out.reserve(params_.size());
  for (const auto& p : params_) out.push_back(p->value);
  return out;
}

void ParameterStore::restore(const std::vector<Matrix>& values) {
  if (values.size() != params_.size()) {
    throw Error("snapshot has " + std::to_string(values.size()) +
                " tensors, store has " + std::to_string(params_.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) params_[i]->value = values[i];
}

Gradients::Gradients(const ParameterStore& store) {
  grads_.reserve(store.size());
  for (std::size_t i = 0; i < store.size(); ++i) {
    grads_.push_back(Matrix::Zero(store[i].value.rows(), store[i].value.cols()));
  }
}

void Gradients::zero() {
  for (auto& g : grads_) g.setZero();
}

void Gradients::add(const Gradients& other) {
  for (std::size_t i = 0; i < grads_.size(); ++i) grads_[i] += other.grads_[i];
}

void Gradients::scale(double factor) {
  for (auto& g : grads_) g *= factor;
}

double Gradients::norm() const {
  double s = 0.0;
  for (const auto& g : grads_) s += g.squaredNorm();
  return std::sqrt(s);
}

}  // namespace schemadst::tensor
