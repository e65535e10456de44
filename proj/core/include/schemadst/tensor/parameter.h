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

#ifndef SCHEMADST_TENSOR_PARAMETER_H_
#define SCHEMADST_TENSOR_PARAMETER_H_

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace schemadst::tensor {

// Dense row-major 2-D tensor. Vectors are 1 x n rows.
using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// A named trainable tensor. Owned by a ParameterStore; addresses are stable.
class Parameter {
 public:
  Parameter(std::string name, Matrix value, int index)
      : value(std::move(value)), name_(std::move(name)), index_(index) {}

  const std::string& name() const { return name_; }
  int index() const { return index_; }

  Matrix value;

 private:
  std::string name_;
  int index_;
};

// Truncated normal: draws beyond two standard deviations are resampled.
Matrix truncated_normal(int rows, int cols, double stddev,
                        std::mt19937_64& rng);

class ParameterStore {
 public:
  ParameterStore() = default;
  ParameterStore(const ParameterStore&) = delete;
  ParameterStore& operator=(const ParameterStore&) = delete;

  // Throws schemadst::Error on duplicate names.
  Parameter& add(std::string name, Matrix init);
  Parameter& add_normal(std::string name, int rows, int cols, double stddev,
                        std::mt19937_64& rng) {
    return add(std::move(name), truncated_normal(rows, cols, stddev, rng));
  }
  Parameter& add_zeros(std::string name, int rows, int cols) {
    return add(std::move(name), Matrix::Zero(rows, cols));
  }
  Parameter& add_ones(std::string name, int rows, int cols) {
    return add(std::move(name), Matrix::Ones(rows, cols));
  }

  std::size_t size() const { return params_.size(); }
  Parameter& operator[](std::size_t i) { return *params_[i]; }
  const Parameter& operator[](std::size_t i) const { return *params_[i]; }
  Parameter* find(std::string_view name);
  const Parameter* find(std::string_view name) const;

  std::size_t scalar_count() const;
  // Hash over names, shapes and raw value bytes.
  std::uint64_t checksum() const;
  std::vector<Matrix> snapshot() const;
  void restore(const std::vector<Matrix>& values);

 private:
  std::vector<std::unique_ptr<Parameter>> params_;
};

// One gradient buffer per parameter of a store, indexed like the store.
class Gradients {
 public:
  Gradients() = default;
  explicit Gradients(const ParameterStore& store);

  std::size_t size() const { return grads_.size(); }
  Matrix& operator[](std::size_t i) { return grads_[i]; }
  const Matrix& operator[](std::size_t i) const { return grads_[i]; }

  void zero();
  void add(const Gradients& other);
  void scale(double factor);
  double norm() const;

 private:
  std::vector<Matrix> grads_;
};

}  // namespace schemadst::tensor

#endif  // SCHEMADST_TENSOR_PARAMETER_H_
