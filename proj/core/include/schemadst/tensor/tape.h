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

#ifndef SCHEMADST_TENSOR_TAPE_H_
#define SCHEMADST_TENSOR_TAPE_H_

#include <functional>
#include <vector>

#include "schemadst/tensor/parameter.h"

namespace schemadst::tensor {

class Tape;

// Handle to a node on a Tape. Cheap to copy; valid while the tape lives.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, int id) : tape_(tape), id_(id) {}

  Tape& tape() const { return *tape_; }
  int id() const { return id_; }
  bool valid() const { return tape_ != nullptr; }
  const Matrix& value() const;
  Eigen::Index rows() const { return value().rows(); }
  Eigen::Index cols() const { return value().cols(); }
  // Convenience for 1 x 1 nodes.
  double scalar() const { return value()(0, 0); }

 private:
  Tape* tape_ = nullptr;
  int id_ = -1;
};

// Reverse-mode autodiff record. Forward ops append nodes; backward() walks
// them in reverse. Parameter leaves refer to the parameter's storage instead
// of copying it, so parameters must not change while a tape is alive.
class Tape {
 public:
  using Backward = std::function<void(Tape&, int self)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var constant(Matrix value);
  Var parameter(const Parameter& p);
  // Appends an op result. `needs_grad` should be true iff some input needs
  // a gradient; `backward` reads grad(self) and accumulates into inputs.
  Var push(Matrix value, bool needs_grad, Backward backward);

  const Matrix& value(int id) const {
    const Node& n = nodes_[id];
    return n.external != nullptr ? *n.external : n.value;
  }
  bool needs_grad(int id) const { return nodes_[id].needs_grad; }
  // Lazily allocated, zero-initialised gradient of node `id`.
  Matrix& grad(int id);
  bool has_grad(int id) const { return nodes_[id].grad.size() > 0; }

  // Seeds d(loss)/d(loss) = 1 and propagates. `loss` must be 1 x 1.
  void backward(Var loss);
  // Adds parameter-leaf gradients into `out` (indexed by Parameter::index()).
  void accumulate(Gradients& out) const;

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Matrix value;
    const Matrix* external = nullptr;
    Matrix grad;
    bool needs_grad = false;
    int param_index = -1;
    Backward backward;
  };
  std::vector<Node> nodes_;
};

inline const Matrix& Var::value() const { return tape_->value(id_); }

}  // namespace schemadst::tensor

#endif  // SCHEMADST_TENSOR_TAPE_H_
