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

#ifndef SCHEMADST_TENSOR_OPS_H_
#define SCHEMADST_TENSOR_OPS_H_

#include <random>
#include <vector>

#include "schemadst/tensor/tape.h"

namespace schemadst::tensor {

// Differentiable ops over Tape nodes. All results live on the inputs' tape.

Var matmul(Var a, Var b);     // (m x k)(k x n)
Var matmul_nt(Var a, Var b);  // (m x k)(n x k)^T
// Elementwise sum. Either side may be a single row, broadcast over the
// other's rows.
Var add(Var a, Var b);
Var scale(Var a, double factor);
Var add_n(const std::vector<Var>& terms);
Var sum(Var a);  // 1 x 1

// Tanh approximation of GELU.
Var gelu(Var a);
Var softmax_rows(Var a);
Var log_softmax_rows(Var a);
// Sets columns with valid[c] == false to -inf so a following softmax puts
// exactly zero weight on them.
Var mask_columns(Var a, const std::vector<bool>& valid);
// Row-wise layer normalisation with gain/bias rows of width a.cols().
Var layer_norm(Var a, Var gain, Var bias, double epsilon = 1e-12);
// Inverted dropout; identity when rate == 0.
Var dropout(Var a, double rate, std::mt19937_64& rng);

Var concat_rows(const std::vector<Var>& parts);
Var concat_cols(const std::vector<Var>& parts);
Var slice_rows(Var a, int start, int count);
Var slice_cols(Var a, int start, int count);
Var transpose(Var a);
Var gather_rows(Var table, const std::vector<int>& ids);

// Sum over rows of -log softmax(row)[target]; rows with target < 0 skipped.
Var cross_entropy(Var logits, const std::vector<int>& targets);
// Sum over elements of the logistic loss; elements with target < 0 skipped.
Var binary_cross_entropy_with_logits(Var logits,
                                     const std::vector<double>& targets);

// Plain (non-tape) helpers shared by evaluation code.
double gelu_value(double x);
Matrix softmax_rows_value(const Matrix& a);
double sigmoid_value(double x);

}  // namespace schemadst::tensor

#endif  // SCHEMADST_TENSOR_OPS_H_
