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

#include "schemadst/tensor/ops.h"

#include <cmath>
#include <limits>

#include "schemadst/common/error.h"

namespace schemadst::tensor {
namespace {

constexpr double kGeluC = 0.7978845608028654;  // sqrt(2 / pi)
constexpr double kGeluA = 0.044715;

void require(bool ok, const char* what) {
  if (!ok) throw Error(what);
}

Tape& same_tape(Var a, Var b) {
  require(&a.tape() == &b.tape(), "operands live on different tapes");
  return a.tape();
}

}  // namespace

double gelu_value(double x) {
  return 0.5 * x * (1.0 + std::tanh(kGeluC * (x + kGeluA * x * x * x)));
}

double sigmoid_value(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Matrix softmax_rows_value(const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    const double m = a.row(r).maxCoeff();
    out.row(r) = (a.row(r).array() - m).exp();
    out.row(r) /= out.row(r).sum();
  }
  return out;
}

Var matmul(Var a, Var b) {
  Tape& t = same_tape(a, b);
  require(a.cols() == b.rows(), "matmul: inner dimensions differ");
  Matrix v(a.rows(), b.cols());
  v.noalias() = a.value() * b.value();
  const int ia = a.id(), ib = b.id();
  return t.push(std::move(v), t.needs_grad(ia) || t.needs_grad(ib),
                [ia, ib](Tape& t, int self) {
                  const Matrix& g = t.grad(self);
                  if (t.needs_grad(ia)) t.grad(ia).noalias() += g * t.value(ib).transpose();
                  if (t.needs_grad(ib)) t.grad(ib).noalias() += t.value(ia).transpose() * g;
                });
}

Var matmul_nt(Var a, Var b) {
  Tape& t = same_tape(a, b);
  require(a.cols() == b.cols(), "matmul_nt: inner dimensions differ");
  Matrix v(a.rows(), b.rows());
  v.noalias() = a.value() * b.value().transpose();
  const int ia = a.id(), ib = b.id();
  return t.push(std::move(v), t.needs_grad(ia) || t.needs_grad(ib),
                [ia, ib](Tape& t, int self) {
                  const Matrix& g = t.grad(self);
                  if (t.needs_grad(ia)) t.grad(ia).noalias() += g * t.value(ib);
                  if (t.needs_grad(ib)) t.grad(ib).noalias() += g.transpose() * t.value(ia);
                });
}

Var add(Var a, Var b) {
  Tape& t = same_tape(a, b);
  require(a.cols() == b.cols(), "add: column counts differ");
  const bool broadcast_b = b.rows() == 1 && a.rows() != 1;
  const bool broadcast_a = a.rows() == 1 && b.rows() != 1;
  require(broadcast_a || broadcast_b || a.rows() == b.rows(),
          "add: row counts differ");
  Matrix v;
  if (broadcast_b) {
    v = a.value();
    v.rowwise() += b.value().row(0);
  } else if (broadcast_a) {
    v = b.value();
    v.rowwise() += a.value().row(0);
  } else {
    v = a.value() + b.value();
  }
  const int ia = a.id(), ib = b.id();
  return t.push(std::move(v), t.needs_grad(ia) || t.needs_grad(ib),
                [ia, ib, broadcast_a, broadcast_b](Tape& t, int self) {
                  const Matrix& g = t.grad(self);
                  if (t.needs_grad(ia)) {
                    if (broadcast_a) t.grad(ia) += g.colwise().sum();
                    else t.grad(ia) += g;
                  }
                  if (t.needs_grad(ib)) {
                    if (broadcast_b) t.grad(ib) += g.colwise().sum();
                    else t.grad(ib) += g;
                  }
                });
}

Var scale(Var a, double factor) {
  Tape& t = a.tape();
  const int ia = a.id();
  return t.push(a.value() * factor, t.needs_grad(ia),
                [ia, factor](Tape& t, int self) {
                  t.grad(ia) += t.grad(self) * factor;
                });
}

Var add_n(const std::vector<Var>& terms) {
  require(!terms.empty(), "add_n: no terms");
  Tape& t = terms.front().tape();
  Matrix v = terms.front().value();
  bool needs = false;
  std::vector<int> ids;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0) {
      require(terms[i].rows() == v.rows() && terms[i].cols() == v.cols(),
              "add_n: shapes differ");
      v += terms[i].value();
    }
    ids.push_back(terms[i].id());
    needs = needs || t.needs_grad(terms[i].id());
  }
  return t.push(std::move(v), needs, [ids](Tape& t, int self) {
    for (int id : ids) {
      if (t.needs_grad(id)) t.grad(id) += t.grad(self);
    }
  });
}

Var sum(Var a) {
  Tape& t = a.tape();
  const int ia = a.id();
  Matrix v(1, 1);
  v(0, 0) = a.value().sum();
  return t.push(std::move(v), t.needs_grad(ia), [ia](Tape& t, int self) {
    t.grad(ia).array() += t.grad(self)(0, 0);
  });
}

Var gelu(Var a) {
  Tape& t = a.tape();
  const int ia = a.id();
  Matrix v = a.value().unaryExpr([](double x) { return gelu_value(x); });
  return t.push(std::move(v), t.needs_grad(ia), [ia](Tape& t, int self) {
    const Matrix& x = t.value(ia);
    const Matrix& g = t.grad(self);
    Matrix& gx = t.grad(ia);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double xi = x.data()[i];
      const double th = std::tanh(kGeluC * (xi + kGeluA * xi * xi * xi));
      const double d = 0.5 * (1.0 + th) +
                       0.5 * xi * (1.0 - th * th) * kGeluC *
                           (1.0 + 3.0 * kGeluA * xi * xi);
      gx.data()[i] += g.data()[i] * d;
    }
  });
}

Var softmax_rows(Var a) {
  Tape& t = a.tape();
  const int ia = a.id();
  Matrix p = softmax_rows_value(a.value());
  return t.push(std::move(p), t.needs_grad(ia), [ia](Tape& t, int self) {
    const Matrix& p = t.value(self);
    const Matrix& g = t.grad(self);
    Matrix& gx = t.grad(ia);
    for (Eigen::Index r = 0; r < p.rows(); ++r) {
      const double dot = p.row(r).dot(g.row(r));
      gx.row(r).array() += p.row(r).array() * (g.row(r).array() - dot);
    }
  });
}

Var log_softmax_rows(Var a) {
  Tape& t = a.tape();
  const int ia = a.id();
  const Matrix& x = a.value();
  Matrix v(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double m = x.row(r).maxCoeff();
    const double lse = m + std::log((x.row(r).array() - m).exp().sum());
    v.row(r) = x.row(r).array() - lse;
  }
  return t.push(std::move(v), t.needs_grad(ia), [ia](Tape& t, int self) {
    const Matrix& ls = t.value(self);
    const Matrix& g = t.grad(self);
    Matrix& gx = t.grad(ia);
    for (Eigen::Index r = 0; r < ls.rows(); ++r) {
      const double gs = g.row(r).sum();
      gx.row(r).array() += g.row(r).array() - ls.row(r).array().exp() * gs;
    }
  });
}

Var mask_columns(Var a, const std::vector<bool>& valid) {
  Tape& t = a.tape();
  require(static_cast<Eigen::Index>(valid.size()) == a.cols(),
          "mask_columns: mask width differs");
  const int ia = a.id();
  Matrix v = a.value();
  const double ninf = -std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    if (!valid[c]) v.col(c).setConstant(ninf);
  }
  return t.push(std::move(v), t.needs_grad(ia), [ia, valid](Tape& t, int self) {
    const Matrix& g = t.grad(self);
    Matrix& gx = t.grad(ia);
    for (Eigen::Index c = 0; c < g.cols(); ++c) {
      if (valid[c]) gx.col(c) += g.col(c);
    }
  });
}

Var layer_norm(Var a, Var gain, Var bias, double epsilon) {
  Tape& t = a.tape();
  require(gain.rows() == 1 && gain.cols() == a.cols() && bias.rows() == 1 &&
              bias.cols() == a.cols(),
          "layer_norm: gain/bias must be 1 x cols");
  const Matrix& x = a.value();
  const Eigen::Index n = x.cols();
  Matrix xhat(x.rows(), n);
  Matrix inv_std(x.rows(), 1);
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double mean = x.row(r).mean();
    const double var = (x.row(r).array() - mean).square().mean();
    inv_std(r, 0) = 1.0 / std::sqrt(var + epsilon);
    xhat.row(r) = (x.row(r).array() - mean) * inv_std(r, 0);
  }
  Matrix v = xhat;
  v.array().rowwise() *= gain.value().row(0).array();
  v.rowwise() += bias.value().row(0);
  const int ia = a.id(), ig = gain.id(), ib = bias.id();
  const bool needs = t.needs_grad(ia) || t.needs_grad(ig) || t.needs_grad(ib);
  return t.push(std::move(v), needs,
                [ia, ig, ib, xhat = std::move(xhat),
                 inv_std = std::move(inv_std)](Tape& t, int self) {
                  const Matrix& g = t.grad(self);
                  if (t.needs_grad(ig)) {
                    t.grad(ig) += (g.array() * xhat.array()).matrix().colwise().sum();
                  }
                  if (t.needs_grad(ib)) t.grad(ib) += g.colwise().sum();
                  if (!t.needs_grad(ia)) return;
                  const auto& gain = t.value(ig);
                  Matrix& gx = t.grad(ia);
                  const double n = static_cast<double>(g.cols());
                  for (Eigen::Index r = 0; r < g.rows(); ++r) {
                    const Eigen::ArrayXd dxhat =
                        (g.row(r).array() * gain.row(0).array()).transpose();
                    const Eigen::ArrayXd xh = xhat.row(r).array().transpose();
                    const double s1 = dxhat.sum();
                    const double s2 = (dxhat * xh).sum();
                    gx.row(r).array() +=
                        ((n * dxhat - s1 - xh * s2) * (inv_std(r, 0) / n))
                            .transpose();
                  }
                });
}

Var dropout(Var a, double rate, std::mt19937_64& rng) {
  if (rate <= 0.0) return a;
  require(rate < 1.0, "dropout: rate must be < 1");
  Tape& t = a.tape();
  const int ia = a.id();
  std::bernoulli_distribution keep(1.0 - rate);
  Matrix mask(a.rows(), a.cols());
  const double s = 1.0 / (1.0 - rate);
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    mask.data()[i] = keep(rng) ? s : 0.0;
  }
  Matrix v = a.value().cwiseProduct(mask);
  return t.push(std::move(v), t.needs_grad(ia),
                [ia, mask = std::move(mask)](Tape& t, int self) {
                  t.grad(ia) += t.grad(self).cwiseProduct(mask);
                });
}

Var concat_rows(const std::vector<Var>& parts) {
  require(!parts.empty(), "concat_rows: no parts");
  Tape& t = parts.front().tape();
  Eigen::Index rows = 0;
  const Eigen::Index cols = parts.front().cols();
  bool needs = false;
  for (const Var& p : parts) {
    require(p.cols() == cols, "concat_rows: column counts differ");
    rows += p.rows();
    needs = needs || t.needs_grad(p.id());
  }
  Matrix v(rows, cols);
  std::vector<std::pair<int, Eigen::Index>> where;
  Eigen::Index r = 0;
  for (const Var& p : parts) {
    v.middleRows(r, p.rows()) = p.value();
    where.emplace_back(p.id(), r);
    r += p.rows();
  }
  return t.push(std::move(v), needs, [where](Tape& t, int self) {
    const Matrix& g = t.grad(self);
    for (const auto& [id, r0] : where) {
      if (t.needs_grad(id)) {
        Matrix& gi = t.grad(id);
        gi += g.middleRows(r0, gi.rows());
      }
    }
  });
}

Var concat_cols(const std::vector<Var>& parts) {
  require(!parts.empty(), "concat_cols: no parts");
  Tape& t = parts.front().tape();
  const Eigen::Index rows = parts.front().rows();
  Eigen::Index cols = 0;
  bool needs = false;
  for (const Var& p : parts) {
    require(p.rows() == rows, "concat_cols: row counts differ");
    cols += p.cols();
    needs = needs || t.needs_grad(p.id());
  }
  Matrix v(rows, cols);
  std::vector<std::pair<int, Eigen::Index>> where;
  Eigen::Index c = 0;
  for (const Var& p : parts) {
    v.middleCols(c, p.cols()) = p.value();
    where.emplace_back(p.id(), c);
    c += p.cols();
  }
  return t.push(std::move(v), needs, [where](Tape& t, int self) {
    const Matrix& g = t.grad(self);
    for (const auto& [id, c0] : where) {
      if (t.needs_grad(id)) {
        Matrix& gi = t.grad(id);
        gi += g.middleCols(c0, gi.cols());
      }
    }
  });
}

Var slice_rows(Var a, int start, int count) {
  require(start >= 0 && count >= 0 && start + count <= a.rows(),
          "slice_rows: out of range");
  Tape& t = a.tape();
  const int ia = a.id();
  return t.push(a.value().middleRows(start, count), t.needs_grad(ia),
                [ia, start, count](Tape& t, int self) {
                  t.grad(ia).middleRows(start, count) += t.grad(self);
                });
}

Var slice_cols(Var a, int start, int count) {
  require(start >= 0 && count >= 0 && start + count <= a.cols(),
          "slice_cols: out of range");
  Tape& t = a.tape();
  const int ia = a.id();
  return t.push(a.value().middleCols(start, count), t.needs_grad(ia),
                [ia, start, count](Tape& t, int self) {
                  t.grad(ia).middleCols(start, count) += t.grad(self);
                });
}

Var transpose(Var a) {
  Tape& t = a.tape();
  const int ia = a.id();
  return t.push(a.value().transpose(), t.needs_grad(ia), [ia](Tape& t, int self) {
    t.grad(ia) += t.grad(self).transpose();
  });
}

Var gather_rows(Var table, const std::vector<int>& ids) {
  Tape& t = table.tape();
  const Matrix& tv = table.value();
  Matrix v(static_cast<Eigen::Index>(ids.size()), tv.cols());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    require(ids[i] >= 0 && ids[i] < tv.rows(), "gather_rows: id out of range");
    v.row(i) = tv.row(ids[i]);
  }
  const int it = table.id();
  return t.push(std::move(v), t.needs_grad(it), [it, ids](Tape& t, int self) {
    const Matrix& g = t.grad(self);
    Matrix& gt = t.grad(it);
    for (std::size_t i = 0; i < ids.size(); ++i) gt.row(ids[i]) += g.row(i);
  });
}

Var cross_entropy(Var logits, const std::vector<int>& targets) {
  require(static_cast<Eigen::Index>(targets.size()) == logits.rows(),
          "cross_entropy: one target per row required");
  Tape& t = logits.tape();
  const Matrix& x = logits.value();
  Matrix probs = softmax_rows_value(x);
  double loss = 0.0;
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const int y = targets[r];
    if (y < 0) continue;
    require(y < x.cols(), "cross_entropy: target out of range");
    const double m = x.row(r).maxCoeff();
    loss += m + std::log((x.row(r).array() - m).exp().sum()) - x(r, y);
  }
  Matrix v(1, 1);
  v(0, 0) = loss;
  const int ix = logits.id();
  return t.push(std::move(v), t.needs_grad(ix),
                [ix, targets, probs = std::move(probs)](Tape& t, int self) {
                  const double g = t.grad(self)(0, 0);
                  Matrix& gx = t.grad(ix);
                  for (Eigen::Index r = 0; r < probs.rows(); ++r) {
                    const int y = targets[r];
                    if (y < 0) continue;
                    gx.row(r) += g * probs.row(r);
                    gx(r, y) -= g;
                  }
                });
}

Var binary_cross_entropy_with_logits(Var logits,
                                     const std::vector<double>& targets) {
  require(static_cast<Eigen::Index>(targets.size()) == logits.value().size(),
          "binary_cross_entropy_with_logits: one target per element required");
  Tape& t = logits.tape();
  const Matrix& x = logits.value();
  double loss = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double z = x.data()[i];
    const double y = targets[i];
    if (y < 0) continue;
    loss += std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
  }
  Matrix v(1, 1);
  v(0, 0) = loss;
  const int ix = logits.id();
  return t.push(std::move(v), t.needs_grad(ix), [ix, targets](Tape& t, int self) {
    const double g = t.grad(self)(0, 0);
    const Matrix& x = t.value(ix);
    Matrix& gx = t.grad(ix);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (targets[i] < 0) continue;
      gx.data()[i] += g * (sigmoid_value(x.data()[i]) - targets[i]);
    }
  });
}

}  // namespace schemadst::tensor
