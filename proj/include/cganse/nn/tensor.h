// cganse/nn/tensor.h

// Copyright 2026  cganse authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef CGANSE_NN_TENSOR_H_
#define CGANSE_NN_TENSOR_H_

#include <cstddef>
#include <string>
#include <vector>

// The engine is compiled twice: 32-bit storage for training and inference,
// 64-bit for gradient checking. The inline namespace keeps the two builds'
// symbols apart.
#ifdef CGANSE_NN_DOUBLE
#define CGANSE_NN_ABI f64
#else
#define CGANSE_NN_ABI f32
#endif

namespace cganse::nn::inline CGANSE_NN_ABI {

#ifdef CGANSE_NN_DOUBLE
using Real = double;
#else
using Real = float;
#endif

std::size_t ShapeSize(const std::vector<int> &shape);
std::string ShapeString(const std::vector<int> &shape);

// Dense row-major array.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<int> shape, Real fill = 0);
  Tensor(std::vector<int> shape, std::vector<Real> values);

  const std::vector<int> &shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  int dim(int i) const { return shape_.at(i); }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  Real *data() { return values_.data(); }
  const Real *data() const { return values_.data(); }
  Real &operator[](std::size_t i) { return values_[i]; }
  Real operator[](std::size_t i) const { return values_[i]; }
  std::vector<Real> &values() { return values_; }
  const std::vector<Real> &values() const { return values_; }

  bool SameShape(const Tensor &o) const { return shape_ == o.shape_; }
  // Same values, new shape of equal size.
  Tensor Reshaped(std::vector<int> shape) const;
  void Fill(Real v);
  // this += o (same shape).
  void Add(const Tensor &o);
  bool AllFinite() const;

 private:
  std::vector<int> shape_;
  std::vector<Real> values_;
};

// A trainable tensor with its gradient accumulator and a stable name used by
// checkpoints.
struct Parameter {
  Parameter() = default;
  Parameter(std::string name, std::vector<int> shape);

  std::string name;
  Tensor value;
  Tensor grad;

  void ZeroGrad() { grad.Fill(0); }
};

}  // namespace cganse::nn::inline CGANSE_NN_ABI

#endif  // CGANSE_NN_TENSOR_H_
