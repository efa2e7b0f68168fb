// src/nn/tensor.cc

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

#include "cganse/nn/tensor.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cganse::nn::inline CGANSE_NN_ABI {

std::size_t ShapeSize(const std::vector<int> &shape) {
  std::size_t n = 1;
  for (int d : shape) {
    if (d < 0) throw std::invalid_argument("negative tensor dimension");
    n *= static_cast<std::size_t>(d);
  }
  return n;
}

std::string ShapeString(const std::vector<int> &shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "x" : "") << shape[i];
  os << ']';
  return os.str();
}

Tensor::Tensor(std::vector<int> shape, Real fill)
    : shape_(std::move(shape)), values_(ShapeSize(shape_), fill) {}

Tensor::Tensor(std::vector<int> shape, std::vector<Real> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  if (values_.size() != ShapeSize(shape_))
    throw std::invalid_argument("Tensor: " + std::to_string(values_.size()) +
                                " values for shape " + ShapeString(shape_));
}

Tensor Tensor::Reshaped(std::vector<int> shape) const {
  if (ShapeSize(shape) != values_.size())
    throw std::invalid_argument("Reshaped: " + ShapeString(shape_) + " -> " + ShapeString(shape));
  return Tensor(std::move(shape), values_);
}

void Tensor::Fill(Real v) { std::fill(values_.begin(), values_.end(), v); }

void Tensor::Add(const Tensor &o) {
  if (!SameShape(o))
    throw std::invalid_argument("Tensor::Add: " + ShapeString(shape_) + " vs " +
                                ShapeString(o.shape_));
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
}

bool Tensor::AllFinite() const {
  for (Real v : values_)
    if (!std::isfinite(v)) return false;
  return true;
}

Parameter::Parameter(std::string n, std::vector<int> shape)
    : name(std::move(n)), value(shape), grad(shape) {}

}  // namespace cganse::nn::inline CGANSE_NN_ABI
