// src/nn/tape.cc

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

#include "cganse/nn/tape.h"

#include <stdexcept>

namespace cganse::nn::inline CGANSE_NN_ABI {

Tensor &Node::Grad() {
  if (grad.empty() && !value.empty()) grad = Tensor(value.shape());
  return grad;
}

Var Tape::Constant(Tensor value) { return Input(std::move(value), false); }

Var Tape::Input(Tensor value, bool requires_grad) {
  auto n = std::make_unique<Node>();
  n->value = std::move(value);
  n->requires_grad = requires_grad;
  nodes_.push_back(std::move(n));
  return nodes_.back().get();
}

Var Tape::Param(Parameter &p) {
  Var v = Input(p.value, record_grads_);
  v->param = &p;
  return v;
}

Var Tape::Record(Tensor value, std::initializer_list<Var> inputs,
                 std::function<void(Node &self)> backward) {
#ifndef NDEBUG
  if (!value.AllFinite()) throw std::runtime_error("non-finite value in forward pass");
#endif
  auto n = std::make_unique<Node>();
  n->value = std::move(value);
  for (Var in : inputs)
    if (in != nullptr && in->requires_grad) n->requires_grad = true;
  if (n->requires_grad) n->backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return nodes_.back().get();
}

void Tape::Backward(Var loss) {
  if (used_) throw std::logic_error("Tape::Backward called twice");
  used_ = true;
  if (loss->value.size() != 1) throw std::invalid_argument("Backward: loss must be a scalar");
  if (!loss->requires_grad) return;
  loss->Grad()[0] = 1;
  for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
    Node &n = **it;
    if (n.grad.empty()) continue;
    if (n.backward) n.backward(n);
    if (n.param != nullptr) n.param->grad.Add(n.grad);
  }
}

}  // namespace cganse::nn::inline CGANSE_NN_ABI
