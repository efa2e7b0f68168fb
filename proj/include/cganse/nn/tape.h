// cganse/nn/tape.h

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

#ifndef CGANSE_NN_TAPE_H_
#define CGANSE_NN_TAPE_H_

#include <functional>
#include <initializer_list>
#include <memory>
#include <vector>

#include "cganse/nn/tensor.h"

namespace cganse::nn::inline CGANSE_NN_ABI {

// One recorded value. `backward` reads `grad` and pushes it into the inputs.
struct Node {
  Tensor value;
  Tensor grad;  // allocated lazily
  bool requires_grad = false;
  Parameter *param = nullptr;
  std::function<void(Node &self)> backward;

  // Gradient accumulator, zero-initialised on first use.
  Tensor &Grad();
};

using Var = Node *;

// kTrain: batch statistics with running-stat updates, dropout on.
// kEval: running statistics, dropout off.
// kBatchStats: batch statistics without updates, dropout off.
enum class Mode { kTrain, kEval, kBatchStats };

// Records executed ops in order; Backward visits them in exact reverse
// order. A tape is single use.
class Tape {
 public:
  Tape() = default;
  // record_grads = false builds no backward graph (inference); parameters
  // then enter as constants.
  explicit Tape(bool record_grads) : record_grads_(record_grads) {}
  Tape(const Tape &) = delete;
  Tape &operator=(const Tape &) = delete;

  Var Constant(Tensor value);
  Var Input(Tensor value, bool requires_grad);
  // Leaf bound to a parameter; its gradient is added into p.grad by Backward.
  Var Param(Parameter &p);

  // Adds an op output. The backward closure is kept only when some input
  // requires a gradient.
  Var Record(Tensor value, std::initializer_list<Var> inputs,
             std::function<void(Node &self)> backward);

  // Seeds d(loss)/d(loss) = 1 for a single-element loss and runs backward.
  void Backward(Var loss);

  std::size_t size() const { return nodes_.size(); }

 private:
  std::vector<std::unique_ptr<Node>> nodes_;
  bool used_ = false;
  bool record_grads_ = true;
};

}  // namespace cganse::nn::inline CGANSE_NN_ABI

#endif  // CGANSE_NN_TAPE_H_
