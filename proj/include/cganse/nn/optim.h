// cganse/nn/optim.h

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

#ifndef CGANSE_NN_OPTIM_H_
#define CGANSE_NN_OPTIM_H_

#include <cstdint>
#include <vector>

#include "cganse/nn/tensor.h"

namespace cganse::nn::inline CGANSE_NN_ABI {

void ZeroGrads(const std::vector<Parameter *> &params);

struct AdamOptions {
  double lr = 2e-4;
  double beta1 = 0.5;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with bias correction:
// m = b1 m + (1-b1) g, v = b2 v + (1-b2) g^2,
// p -= lr (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps).
class Adam {
 public:
  Adam(std::vector<Parameter *> params, AdamOptions opts = {});
  void Step();
  void ZeroGrad() { ZeroGrads(params_); }
  std::int64_t steps() const { return t_; }
  const AdamOptions &options() const { return opts_; }

 private:
  std::vector<Parameter *> params_;
  AdamOptions opts_;
  std::vector<std::vector<Real>> m_, v_;
  std::int64_t t_ = 0;
};

struct SgdOptions {
  double lr = 0.1;
  double momentum = 0.0;
};

// v = momentum v + g; p -= lr v. With momentum 0 this is p -= lr g.
class Sgd {
 public:
  Sgd(std::vector<Parameter *> params, SgdOptions opts = {});
  void Step();
  void ZeroGrad() { ZeroGrads(params_); }
  void set_lr(double lr) { opts_.lr = lr; }
  double lr() const { return opts_.lr; }
  std::int64_t steps() const { return t_; }

 private:
  std::vector<Parameter *> params_;
  SgdOptions opts_;
  std::vector<std::vector<double>> velocity_;
  std::int64_t t_ = 0;
};

}  // namespace cganse::nn::inline CGANSE_NN_ABI

#endif  // CGANSE_NN_OPTIM_H_
