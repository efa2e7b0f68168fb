// cganse/nn/layers.h

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

#ifndef CGANSE_NN_LAYERS_H_
#define CGANSE_NN_LAYERS_H_

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cganse/nn/ops.h"

namespace cganse::nn::inline CGANSE_NN_ABI {

// Named non-trainable state saved with a model (batch-norm running stats).
using BufferList = std::vector<std::pair<std::string, Tensor *>>;

// Fills with N(mean, std^2) draws.
void InitNormal(Tensor &t, double mean, double std, std::mt19937_64 &rng);
inline void InitNormal(Parameter &p, double mean, double std, std::mt19937_64 &rng) {
  InitNormal(p.value, mean, std, rng);
}

class Conv2dLayer {
 public:
  Conv2dLayer(const std::string &name, int in, int out, int kernel, int stride, int pad,
              bool bias = true);
  Var Forward(Tape &tape, Var x);
  void CollectParams(std::vector<Parameter *> &out);

  Parameter weight;  // out x in x k x k
  Parameter bias;    // out (empty when disabled)
  int stride, pad;
  bool has_bias;
};

class ConvTranspose2dLayer {
 public:
  ConvTranspose2dLayer(const std::string &name, int in, int out, int kernel, int stride, int pad,
                       int output_padding, bool bias = true);
  Var Forward(Tape &tape, Var x);
  void CollectParams(std::vector<Parameter *> &out);

  Parameter weight;  // in x out x k x k
  Parameter bias;
  int stride, pad, output_padding;
  bool has_bias;
};

class BatchNormLayer {
 public:
  BatchNormLayer(const std::string &name, int channels);
  Var Forward(Tape &tape, Var x, Mode mode);
  void CollectParams(std::vector<Parameter *> &out);
  void CollectBuffers(BufferList &out);

  Parameter gamma, beta;
  BatchNormStats stats;
  std::string name;
};

class DenseLayer {
 public:
  DenseLayer(const std::string &name, int in, int out);
  Var Forward(Tape &tape, Var x);
  void CollectParams(std::vector<Parameter *> &out);

  Parameter weight;  // out x in
  Parameter bias;    // out
};

}  // namespace cganse::nn::inline CGANSE_NN_ABI

#endif  // CGANSE_NN_LAYERS_H_
