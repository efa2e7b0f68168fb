// src/nn/layers.cc

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

#include "cganse/nn/layers.h"

namespace cganse::nn::inline CGANSE_NN_ABI {

void InitNormal(Tensor &t, double mean, double std, std::mt19937_64 &rng) {
  std::normal_distribution<double> d(mean, std);
  for (Real &v : t.values()) v = static_cast<Real>(d(rng));
}

Conv2dLayer::Conv2dLayer(const std::string &name, int in, int out, int kernel, int stride_,
                         int pad_, bool bias_)
    : weight(name + ".weight", {out, in, kernel, kernel}),
      bias(name + ".bias", {bias_ ? out : 0}),
      stride(stride_),
      pad(pad_),
      has_bias(bias_) {}

Var Conv2dLayer::Forward(Tape &tape, Var x) {
  return Conv2d(tape, x, tape.Param(weight), has_bias ? tape.Param(bias) : nullptr, stride, pad);
}

void Conv2dLayer::CollectParams(std::vector<Parameter *> &out) {
  out.push_back(&weight);
  if (has_bias) out.push_back(&bias);
}

ConvTranspose2dLayer::ConvTranspose2dLayer(const std::string &name, int in, int out, int kernel,
                                           int stride_, int pad_, int output_padding_, bool bias_)
    : weight(name + ".weight", {in, out, kernel, kernel}),
      bias(name + ".bias", {bias_ ? out : 0}),
      stride(stride_),
      pad(pad_),
      output_padding(output_padding_),
      has_bias(bias_) {}

Var ConvTranspose2dLayer::Forward(Tape &tape, Var x) {
  return ConvTranspose2d(tape, x, tape.Param(weight), has_bias ? tape.Param(bias) : nullptr,
                         stride, pad, output_padding);
}

void ConvTranspose2dLayer::CollectParams(std::vector<Parameter *> &out) {
  out.push_back(&weight);
  if (has_bias) out.push_back(&bias);
}

BatchNormLayer::BatchNormLayer(const std::string &n, int channels)
    : gamma(n + ".gamma", {channels}), beta(n + ".beta", {channels}), name(n) {
  gamma.value.Fill(1);
  stats.mean = Tensor({channels}, 0);
  stats.var = Tensor({channels}, 1);
}

Var BatchNormLayer::Forward(Tape &tape, Var x, Mode mode) {
  return BatchNorm(tape, x, tape.Param(gamma), tape.Param(beta), stats, mode);
}

void BatchNormLayer::CollectParams(std::vector<Parameter *> &out) {
  out.push_back(&gamma);
  out.push_back(&beta);
}

void BatchNormLayer::CollectBuffers(BufferList &out) {
  out.emplace_back(name + ".running_mean", &stats.mean);
  out.emplace_back(name + ".running_var", &stats.var);
}

DenseLayer::DenseLayer(const std::string &name, int in, int out)
    : weight(name + ".weight", {out, in}), bias(name + ".bias", {out}) {}

Var DenseLayer::Forward(Tape &tape, Var x) {
  return Dense(tape, x, tape.Param(weight), tape.Param(bias));
}

void DenseLayer::CollectParams(std::vector<Parameter *> &out) {
  out.push_back(&weight);
  out.push_back(&bias);
}

}  // namespace cganse::nn::inline CGANSE_NN_ABI
