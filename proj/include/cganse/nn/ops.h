// cganse/nn/ops.h

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

#ifndef CGANSE_NN_OPS_H_
#define CGANSE_NN_OPS_H_

#include <random>

#include "cganse/nn/tape.h"

namespace cganse::nn::inline CGANSE_NN_ABI {

// floor((in + 2 pad - k) / stride) + 1
int ConvOutSize(int in, int k, int stride, int pad);

// x: N x C x H x W, w: K x C x k x k, b: K or nullptr. Cross-correlation with
// zero padding.
Var Conv2d(Tape &tape, Var x, Var w, Var b, int stride, int pad);

// x: N x C x H x W, w: C x K x k x k, b: K or nullptr. Output spatial size
// (H - 1) stride - 2 pad + k + output_padding. The forward map is the adjoint
// of Conv2d with the same kernel.
Var ConvTranspose2d(Tape &tape, Var x, Var w, Var b, int stride, int pad, int output_padding);

// Running statistics of a batch-norm layer.
struct BatchNormStats {
  Tensor mean;
  Tensor var;
};

// Per-channel normalisation over (N, H, W) of an N x C x H x W input (a rank
// 2 N x C input is treated as H = W = 1). Train mode uses the batch
// statistics (biased variance) and updates `stats` with
// s = (1 - momentum) s + momentum batch (unbiased variance for the running
// estimate); eval mode uses `stats`; kBatchStats normalises with the batch
// statistics and leaves `stats` alone.
Var BatchNorm(Tape &tape, Var x, Var gamma, Var beta, BatchNormStats &stats, Mode mode,
              double momentum = 0.1, double eps = 1e-5);

Var LeakyRelu(Tape &tape, Var x, double slope = 0.2);
Var Relu(Tape &tape, Var x);
Var Tanh(Tape &tape, Var x);
Var Sigmoid(Tape &tape, Var x);

// Train mode zeroes each element with probability p and scales survivors by
// 1 / (1 - p). Other modes, or p = 0, are the identity. Draws from rng only in
// train mode with p > 0.
Var Dropout(Tape &tape, Var x, double p, Mode mode, std::mt19937_64 &rng);

// Concatenation along dimension 1 of two N x C_i x H x W tensors.
Var Concat(Tape &tape, Var a, Var b);

// x: N x I, w: O x I, b: O or nullptr. y = x w^T + b.
Var Dense(Tape &tape, Var x, Var w, Var b);

// N x ... -> N x prod(...).
Var Flatten(Tape &tape, Var x);

Var Add(Tape &tape, Var a, Var b);
Var Scale(Tape &tape, Var a, double s);

// Scalar losses, averaged over all elements.
// mean |a - target|
Var MeanAbsError(Tape &tape, Var a, const Tensor &target);
// mean (a - target)^2
Var MeanSquaredError(Tape &tape, Var a, const Tensor &target);
// mean of -[t log p + (1 - t) log(1 - p)] with p clamped to
// [clamp, 1 - clamp].
Var BinaryCrossEntropy(Tape &tape, Var p, double target, double clamp = 1e-12);

}  // namespace cganse::nn::inline CGANSE_NN_ABI

#endif  // CGANSE_NN_OPS_H_
