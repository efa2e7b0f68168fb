// cganse/pix2pix/losses.h

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

#ifndef CGANSE_PIX2PIX_LOSSES_H_
#define CGANSE_PIX2PIX_LOSSES_H_

#include "cganse/nn/tape.h"

namespace cganse::pix2pix::inline CGANSE_NN_ABI {

inline constexpr double kProbClamp = 1e-12;
inline constexpr double kDefaultL1Weight = 100.0;

struct GanLosses {
  double d_loss = 0;      // -[log d_real + log(1 - d_fake)]
  double g_adv_loss = 0;  // -log d_fake (non-saturating)
};

// Probabilities are clamped to [kProbClamp, 1 - kProbClamp].
GanLosses ComputeGanLosses(double d_real, double d_fake);

// lambda * mean |g_output - target|.
double L1Term(const nn::Tensor &g_output, const nn::Tensor &target, double lambda);

// g_adv_loss + lambda * mean |g_output - target|.
double TotalGLoss(double g_adv_loss, const nn::Tensor &g_output, const nn::Tensor &target,
                  double lambda = kDefaultL1Weight);

// Graph versions used for training; averaged over the batch.
nn::Var DiscriminatorLoss(nn::Tape &tape, nn::Var d_real, nn::Var d_fake);

struct GeneratorLossParts {
  nn::Var total = nullptr;
  nn::Var adversarial = nullptr;
  nn::Var l1 = nullptr;  // unweighted mean |G(y) - x|
};
GeneratorLossParts GeneratorLoss(nn::Tape &tape, nn::Var d_fake, nn::Var g_output,
                                 const nn::Tensor &target, double lambda);

}  // namespace cganse::pix2pix::inline CGANSE_NN_ABI

#endif  // CGANSE_PIX2PIX_LOSSES_H_
