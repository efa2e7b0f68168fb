// src/pix2pix/losses.cc

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

#include "cganse/pix2pix/losses.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cganse/nn/ops.h"

namespace cganse::pix2pix::inline CGANSE_NN_ABI {

GanLosses ComputeGanLosses(double d_real, double d_fake) {
  auto c = [](double p) { return std::clamp(p, kProbClamp, 1.0 - kProbClamp); };
  GanLosses l;
  l.d_loss = -(std::log(c(d_real)) + std::log(1.0 - c(d_fake)));
  l.g_adv_loss = -std::log(c(d_fake));
  return l;
}

double L1Term(const nn::Tensor &g_output, const nn::Tensor &target, double lambda) {
  if (!g_output.SameShape(target) || g_output.empty())
    throw std::invalid_argument("L1Term: shape mismatch");
  double acc = 0;
  for (std::size_t i = 0; i < target.size(); ++i)
    acc += std::abs(double(g_output[i]) - double(target[i]));
  return lambda * acc / static_cast<double>(target.size());
}

double TotalGLoss(double g_adv_loss, const nn::Tensor &g_output, const nn::Tensor &target,
                  double lambda) {
  return g_adv_loss + L1Term(g_output, target, lambda);
}

nn::Var DiscriminatorLoss(nn::Tape &tape, nn::Var d_real, nn::Var d_fake) {
  return nn::Add(tape, nn::BinaryCrossEntropy(tape, d_real, 1.0, kProbClamp),
                 nn::BinaryCrossEntropy(tape, d_fake, 0.0, kProbClamp));
}

GeneratorLossParts GeneratorLoss(nn::Tape &tape, nn::Var d_fake, nn::Var g_output,
                                 const nn::Tensor &target, double lambda) {
  GeneratorLossParts parts;
  parts.adversarial = nn::BinaryCrossEntropy(tape, d_fake, 1.0, kProbClamp);
  parts.l1 = nn::MeanAbsError(tape, g_output, target);
  parts.total = nn::Add(tape, parts.adversarial, nn::Scale(tape, parts.l1, lambda));
  return parts;
}

}  // namespace cganse::pix2pix::inline CGANSE_NN_ABI
