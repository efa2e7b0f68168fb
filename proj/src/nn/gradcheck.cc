// src/nn/gradcheck.cc

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

#include "cganse/nn/gradcheck.h"

#include <algorithm>
#include <cmath>

#include "cganse/nn/optim.h"

namespace cganse::nn::inline CGANSE_NN_ABI {

namespace {

double Evaluate(const std::function<Var(Tape &)> &loss) {
  Tape tape;
  return loss(tape)->value[0];
}

}  // namespace

GradCheckReport GradCheck(const std::function<Var(Tape &)> &loss,
                          const std::vector<Parameter *> &params, double h, double abs_floor,
                          std::size_t max_per_param) {
  ZeroGrads(params);
  {
    Tape tape;
    tape.Backward(loss(tape));
  }
  std::vector<Tensor> analytic;
  for (Parameter *p : params) analytic.push_back(p->grad);

  GradCheckReport report;
  for (std::size_t k = 0; k < params.size(); ++k) {
    Parameter &p = *params[k];
    const std::size_t n = p.value.size();
    std::size_t step = 1;
    if (max_per_param > 0 && n > max_per_param) step = (n + max_per_param - 1) / max_per_param;
    for (std::size_t i = 0; i < n; i += step) {
      const Real saved = p.value[i];
      p.value[i] = static_cast<Real>(saved + h);
      double up = Evaluate(loss);
      p.value[i] = static_cast<Real>(saved - h);
      double down = Evaluate(loss);
      p.value[i] = saved;
      double numeric = (up - down) / (2 * h);
      double a = analytic[k][i];
      double rel = std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), abs_floor});
      ++report.checked;
      if (rel > report.max_rel_error) {
        report.max_rel_error = rel;
        report.worst = p.name + "[" + std::to_string(i) + "]";
      }
    }
  }
  ZeroGrads(params);
  return report;
}

}  // namespace cganse::nn::inline CGANSE_NN_ABI
