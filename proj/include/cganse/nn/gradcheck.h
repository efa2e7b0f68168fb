// cganse/nn/gradcheck.h

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

#ifndef CGANSE_NN_GRADCHECK_H_
#define CGANSE_NN_GRADCHECK_H_

#include <functional>
#include <string>
#include <vector>

#include "cganse/nn/tape.h"

namespace cganse::nn::inline CGANSE_NN_ABI {

struct GradCheckReport {
  double max_rel_error = 0;
  std::string worst;  // "name[index]"
  std::size_t checked = 0;
};

// Compares the backward pass of a scalar loss against central differences
// for every element of every parameter in `params` (to check an input,
// wrap it in a Parameter). `loss` must build a fresh graph on the given tape
// and be deterministic (reseed any dropout RNG inside). Relative error is
// |a - n| / max(|a|, |n|, abs_floor). When max_per_param > 0 only that many
// evenly spaced elements per parameter are perturbed.
GradCheckReport GradCheck(const std::function<Var(Tape &)> &loss,
                          const std::vector<Parameter *> &params, double h = 1e-5,
                          double abs_floor = 1e-6, std::size_t max_per_param = 0);

}  // namespace cganse::nn::inline CGANSE_NN_ABI

#endif  // CGANSE_NN_GRADCHECK_H_
