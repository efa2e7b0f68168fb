// src/nn/runtime.cc

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

#include "cganse/nn/runtime.h"

#include <cblas.h>

#include <stdexcept>

namespace cganse::nn::inline CGANSE_NN_ABI {

void SetBlasThreads(int n) {
  if (n < 1) throw std::invalid_argument("SetBlasThreads: need at least one thread");
  openblas_set_num_threads(n);
}

}  // namespace cganse::nn::inline CGANSE_NN_ABI
