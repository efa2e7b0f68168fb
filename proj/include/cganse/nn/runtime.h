// cganse/nn/runtime.h

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

#ifndef CGANSE_NN_RUNTIME_H_
#define CGANSE_NN_RUNTIME_H_

#include "cganse/nn/tensor.h"

namespace cganse::nn::inline CGANSE_NN_ABI {

// Thread count used inside BLAS calls. Results are bitwise reproducible
// for a fixed count.
void SetBlasThreads(int n);

}  // namespace cganse::nn::inline CGANSE_NN_ABI

#endif  // CGANSE_NN_RUNTIME_H_
