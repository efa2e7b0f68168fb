// cganse/nn/checkpoint.h

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

#ifndef CGANSE_NN_CHECKPOINT_H_
#define CGANSE_NN_CHECKPOINT_H_

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cganse/nn/tensor.h"

namespace cganse::nn::inline CGANSE_NN_ABI {

// Container layout, all little endian:
//   8 bytes  magic "CGSECKPT"
//   u32      format version
//   u64      header length L
//   L bytes  JSON header (UTF-8); its "tensors" array lists {name, shape}
//            in payload order
//   payload  every tensor as raw 32-bit floats, in header order
inline constexpr char kCheckpointMagic[] = "CGSECKPT";
inline constexpr unsigned kCheckpointVersion = 1;

struct Checkpoint {
  nlohmann::ordered_json meta;  // everything except the tensor index
  std::vector<std::pair<std::string, Tensor>> tensors;

  // Throws std::runtime_error when absent or mis-shaped.
  const Tensor &Get(const std::string &name, const std::vector<int> &shape) const;
};

std::string EncodeCheckpoint(const Checkpoint &ckpt);
Checkpoint DecodeCheckpoint(const std::string &bytes);
void SaveCheckpoint(const Checkpoint &ckpt, const std::string &path);
Checkpoint LoadCheckpoint(const std::string &path);

}  // namespace cganse::nn::inline CGANSE_NN_ABI

#endif  // CGANSE_NN_CHECKPOINT_H_
