// cganse/pix2pix/net.h

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

#ifndef CGANSE_PIX2PIX_NET_H_
#define CGANSE_PIX2PIX_NET_H_

#include <memory>
#include <random>
#include <vector>

#include "json.hpp"

#include "cganse/nn/layers.h"

namespace cganse::pix2pix::inline CGANSE_NN_ABI {

using nn::Mode;
using nn::Parameter;
using nn::Tape;
using nn::Var;

inline constexpr int kKernel = 5;
inline constexpr int kStride = 2;
inline constexpr int kPad = 2;
inline constexpr double kLeakySlope = 0.2;
inline constexpr double kDropout = 0.5;
inline constexpr int kDropoutBlocks = 3;
inline constexpr int kDiscriminatorBlocks = 4;

// Architecture descriptor. Channels at encoder level i are
// min(base_channels 2^i, channel_cap).
struct NetConfig {
  int side = 64;
  int base_channels = 64;
  int channel_cap = 128;
  // Inference normalises with the statistics of the chunk being generated,
  // as in training, instead of the running averages.
  bool batch_stats_inference = true;

  void Validate() const;
  int Levels() const;  // log2(side)
  int Channels(int level) const;
  // Input channels of decoder block j, after the skip concatenation.
  int DecoderInputChannels(int j) const;
  nlohmann::ordered_json ToJson() const;
  static NetConfig FromJson(const nlohmann::ordered_json &j);
  bool operator==(const NetConfig &) const = default;
};

// U-Net: encoder conv 5x5/2 -> BN -> leaky ReLU 0.2; decoder conv-transpose
// 5x5/2 -> BN -> dropout (first three blocks) -> ReLU, each decoder block
// after the first reading [up-path, mirrored encoder map]; last block has
// one output channel and tanh. Batch norm is left out of the first encoder
// block and of any block whose output map is 1x1.
class Generator {
 public:
  explicit Generator(const NetConfig &cfg);

  // y: N x 1 x side x side in [-1, 1]. rng drives dropout in train mode.
  Var Forward(Tape &tape, Var y, Mode mode, std::mt19937_64 &rng);
  // Weights N(0, 0.02), BN scale N(1, 0.02), shifts and biases 0.
  void Init(std::mt19937_64 &rng);
  std::vector<Parameter *> Params();
  nn::BufferList Buffers();
  const NetConfig &config() const { return cfg_; }

 private:
  NetConfig cfg_;
  std::vector<std::unique_ptr<nn::Conv2dLayer>> enc_;
  std::vector<std::unique_ptr<nn::BatchNormLayer>> enc_bn_;  // null where skipped
  std::vector<std::unique_ptr<nn::ConvTranspose2dLayer>> dec_;
  std::vector<std::unique_ptr<nn::BatchNormLayer>> dec_bn_;
};

// Four conv 5x5/2 blocks with leaky ReLU (BN on all but the first and on no
// 1x1 map), flattened into one sigmoid unit. Input: condition || candidate.
class Discriminator {
 public:
  explicit Discriminator(const NetConfig &cfg);

  // Returns N x 1 probabilities.
  Var Forward(Tape &tape, Var condition, Var candidate, Mode mode);
  void Init(std::mt19937_64 &rng);
  std::vector<Parameter *> Params();
  nn::BufferList Buffers();
  int FlattenDim() const { return flatten_dim_; }

 private:
  NetConfig cfg_;
  std::vector<std::unique_ptr<nn::Conv2dLayer>> conv_;
  std::vector<std::unique_ptr<nn::BatchNormLayer>> bn_;
  std::unique_ptr<nn::DenseLayer> head_;
  int flatten_dim_ = 0;
};

}  // namespace cganse::pix2pix::inline CGANSE_NN_ABI

#endif  // CGANSE_PIX2PIX_NET_H_
