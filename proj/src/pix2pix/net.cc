// src/pix2pix/net.cc

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

#include "cganse/pix2pix/net.h"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cganse/nn/ops.h"

namespace cganse::pix2pix::inline CGANSE_NN_ABI {

namespace {

void InitLayerParams(const std::vector<Parameter *> &ps, std::mt19937_64 &rng) {
  for (Parameter *p : ps) {
    const std::string &n = p->name;
    auto ends_with = [&n](const std::string &s) {
      return n.size() >= s.size() && n.compare(n.size() - s.size(), s.size(), s) == 0;
    };
    if (ends_with(".weight"))
      nn::InitNormal(*p, 0.0, 0.02, rng);
    else if (ends_with(".gamma"))
      nn::InitNormal(*p, 1.0, 0.02, rng);
    else
      p->value.Fill(0);
  }
}

}  // namespace

void NetConfig::Validate() const {
  if (side < 8 || (side & (side - 1)) != 0)
    throw std::invalid_argument("pix2pix: side must be a power of 2 >= 8, got " +
                                std::to_string(side));
  if (side > 256) throw std::invalid_argument("pix2pix: side larger than the 256 spectrogram rows");
  if (base_channels < 1 || channel_cap < 1)
    throw std::invalid_argument("pix2pix: channel counts must be positive");
}

int NetConfig::Levels() const {
  int l = 0;
  while ((1 << l) < side) ++l;
  return l;
}

int NetConfig::Channels(int level) const {
  long c = base_channels;
  for (int i = 0; i < level && c < channel_cap; ++i) c *= 2;
  return static_cast<int>(std::min<long>(c, channel_cap));
}

nlohmann::ordered_json NetConfig::ToJson() const {
  return {{"side", side}, {"base_channels", base_channels}, {"channel_cap", channel_cap},
          {"inference_bn", batch_stats_inference ? "batch" : "running"}};
}

NetConfig NetConfig::FromJson(const nlohmann::ordered_json &j) {
  NetConfig c;
  c.side = j.at("side").get<int>();
  c.base_channels = j.at("base_channels").get<int>();
  c.channel_cap = j.at("channel_cap").get<int>();
  const std::string bn = j.value("inference_bn", std::string("batch"));
  if (bn != "batch" && bn != "running")
    throw std::invalid_argument("pix2pix: inference_bn must be batch or running, got " + bn);
  c.batch_stats_inference = bn == "batch";
  c.Validate();
  return c;
}

Generator::Generator(const NetConfig &cfg) : cfg_(cfg) {
  cfg_.Validate();
  const int levels = cfg_.Levels();
  for (int i = 0; i < levels; ++i) {
    const int in = i == 0 ? 1 : cfg_.Channels(i - 1), out = cfg_.Channels(i);
    const int out_side = cfg_.side >> (i + 1);
    const bool bn = i != 0 && out_side > 1;
    const std::string name = "g.enc" + std::to_string(i);
    enc_.push_back(std::make_unique<nn::Conv2dLayer>(name, in, out, kKernel, kStride, kPad, !bn));
    enc_bn_.push_back(bn ? std::make_unique<nn::BatchNormLayer>(name + ".bn", out) : nullptr);
  }
  for (int j = 0; j < levels; ++j) {
    const bool last = j == levels - 1;
    const int in = cfg_.DecoderInputChannels(j);
    const int out = last ? 1 : cfg_.Channels(levels - 2 - j);
    const std::string name = "g.dec" + std::to_string(j);
    dec_.push_back(std::make_unique<nn::ConvTranspose2dLayer>(name, in, out, kKernel, kStride,
                                                              kPad, 1, last));
    dec_bn_.push_back(last ? nullptr : std::make_unique<nn::BatchNormLayer>(name + ".bn", out));
  }
}

int NetConfig::DecoderInputChannels(int j) const {
  const int levels = Levels();
  if (j == 0) return Channels(levels - 1);
  return 2 * Channels(levels - 1 - j);
}

Var Generator::Forward(Tape &tape, Var y, Mode mode, std::mt19937_64 &rng) {
  const auto &s = y->value.shape();
  if (s.size() != 4 || s[1] != 1 || s[2] != cfg_.side || s[3] != cfg_.side)
    throw std::invalid_argument("Generator: expected N x 1 x " + std::to_string(cfg_.side) + " x " +
                                std::to_string(cfg_.side) + ", got " + nn::ShapeString(s));
  const int levels = cfg_.Levels();
  std::vector<Var> skips;
  Var h = y;
  for (int i = 0; i < levels; ++i) {
    h = enc_[i]->Forward(tape, h);
    if (enc_bn_[i]) h = enc_bn_[i]->Forward(tape, h, mode);
    h = nn::LeakyRelu(tape, h, kLeakySlope);
    skips.push_back(h);
  }
  for (int j = 0; j < levels; ++j) {
    if (j > 0) h = nn::Concat(tape, h, skips[levels - 1 - j]);
    h = dec_[j]->Forward(tape, h);
    if (j == levels - 1) return nn::Tanh(tape, h);
    h = dec_bn_[j]->Forward(tape, h, mode);
    if (j < kDropoutBlocks) h = nn::Dropout(tape, h, kDropout, mode, rng);
    h = nn::Relu(tape, h);
  }
  return h;  // not reached
}

void Generator::Init(std::mt19937_64 &rng) { InitLayerParams(Params(), rng); }

std::vector<Parameter *> Generator::Params() {
  std::vector<Parameter *> ps;
  for (std::size_t i = 0; i < enc_.size(); ++i) {
    enc_[i]->CollectParams(ps);
    if (enc_bn_[i]) enc_bn_[i]->CollectParams(ps);
  }
  for (std::size_t j = 0; j < dec_.size(); ++j) {
    dec_[j]->CollectParams(ps);
    if (dec_bn_[j]) dec_bn_[j]->CollectParams(ps);
  }
  return ps;
}

nn::BufferList Generator::Buffers() {
  nn::BufferList bs;
  for (auto &bn : enc_bn_)
    if (bn) bn->CollectBuffers(bs);
  for (auto &bn : dec_bn_)
    if (bn) bn->CollectBuffers(bs);
  return bs;
}

Discriminator::Discriminator(const NetConfig &cfg) : cfg_(cfg) {
  cfg_.Validate();
  int spatial = cfg_.side;
  for (int i = 0; i < kDiscriminatorBlocks; ++i) {
    const int in = i == 0 ? 2 : cfg_.Channels(i - 1), out = cfg_.Channels(i);
    spatial = nn::ConvOutSize(spatial, kKernel, kStride, kPad);
    const bool bn = i != 0 && spatial > 1;
    const std::string name = "d.conv" + std::to_string(i);
    conv_.push_back(std::make_unique<nn::Conv2dLayer>(name, in, out, kKernel, kStride, kPad, !bn));
    bn_.push_back(bn ? std::make_unique<nn::BatchNormLayer>(name + ".bn", out) : nullptr);
  }
  flatten_dim_ = cfg_.Channels(kDiscriminatorBlocks - 1) * spatial * spatial;
  head_ = std::make_unique<nn::DenseLayer>("d.head", flatten_dim_, 1);
}

Var Discriminator::Forward(Tape &tape, Var condition, Var candidate, Mode mode) {
  if (condition->value.shape() != candidate->value.shape())
    throw std::invalid_argument("Discriminator: condition/candidate shape mismatch");
  Var h = nn::Concat(tape, condition, candidate);
  if (h->value.dim(2) != cfg_.side || h->value.dim(3) != cfg_.side)
    throw std::invalid_argument("Discriminator: wrong input side " +
                                nn::ShapeString(h->value.shape()));
  for (std::size_t i = 0; i < conv_.size(); ++i) {
    h = conv_[i]->Forward(tape, h);
    if (bn_[i]) h = bn_[i]->Forward(tape, h, mode);
    h = nn::LeakyRelu(tape, h, kLeakySlope);
  }
  return nn::Sigmoid(tape, head_->Forward(tape, nn::Flatten(tape, h)));
}

void Discriminator::Init(std::mt19937_64 &rng) { InitLayerParams(Params(), rng); }

std::vector<Parameter *> Discriminator::Params() {
  std::vector<Parameter *> ps;
  for (std::size_t i = 0; i < conv_.size(); ++i) {
    conv_[i]->CollectParams(ps);
    if (bn_[i]) bn_[i]->CollectParams(ps);
  }
  head_->CollectParams(ps);
  return ps;
}

nn::BufferList Discriminator::Buffers() {
  nn::BufferList bs;
  for (auto &bn : bn_)
    if (bn) bn->CollectBuffers(bs);
  return bs;
}

}  // namespace cganse::pix2pix::inline CGANSE_NN_ABI
