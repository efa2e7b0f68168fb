// cganse/pix2pix/model.h

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

#ifndef CGANSE_PIX2PIX_MODEL_H_
#define CGANSE_PIX2PIX_MODEL_H_

#include <cstdint>
#include <memory>
#include <string>

#include <Eigen/Dense>

#include "json.hpp"

#include "cganse/corpus/waveform.h"
#include "cganse/dsp/chunk.h"
#include "cganse/nn/checkpoint.h"
#include "cganse/pix2pix/net.h"

namespace cganse::pix2pix::inline CGANSE_NN_ABI {

struct TrainCounters {
  std::int64_t iterations = 0;
  std::int64_t d_steps = 0;
  std::int64_t g_steps = 0;
};

// Generator + discriminator with everything needed to reproduce inference.
struct Pix2PixModel {
  explicit Pix2PixModel(const NetConfig &cfg);

  NetConfig net;
  std::unique_ptr<Generator> g;
  std::unique_ptr<Discriminator> d;
  dsp::NormState norm;
  std::uint64_t seed = 0;
  nlohmann::ordered_json config;  // training configuration echo
  TrainCounters counters;
};

nn::Checkpoint ToCheckpoint(Pix2PixModel &model);
// Validates the architecture against every tensor shape.
std::unique_ptr<Pix2PixModel> FromCheckpoint(const nn::Checkpoint &ckpt);
void SaveModel(Pix2PixModel &model, const std::string &path);
std::unique_ptr<Pix2PixModel> LoadModel(const std::string &path);

// Eval-mode generator on one normalised side x side chunk.
Eigen::MatrixXd GenerateChunk(Pix2PixModel &model, const Eigen::MatrixXd &chunk);

// stft -> pooled, padded, normalised chunks -> G (eval) -> denormalise ->
// un-pad -> expand rows with the noisy profile, zero top bin -> istft with the
// noisy phase -> trim to the input length. The model is not modified.
Waveform EnhancePix2Pix(const Waveform &w, Pix2PixModel &model);

}  // namespace cganse::pix2pix::inline CGANSE_NN_ABI

#endif  // CGANSE_PIX2PIX_MODEL_H_
