// cganse/pix2pix/train.h

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

#ifndef CGANSE_PIX2PIX_TRAIN_H_
#define CGANSE_PIX2PIX_TRAIN_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cganse/corpus/waveform.h"
#include "cganse/dsp/chunk.h"
#include "cganse/nn/optim.h"
#include "cganse/pix2pix/losses.h"
#include "cganse/pix2pix/model.h"

namespace cganse::pix2pix::inline CGANSE_NN_ABI {

// Noise-specific front-ends are trained on one noise type, noise-general
// ones on all of them.
enum class FrontEndKind { kNoiseSpecific, kNoiseGeneral };
std::string FrontEndKindName(FrontEndKind k);
FrontEndKind ParseFrontEndKind(const std::string &s);

struct TrainConfig {
  int epochs = 10;
  int batch_size = 1;
  int g_steps_per_iter = 2;
  double l1_weight = kDefaultL1Weight;
  nn::AdamOptions adam;  // lr 2e-4, beta1 0.5, beta2 0.999, eps 1e-8
  std::uint64_t seed = 0;
  FrontEndKind front_end_kind = FrontEndKind::kNoiseGeneral;
  NetConfig net;

  void Validate() const;
  nlohmann::ordered_json ToJson() const;
};

struct LossRecord {
  std::int64_t iteration = 0;
  double d_loss = 0;
  double g_adv = 0;
  double g_l1 = 0;  // unweighted mean |G(y) - x| of the last G step
};

// "iteration d_loss g_adv g_l1"
std::string FormatLossRecord(const LossRecord &r);

struct TrainResult {
  std::unique_ptr<Pix2PixModel> model;
  std::vector<LossRecord> history;
};

// Global scale: the largest pooled magnitude over all spectrograms.
dsp::NormState FitNorm(const std::vector<Eigen::MatrixXd> &mags, int side);

struct ChunkDataset {
  std::vector<dsp::SpectroChunk> noisy;  // y
  std::vector<dsp::SpectroChunk> clean;  // x
  dsp::NormState norm;
};

// STFTs the aligned noisy/clean waveform lists, fits the scale over both
// (unless `norm` is given) and chunks them with the training layout.
ChunkDataset BuildChunkDataset(const std::vector<Waveform> &noisy,
                               const std::vector<Waveform> &clean, int side,
                               const dsp::NormState *norm = nullptr);

using LossCallback = std::function<void(const LossRecord &)>;

// Per iteration: one discriminator step on (y, x) vs (y, G(y)) with G(y)
// detached, then g_steps_per_iter generator steps on the same batch, each
// with a fresh forward pass. Pairs are reshuffled every epoch from the seed.
TrainResult Train(const ChunkDataset &data, const TrainConfig &cfg,
                  const LossCallback &on_iteration = {});

}  // namespace cganse::pix2pix::inline CGANSE_NN_ABI

#endif  // CGANSE_PIX2PIX_TRAIN_H_
