// src/pix2pix/train.cc

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

#include "cganse/pix2pix/train.h"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>
#include <stdexcept>

#include "cganse/dsp/stft.h"
#include "cganse/nn/tape.h"

namespace cganse::pix2pix::inline CGANSE_NN_ABI {

namespace {

// Stacks chunks [begin, end) into an N x 1 x side x side tensor.
nn::Tensor Stack(const std::vector<dsp::SpectroChunk> &chunks, const std::vector<std::size_t> &order,
                 std::size_t begin, std::size_t end, int side) {
  const int n = static_cast<int>(end - begin);
  nn::Tensor t({n, 1, side, side});
  const std::size_t plane = static_cast<std::size_t>(side) * side;
  for (int b = 0; b < n; ++b) {
    const Eigen::MatrixXd &m = chunks[order[begin + b]].data;
    for (int r = 0; r < side; ++r)
      for (int c = 0; c < side; ++c)
        t[b * plane + static_cast<std::size_t>(r) * side + c] = static_cast<nn::Real>(m(r, c));
  }
  return t;
}

}  // namespace

std::string FrontEndKindName(FrontEndKind k) {
  return k == FrontEndKind::kNoiseSpecific ? "noise_specific" : "noise_general";
}

FrontEndKind ParseFrontEndKind(const std::string &s) {
  if (s == "noise_specific") return FrontEndKind::kNoiseSpecific;
  if (s == "noise_general") return FrontEndKind::kNoiseGeneral;
  throw std::invalid_argument("unknown front-end kind '" + s + "'");
}

void TrainConfig::Validate() const {
  net.Validate();
  if (epochs < 1 || batch_size < 1 || g_steps_per_iter < 1)
    throw std::invalid_argument("TrainConfig: epochs, batch_size and g_steps_per_iter must be >= 1");
  if (!(l1_weight >= 0)) throw std::invalid_argument("TrainConfig: l1_weight must be >= 0");
  if (!(adam.lr > 0)) throw std::invalid_argument("TrainConfig: learning rate must be > 0");
}

nlohmann::ordered_json TrainConfig::ToJson() const {
  return {{"epochs", epochs},
          {"batch_size", batch_size},
          {"g_steps_per_iter", g_steps_per_iter},
          {"l1_weight", l1_weight},
          {"adam", {{"lr", adam.lr}, {"beta1", adam.beta1}, {"beta2", adam.beta2}, {"eps", adam.eps}}},
          {"seed", seed},
          {"front_end_kind", FrontEndKindName(front_end_kind)},
          {"net", net.ToJson()}};
}

std::string FormatLossRecord(const LossRecord &r) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%lld %.6f %.6f %.6f", static_cast<long long>(r.iteration),
                r.d_loss, r.g_adv, r.g_l1);
  return buf;
}

dsp::NormState FitNorm(const std::vector<Eigen::MatrixXd> &mags, int side) {
  double m = 0;
  for (const auto &mag : mags) m = std::max(m, dsp::MaxPooledMagnitude(mag, side));
  if (!(m > 0)) throw std::invalid_argument("FitNorm: all-zero training magnitudes");
  return dsp::NormState{m};
}

ChunkDataset BuildChunkDataset(const std::vector<Waveform> &noisy,
                               const std::vector<Waveform> &clean, int side,
                               const dsp::NormState *norm) {
  if (noisy.size() != clean.size())
    throw std::invalid_argument("BuildChunkDataset: noisy/clean count mismatch");
  if (noisy.empty()) throw std::invalid_argument("BuildChunkDataset: empty dataset");
  std::vector<Eigen::MatrixXd> ny, cx;
  for (std::size_t i = 0; i < noisy.size(); ++i) {
    if (noisy[i].size() != clean[i].size())
      throw std::invalid_argument("BuildChunkDataset: noisy/clean length mismatch");
    ny.push_back(dsp::Stft(noisy[i]).mag);
    cx.push_back(dsp::Stft(clean[i]).mag);
  }
  ChunkDataset ds;
  if (norm != nullptr) {
    dsp::CheckNorm(*norm);
    ds.norm = *norm;
  } else {
    std::vector<Eigen::MatrixXd> all = ny;
    all.insert(all.end(), cx.begin(), cx.end());
    ds.norm = FitNorm(all, side);
  }
  ds.noisy = dsp::ChunkForTraining(ny, ds.norm, side);
  ds.clean = dsp::ChunkForTraining(cx, ds.norm, side);
  return ds;
}

TrainResult Train(const ChunkDataset &data, const TrainConfig &cfg,
                  const LossCallback &on_iteration) {
  cfg.Validate();
  if (data.noisy.empty()) throw std::invalid_argument("Train: empty dataset");
  if (data.noisy.size() != data.clean.size())
    throw std::invalid_argument("Train: noisy/clean chunk count mismatch");
  dsp::CheckNorm(data.norm);
  const int side = cfg.net.side;
  for (std::size_t i = 0; i < data.noisy.size(); ++i) {
    for (const dsp::SpectroChunk *c : {&data.noisy[i], &data.clean[i]}) {
      if (c->norm.scale != data.norm.scale)
        throw std::invalid_argument("Train: chunk normalised with a different scale");
      if (c->data.rows() != side || c->data.cols() != side)
        throw std::invalid_argument("Train: chunk size does not match the network side");
    }
  }

  TrainResult result;
  result.model = std::make_unique<Pix2PixModel>(cfg.net);
  Pix2PixModel &m = *result.model;
  m.norm = data.norm;
  m.seed = cfg.seed;
  m.config = cfg.ToJson();

  std::mt19937_64 init_rng(cfg.seed);
  m.g->Init(init_rng);
  m.d->Init(init_rng);
  std::mt19937_64 shuffle_rng(cfg.seed ^ 0x5DEECE66DULL);
  std::mt19937_64 dropout_rng(cfg.seed ^ 0x2545F4914F6CDD1DULL);

  nn::Adam opt_g(m.g->Params(), cfg.adam), opt_d(m.d->Params(), cfg.adam);
  std::vector<std::size_t> order(data.noisy.size());
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      const nn::Tensor y = Stack(data.noisy, order, start, end, side);
      const nn::Tensor x = Stack(data.clean, order, start, end, side);
      LossRecord rec;

      // Discriminator step; G(y) enters as a constant.
      nn::Tensor fake;
      {
        nn::Tape tape(false);
        fake = m.g->Forward(tape, tape.Constant(y), Mode::kTrain, dropout_rng)->value;
      }
      opt_d.ZeroGrad();
      {
        nn::Tape tape;
        nn::Var d_real = m.d->Forward(tape, tape.Constant(y), tape.Constant(x), Mode::kTrain);
        nn::Var d_fake = m.d->Forward(tape, tape.Constant(y), tape.Constant(fake), Mode::kTrain);
        nn::Var loss = DiscriminatorLoss(tape, d_real, d_fake);
        rec.d_loss = loss->value[0];
        tape.Backward(loss);
      }
      opt_d.Step();
      ++m.counters.d_steps;

      for (int k = 0; k < cfg.g_steps_per_iter; ++k) {
        opt_g.ZeroGrad();
        opt_d.ZeroGrad();
        nn::Tape tape;
        nn::Var g_out = m.g->Forward(tape, tape.Constant(y), Mode::kTrain, dropout_rng);
        nn::Var d_fake = m.d->Forward(tape, tape.Constant(y), g_out, Mode::kTrain);
        GeneratorLossParts parts = GeneratorLoss(tape, d_fake, g_out, x, cfg.l1_weight);
        rec.g_adv = parts.adversarial->value[0];
        rec.g_l1 = parts.l1->value[0];
        tape.Backward(parts.total);
        opt_g.Step();
        ++m.counters.g_steps;
      }
      opt_d.ZeroGrad();

      rec.iteration = ++m.counters.iterations;
      result.history.push_back(rec);
      if (on_iteration) on_iteration(rec);
    }
  }
  return result;
}

}  // namespace cganse::pix2pix::inline CGANSE_NN_ABI
