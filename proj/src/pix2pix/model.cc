// src/pix2pix/model.cc

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

#include "cganse/pix2pix/model.h"

#include <random>
#include <stdexcept>

#include "cganse/dsp/stft.h"
#include "cganse/nn/tape.h"

namespace cganse::pix2pix::inline CGANSE_NN_ABI {

namespace {

constexpr char kFormat[] = "cganse-pix2pix";

struct Slot {
  std::string name;
  nn::Tensor *tensor;
};

std::vector<Slot> Slots(Pix2PixModel &m) {
  std::vector<Slot> out;
  for (nn::Parameter *p : m.g->Params()) out.push_back({p->name, &p->value});
  for (auto &[n, t] : m.g->Buffers()) out.push_back({n, t});
  for (nn::Parameter *p : m.d->Params()) out.push_back({p->name, &p->value});
  for (auto &[n, t] : m.d->Buffers()) out.push_back({n, t});
  return out;
}

}  // namespace

Pix2PixModel::Pix2PixModel(const NetConfig &cfg)
    : net(cfg), g(std::make_unique<Generator>(cfg)), d(std::make_unique<Discriminator>(cfg)) {}

nn::Checkpoint ToCheckpoint(Pix2PixModel &model) {
  nn::Checkpoint ck;
  nlohmann::ordered_json arch = model.net.ToJson();
  arch["kernel"] = kKernel;
  arch["discriminator_blocks"] = kDiscriminatorBlocks;
  ck.meta["format"] = kFormat;
  ck.meta["architecture"] = arch;
  ck.meta["norm_scale"] = model.norm.scale;
  ck.meta["seed"] = model.seed;
  ck.meta["config"] = model.config;
  ck.meta["counters"] = {{"iterations", model.counters.iterations},
                         {"d_steps", model.counters.d_steps},
                         {"g_steps", model.counters.g_steps}};
  for (const Slot &s : Slots(model)) ck.tensors.emplace_back(s.name, *s.tensor);
  return ck;
}

std::unique_ptr<Pix2PixModel> FromCheckpoint(const nn::Checkpoint &ck) {
  if (ck.meta.value("format", std::string()) != kFormat)
    throw std::runtime_error("checkpoint is not a pix2pix model");
  NetConfig cfg;
  try {
    cfg = NetConfig::FromJson(ck.meta.at("architecture"));
  } catch (const std::exception &e) {
    throw std::runtime_error(std::string("checkpoint: bad architecture: ") + e.what());
  }
  auto m = std::make_unique<Pix2PixModel>(cfg);
  m->norm.scale = ck.meta.at("norm_scale").get<double>();
  dsp::CheckNorm(m->norm);
  m->seed = ck.meta.at("seed").get<std::uint64_t>();
  m->config = ck.meta.value("config", nlohmann::ordered_json::object());
  const auto &c = ck.meta.at("counters");
  m->counters = {c.at("iterations").get<std::int64_t>(), c.at("d_steps").get<std::int64_t>(),
                 c.at("g_steps").get<std::int64_t>()};
  std::vector<Slot> slots = Slots(*m);
  if (slots.size() != ck.tensors.size())
    throw std::runtime_error("checkpoint: expected " + std::to_string(slots.size()) +
                             " tensors, found " + std::to_string(ck.tensors.size()));
  for (const Slot &s : slots) *s.tensor = ck.Get(s.name, s.tensor->shape());
  return m;
}

void SaveModel(Pix2PixModel &model, const std::string &path) {
  nn::SaveCheckpoint(ToCheckpoint(model), path);
}

std::unique_ptr<Pix2PixModel> LoadModel(const std::string &path) {
  return FromCheckpoint(nn::LoadCheckpoint(path));
}

Eigen::MatrixXd GenerateChunk(Pix2PixModel &model, const Eigen::MatrixXd &chunk) {
  const int s = model.net.side;
  if (chunk.rows() != s || chunk.cols() != s)
    throw std::invalid_argument("GenerateChunk: chunk is not " + std::to_string(s) + " x " +
                                std::to_string(s));
  nn::Tensor in({1, 1, s, s});
  for (int r = 0; r < s; ++r)
    for (int c = 0; c < s; ++c) in[static_cast<std::size_t>(r) * s + c] = static_cast<nn::Real>(chunk(r, c));
  nn::Tape tape(false);
  std::mt19937_64 unused(0);
  nn::Var out = model.g->Forward(tape, tape.Constant(std::move(in)),
                                  model.net.batch_stats_inference ? Mode::kBatchStats : Mode::kEval,
                                  unused);
  Eigen::MatrixXd result(s, s);
  for (int r = 0; r < s; ++r)
    for (int c = 0; c < s; ++c) result(r, c) = out->value[static_cast<std::size_t>(r) * s + c];
  return result;
}

Waveform EnhancePix2Pix(const Waveform &w, Pix2PixModel &model) {
  ValidateWaveform(w);
  if (w.sample_rate != kDefaultSampleRate)
    throw std::invalid_argument("EnhancePix2Pix: expected a 16 kHz waveform");
  dsp::Spectrogram spec = dsp::StftPadded(w);
  const int side = model.net.side;
  std::vector<dsp::SpectroChunk> chunks = dsp::ChunkForGan(spec.mag, model.norm, side);
  for (dsp::SpectroChunk &c : chunks) c.data = GenerateChunk(model, c.data);
  Eigen::MatrixXd pooled = dsp::UnchunkFromGan(chunks, spec.frames());
  spec.mag = dsp::ExpandRows(pooled, spec.mag.topRows(dsp::kGanRows));
  return dsp::IstftToLength(spec, w.size());
}

}  // namespace cganse::pix2pix::inline CGANSE_NN_ABI
