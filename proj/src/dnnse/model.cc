// src/dnnse/model.cc

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

#include "cganse/dnnse/model.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "cganse/dsp/stft.h"
#include "cganse/nn/optim.h"
#include "cganse/nn/tape.h"

namespace cganse::dnnse::inline CGANSE_NN_ABI {

namespace {

constexpr char kFormat[] = "cganse-dnnse";
constexpr int kEvalChunk = 2048;

nn::Tensor RowsToTensor(const Eigen::MatrixXd &m) {
  nn::Tensor t({static_cast<int>(m.rows()), static_cast<int>(m.cols())});
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      t[static_cast<std::size_t>(r * m.cols() + c)] = static_cast<nn::Real>(m(r, c));
  return t;
}

// All frames of a set, features normalised, as flat row-major arrays.
struct FrameSet {
  int n = 0, dim = 0, outs = 0;
  std::vector<nn::Real> x, y;
};

FrameSet Flatten(const std::vector<DnnSeExample> &data, const Eigen::VectorXd &mean,
                 const Eigen::VectorXd &std) {
  FrameSet s;
  s.dim = static_cast<int>(mean.size());
  s.outs = kNumBands;
  for (const auto &e : data) s.n += static_cast<int>(e.features.rows());
  s.x.reserve(static_cast<std::size_t>(s.n) * s.dim);
  s.y.reserve(static_cast<std::size_t>(s.n) * s.outs);
  for (const auto &e : data)
    for (Eigen::Index t = 0; t < e.features.rows(); ++t) {
      for (int d = 0; d < s.dim; ++d)
        s.x.push_back(static_cast<nn::Real>((e.features(t, d) - mean(d)) / std(d)));
      for (int j = 0; j < s.outs; ++j) s.y.push_back(static_cast<nn::Real>(e.target(t, j)));
    }
  return s;
}

nn::Tensor Gather(const std::vector<nn::Real> &src, int width, const std::vector<int> &rows,
                  std::size_t begin, std::size_t end) {
  nn::Tensor t({static_cast<int>(end - begin), width});
  for (std::size_t i = begin; i < end; ++i)
    std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(rows[i]) * width, width,
                t.data() + (i - begin) * width);
  return t;
}

double SetLoss(DnnSeNet &net, const FrameSet &s) {
  if (s.n == 0) return 0.0;
  std::vector<int> rows(s.n);
  std::iota(rows.begin(), rows.end(), 0);
  double sse = 0;
  for (int b = 0; b < s.n; b += kEvalChunk) {
    int e = std::min(s.n, b + kEvalChunk);
    nn::Tape tape(false);
    nn::Var out = net.Forward(tape, tape.Constant(Gather(s.x, s.dim, rows, b, e)));
    const nn::Real *p = out->value.data();
    const nn::Real *y = s.y.data() + static_cast<std::size_t>(b) * s.outs;
    for (std::size_t i = 0; i < out->value.size(); ++i) {
      double d = static_cast<double>(p[i]) - y[i];
      sse += d * d;
    }
  }
  return sse / (static_cast<double>(s.n) * s.outs);
}

void CheckExamples(const std::vector<DnnSeExample> &data, int dim) {
  for (const auto &e : data) {
    if (e.features.cols() != dim || e.target.cols() != kNumBands ||
        e.features.rows() != e.target.rows())
      throw std::invalid_argument("TrainDnnSe: inconsistent example shapes");
  }
}

}  // namespace

DnnSeNet::DnnSeNet(int input_dim, std::vector<int> hidden, int outputs)
    : input_dim_(input_dim), outputs_(outputs), hidden_(std::move(hidden)) {
  if (input_dim <= 0 || outputs <= 0) throw std::invalid_argument("DnnSeNet: bad dimensions");
  int in = input_dim;
  for (std::size_t i = 0; i < hidden_.size(); ++i) {
    if (hidden_[i] <= 0) throw std::invalid_argument("DnnSeNet: bad hidden width");
    layers_.emplace_back("h" + std::to_string(i), in, hidden_[i]);
    in = hidden_[i];
  }
  layers_.emplace_back("out", in, outputs);
}

nn::Var DnnSeNet::Forward(nn::Tape &tape, nn::Var x) {
  for (std::size_t i = 0; i + 1 < layers_.size(); ++i) x = nn::Relu(tape, layers_[i].Forward(tape, x));
  return nn::Sigmoid(tape, layers_.back().Forward(tape, x));
}

void DnnSeNet::Init(std::mt19937_64 &rng) {
  for (auto &l : layers_) {
    nn::InitNormal(l.weight, 0.0, kInitStd, rng);
    l.bias.value.Fill(0);
  }
}

std::vector<nn::Parameter *> DnnSeNet::Params() {
  std::vector<nn::Parameter *> out;
  for (auto &l : layers_) l.CollectParams(out);
  return out;
}

void DnnSeConfig::Validate() const {
  if (hidden.empty()) throw std::invalid_argument("dnnse: need at least one hidden layer");
  for (int h : hidden)
    if (h <= 0) throw std::invalid_argument("dnnse: hidden widths must be positive");
  if (epochs < 0) throw std::invalid_argument("dnnse: epochs must be >= 0");
  if (batch_size <= 0) throw std::invalid_argument("dnnse: batch_size must be positive");
  if (!(lr > 0)) throw std::invalid_argument("dnnse: lr must be positive");
  if (momentum < 0 || momentum >= 1) throw std::invalid_argument("dnnse: momentum in [0, 1)");
  if (!(lr_decay > 0 && lr_decay <= 1)) throw std::invalid_argument("dnnse: lr_decay in (0, 1]");
}

nlohmann::ordered_json DnnSeConfig::ToJson() const {
  return {{"hidden", hidden},         {"epochs", epochs}, {"batch_size", batch_size},
          {"lr", lr},                 {"momentum", momentum}, {"lr_decay", lr_decay},
          {"seed", seed}};
}

DnnSeExample MakeExample(const Waveform &clean, const Waveform &noise, const dsp::FilterBank &bank) {
  if (clean.size() != noise.size()) throw std::invalid_argument("MakeExample: length mismatch");
  Waveform noisy = clean;
  for (std::size_t i = 0; i < noisy.size(); ++i) noisy.samples[i] += noise.samples[i];
  DnnSeExample e;
  e.features = ExtractFeatures(noisy, bank).frames;
  e.target = Irm(EnergyPair(clean, noise, bank));
  return e;
}

DnnSeModel::DnnSeModel(int input_dim, std::vector<int> hidden)
    : net(input_dim, std::move(hidden)),
      feat_mean(Eigen::VectorXd::Zero(input_dim)),
      feat_std(Eigen::VectorXd::Ones(input_dim)) {}

DnnSeModel TrainDnnSe(const std::vector<DnnSeExample> &train, const std::vector<DnnSeExample> &val,
                      const DnnSeConfig &cfg, const DnnSeCallback &callback) {
  cfg.Validate();
  if (train.empty()) throw std::invalid_argument("TrainDnnSe: empty training set");
  const int dim = static_cast<int>(train.front().features.cols());
  CheckExamples(train, dim);
  CheckExamples(val, dim);

  DnnSeModel model(dim, cfg.hidden);
  model.seed = cfg.seed;
  model.config = cfg.ToJson();

  // Global per-feature statistics over the training frames.
  Eigen::Index frames = 0;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(dim), sq = Eigen::VectorXd::Zero(dim);
  for (const auto &e : train) {
    frames += e.features.rows();
    sum += e.features.colwise().sum().transpose();
    sq += e.features.array().square().colwise().sum().matrix().transpose();
  }
  if (frames == 0) throw std::invalid_argument("TrainDnnSe: training set has no frames");
  model.feat_mean = sum / static_cast<double>(frames);
  Eigen::VectorXd var = sq / static_cast<double>(frames) - model.feat_mean.array().square().matrix();
  model.feat_std = var.array().max(0.0).sqrt().max(kMinStd).matrix();

  FrameSet tr = Flatten(train, model.feat_mean, model.feat_std);
  FrameSet va = Flatten(val, model.feat_mean, model.feat_std);

  std::mt19937_64 rng(cfg.seed);
  model.net.Init(rng);
  std::mt19937_64 shuffle_rng(cfg.seed ^ 0x5DEECE66DULL);
  nn::Sgd sgd(model.net.Params(), {cfg.lr, cfg.momentum});

  std::vector<int> order(tr.n);
  std::iota(order.begin(), order.end(), 0);
  double best_val = va.n > 0 ? SetLoss(model.net, va) : 0.0;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    for (int b = 0; b < tr.n; b += cfg.batch_size) {
      const std::size_t e = std::min(tr.n, b + cfg.batch_size);
      nn::Tape tape;
      nn::Var out = model.net.Forward(tape, tape.Constant(Gather(tr.x, tr.dim, order, b, e)));
      nn::Var loss = nn::MeanSquaredError(tape, out, Gather(tr.y, tr.outs, order, b, e));
      tape.Backward(loss);
      sgd.Step();
      sgd.ZeroGrad();
      ++model.steps;
    }
    DnnSeEpochRecord rec;
    rec.epoch = epoch;
    rec.lr = sgd.lr();
    rec.train_loss = SetLoss(model.net, tr);
    if (va.n > 0) {
      rec.val_loss = SetLoss(model.net, va);
      if (rec.val_loss < best_val)
        best_val = rec.val_loss;
      else
        sgd.set_lr(sgd.lr() * cfg.lr_decay);
    }
    if (callback) callback(rec);
  }
  return model;
}

Eigen::MatrixXd PredictMask(DnnSeModel &model, const Eigen::MatrixXd &features) {
  if (features.cols() != model.net.input_dim())
    throw std::invalid_argument("PredictMask: feature dim " + std::to_string(features.cols()) +
                                ", model expects " + std::to_string(model.net.input_dim()));
  Eigen::MatrixXd norm = (features.rowwise() - model.feat_mean.transpose()).array().rowwise() /
                         model.feat_std.transpose().array();
  Eigen::MatrixXd mask(features.rows(), model.net.outputs());
  for (Eigen::Index b = 0; b < features.rows(); b += kEvalChunk) {
    Eigen::Index n = std::min<Eigen::Index>(kEvalChunk, features.rows() - b);
    nn::Tape tape(false);
    nn::Var out = model.net.Forward(tape, tape.Constant(RowsToTensor(norm.middleRows(b, n))));
    for (Eigen::Index r = 0; r < n; ++r)
      for (int j = 0; j < model.net.outputs(); ++j)
        mask(b + r, j) = out->value[static_cast<std::size_t>(r * model.net.outputs() + j)];
  }
  return mask;
}

double MaskMse(DnnSeModel &model, const std::vector<DnnSeExample> &data) {
  CheckExamples(data, model.net.input_dim());
  return SetLoss(model.net, Flatten(data, model.feat_mean, model.feat_std));
}

nn::Checkpoint ToCheckpoint(DnnSeModel &model) {
  nn::Checkpoint ck;
  ck.meta["format"] = kFormat;
  ck.meta["architecture"] = {{"input_dim", model.net.input_dim()},
                             {"hidden", model.net.hidden()},
                             {"outputs", model.net.outputs()},
                             {"hidden_activation", "relu"},
                             {"output_activation", "sigmoid"}};
  ck.meta["features"] = {{"mfcc", 57}, {"bands", kNumBands}, {"context", kContext}};
  ck.meta["seed"] = model.seed;
  ck.meta["config"] = model.config;
  ck.meta["steps"] = model.steps;
  const int d = model.net.input_dim();
  nn::Tensor mean({d}), sd({d});
  for (int i = 0; i < d; ++i) {
    mean[i] = static_cast<nn::Real>(model.feat_mean(i));
    sd[i] = static_cast<nn::Real>(model.feat_std(i));
  }
  ck.tensors.emplace_back("feat.mean", mean);
  ck.tensors.emplace_back("feat.std", sd);
  for (nn::Parameter *p : model.net.Params()) ck.tensors.emplace_back(p->name, p->value);
  return ck;
}

DnnSeModel FromCheckpoint(const nn::Checkpoint &ck) {
  if (ck.meta.value("format", std::string()) != kFormat)
    throw std::runtime_error("checkpoint is not a dnnse model");
  int input_dim = 0;
  std::vector<int> hidden;
  try {
    const auto &a = ck.meta.at("architecture");
    input_dim = a.at("input_dim").get<int>();
    hidden = a.at("hidden").get<std::vector<int>>();
    if (a.at("outputs").get<int>() != kNumBands) throw std::runtime_error("outputs != 64");
    const auto &f = ck.meta.at("features");
    if (f.at("bands").get<int>() != kNumBands || f.at("context").get<int>() != kContext ||
        input_dim != FeatureDim())
      throw std::runtime_error("feature layout differs from this extractor");
  } catch (const std::exception &e) {
    throw std::runtime_error(std::string("checkpoint: bad dnnse architecture: ") + e.what());
  }
  DnnSeModel m(input_dim, hidden);
  m.seed = ck.meta.at("seed").get<std::uint64_t>();
  m.config = ck.meta.value("config", nlohmann::ordered_json::object());
  m.steps = ck.meta.value("steps", std::int64_t{0});
  std::vector<nn::Parameter *> params = m.net.Params();
  if (ck.tensors.size() != params.size() + 2)
    throw std::runtime_error("checkpoint: expected " + std::to_string(params.size() + 2) +
                             " tensors, found " + std::to_string(ck.tensors.size()));
  const nn::Tensor &mean = ck.Get("feat.mean", {input_dim});
  const nn::Tensor &sd = ck.Get("feat.std", {input_dim});
  for (int i = 0; i < input_dim; ++i) {
    m.feat_mean(i) = mean[i];
    m.feat_std(i) = sd[i];
    if (!(m.feat_std(i) > 0)) throw std::runtime_error("checkpoint: non-positive feature std");
  }
  for (nn::Parameter *p : params) p->value = ck.Get(p->name, p->value.shape());
  return m;
}

void SaveModel(DnnSeModel &model, const std::string &path) {
  nn::SaveCheckpoint(ToCheckpoint(model), path);
}

DnnSeModel LoadModel(const std::string &path) { return FromCheckpoint(nn::LoadCheckpoint(path)); }

Waveform EnhanceDnnSe(const Waveform &w, DnnSeModel &model, const dsp::FilterBank &bank) {
  ValidateWaveform(w);
  Eigen::MatrixXd mask = PredictMask(model, ExtractFeatures(w, bank).frames);
  return ApplyBandMask(w, mask, bank);
}

}  // namespace cganse::dnnse::inline CGANSE_NN_ABI
