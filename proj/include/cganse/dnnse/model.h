// cganse/dnnse/model.h

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

#ifndef CGANSE_DNNSE_MODEL_H_
#define CGANSE_DNNSE_MODEL_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "cganse/corpus/waveform.h"
#include "cganse/dnnse/features.h"
#include "cganse/nn/checkpoint.h"
#include "cganse/nn/layers.h"

namespace cganse::dnnse::inline CGANSE_NN_ABI {

inline constexpr double kInitStd = 0.02;
inline constexpr double kMinStd = 1e-6;  // normalisation floor

// Feed-forward mask estimator: ReLU hidden layers, sigmoid outputs.
class DnnSeNet {
 public:
  DnnSeNet(int input_dim, std::vector<int> hidden, int outputs = kNumBands);
  nn::Var Forward(nn::Tape &tape, nn::Var x);
  void Init(std::mt19937_64 &rng);
  std::vector<nn::Parameter *> Params();

  int input_dim() const { return input_dim_; }
  int outputs() const { return outputs_; }
  const std::vector<int> &hidden() const { return hidden_; }

 private:
  int input_dim_, outputs_;
  std::vector<int> hidden_;
  std::vector<nn::DenseLayer> layers_;
};

struct DnnSeConfig {
  std::vector<int> hidden = {1024, 1024, 1024};
  int epochs = 30;
  int batch_size = 1024;
  double lr = 0.1;
  double momentum = 0.9;
  double lr_decay = 0.5;  // applied when the validation loss does not improve
  std::uint64_t seed = 1;

  void Validate() const;
  nlohmann::ordered_json ToJson() const;
};

// One utterance: T x D features and T x 64 IRM targets.
struct DnnSeExample {
  Eigen::MatrixXd features;
  Eigen::MatrixXd target;
};

// Features of noisy = clean + noise with the oracle IRM as target.
DnnSeExample MakeExample(const Waveform &clean, const Waveform &noise, const dsp::FilterBank &bank);

struct DnnSeModel {
  DnnSeModel(int input_dim, std::vector<int> hidden);

  DnnSeNet net;
  Eigen::VectorXd feat_mean, feat_std;
  std::uint64_t seed = 0;
  nlohmann::ordered_json config;
  std::int64_t steps = 0;
};

struct DnnSeEpochRecord {
  int epoch = 0;
  double train_loss = 0;  // full pass after the epoch
  double val_loss = 0;
  double lr = 0;
};

using DnnSeCallback = std::function<void(const DnnSeEpochRecord &)>;

// Mini-batch SGD on MSE(sigmoid output, IRM). Normalisation statistics come
// from the training frames. val may be empty (then no lr decay happens).
DnnSeModel TrainDnnSe(const std::vector<DnnSeExample> &train, const std::vector<DnnSeExample> &val,
                      const DnnSeConfig &cfg, const DnnSeCallback &callback = nullptr);

// T x 64 mask for raw (unnormalised) features.
Eigen::MatrixXd PredictMask(DnnSeModel &model, const Eigen::MatrixXd &features);
double MaskMse(DnnSeModel &model, const std::vector<DnnSeExample> &data);

nn::Checkpoint ToCheckpoint(DnnSeModel &model);
DnnSeModel FromCheckpoint(const nn::Checkpoint &ckpt);
void SaveModel(DnnSeModel &model, const std::string &path);
DnnSeModel LoadModel(const std::string &path);

Waveform EnhanceDnnSe(const Waveform &w, DnnSeModel &model, const dsp::FilterBank &bank);

}  // namespace cganse::dnnse::inline CGANSE_NN_ABI

#endif  // CGANSE_DNNSE_MODEL_H_
