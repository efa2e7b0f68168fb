// cganse/asv/gmm.h

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

#ifndef CGANSE_ASV_GMM_H_
#define CGANSE_ASV_GMM_H_

#include <vector>

#include <Eigen/Dense>

namespace cganse::asv {

// Diagonal-covariance Gaussian mixture. Rows of means/vars are components.
struct GmmModel {
  Eigen::VectorXd weights;  // K
  Eigen::MatrixXd means;    // K x D
  Eigen::MatrixXd vars;     // K x D

  int num_components() const { return static_cast<int>(weights.size()); }
  int dim() const { return static_cast<int>(means.cols()); }
  // Throws std::invalid_argument on inconsistent shapes, a weight vector off
  // the simplex or non-positive variances.
  void Validate() const;
};

// T x K matrix of log(w_k N(x_t; m_k, v_k)).
Eigen::MatrixXd ComponentLogLikelihoods(const GmmModel &g, const Eigen::MatrixXd &x);
// Per-frame log p(x_t), log-sum-exp over components.
Eigen::VectorXd FrameLogLikelihoods(const GmmModel &g, const Eigen::MatrixXd &x);
// Posteriors T x K; frame log-likelihoods go to *frame_ll when given.
Eigen::MatrixXd Posteriors(const GmmModel &g, const Eigen::MatrixXd &x,
                           Eigen::VectorXd *frame_ll = nullptr);

// Zeroth, first and second order statistics under g.
struct SufficientStats {
  Eigen::VectorXd n;   // K soft counts
  Eigen::MatrixXd f;   // K x D sum of gamma x
  Eigen::MatrixXd s;   // K x D sum of gamma x^2
  double log_likelihood = 0;  // total over frames
};
SufficientStats Accumulate(const GmmModel &g, const Eigen::MatrixXd &x);

// 1e-4 times the per-dimension variance of x. Throws on constant dimensions.
inline constexpr double kVarFloorFactor = 1e-4;
Eigen::VectorXd VarianceFloor(const Eigen::MatrixXd &x, double factor = kVarFloorFactor);

// Runs `iters` EM iterations in place. Returns the total log-likelihood of
// the model before each iteration and after the last (iters + 1 values).
// Components that receive no mass keep their parameters with weight 0.
std::vector<double> RunEm(GmmModel &g, const Eigen::MatrixXd &x, int iters,
                          const Eigen::VectorXd &var_floor);

// Splits components, heaviest first, until target_k are reached (at most a
// doubling): the pair gets m +- 0.2 sigma and half the weight each.
inline constexpr double kSplitOffset = 0.2;
GmmModel SplitComponents(const GmmModel &g, int target_k);

struct EmOptions {
  int iters_per_split = 5;
  int final_iters = 10;
  double var_floor_factor = kVarFloorFactor;
};

// Log-likelihood traces of every EM run during training, in order.
struct UbmTrainLog {
  std::vector<std::vector<double>> runs;
};

// Global Gaussian, then repeated splitting up to k with EM after every split
// and `final_iters` more at the end.
GmmModel TrainUbm(const Eigen::MatrixXd &x, int k, const EmOptions &opts = {},
                  UbmTrainLog *log = nullptr);

// Means-only MAP adaptation: m'_k = (n_k xbar_k + r m_k) / (n_k + r).
inline constexpr double kDefaultRelevance = 16.0;
GmmModel MapAdapt(const GmmModel &ubm, const Eigen::MatrixXd &x,
                  double relevance = kDefaultRelevance);

// Average per-frame log-likelihood ratio of model against ubm.
double LlrScore(const GmmModel &model, const GmmModel &ubm, const Eigen::MatrixXd &x);

}  // namespace cganse::asv

#endif  // CGANSE_ASV_GMM_H_
