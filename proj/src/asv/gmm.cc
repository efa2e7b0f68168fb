// src/asv/gmm.cc

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

#include "cganse/asv/gmm.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cganse::asv {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void CheckFeatures(const GmmModel &g, const Eigen::MatrixXd &x) {
  if (x.cols() != g.dim())
    throw std::invalid_argument("gmm: feature dim " + std::to_string(x.cols()) + ", model " +
                                std::to_string(g.dim()));
}

// Row-wise log-sum-exp; rows of all -inf give -inf.
Eigen::VectorXd LogSumExpRows(const Eigen::MatrixXd &a) {
  Eigen::VectorXd out(a.rows());
  for (Eigen::Index t = 0; t < a.rows(); ++t) {
    double m = a.row(t).maxCoeff();
    out(t) = m == kNegInf ? kNegInf : m + std::log((a.row(t).array() - m).exp().sum());
  }
  return out;
}

}  // namespace

void GmmModel::Validate() const {
  const Eigen::Index k = weights.size();
  if (k == 0 || means.rows() != k || vars.rows() != k || vars.cols() != means.cols() ||
      means.cols() == 0)
    throw std::invalid_argument("gmm: inconsistent shapes");
  if (weights.minCoeff() < 0 || std::abs(weights.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("gmm: weights are not on the simplex");
  if (!(vars.minCoeff() > 0)) throw std::invalid_argument("gmm: non-positive variance");
}

Eigen::MatrixXd ComponentLogLikelihoods(const GmmModel &g, const Eigen::MatrixXd &x) {
  CheckFeatures(g, x);
  const Eigen::MatrixXd inv = g.vars.cwiseInverse();
  const Eigen::MatrixXd m_inv = g.means.cwiseProduct(inv);
  Eigen::VectorXd c(g.num_components());
  for (int k = 0; k < g.num_components(); ++k) {
    c(k) = g.weights(k) > 0 ? std::log(g.weights(k)) : kNegInf;
    c(k) -= 0.5 * (g.dim() * kLog2Pi + g.vars.row(k).array().log().sum() +
                   g.means.row(k).dot(m_inv.row(k)));
  }
  Eigen::MatrixXd ll = x.cwiseAbs2() * inv.transpose();
  ll *= -0.5;
  ll.noalias() += x * m_inv.transpose();
  ll.rowwise() += c.transpose();
  return ll;
}

Eigen::VectorXd FrameLogLikelihoods(const GmmModel &g, const Eigen::MatrixXd &x) {
  return LogSumExpRows(ComponentLogLikelihoods(g, x));
}

Eigen::MatrixXd Posteriors(const GmmModel &g, const Eigen::MatrixXd &x, Eigen::VectorXd *frame_ll) {
  Eigen::MatrixXd ll = ComponentLogLikelihoods(g, x);
  Eigen::VectorXd lse = LogSumExpRows(ll);
  ll.colwise() -= lse;
  if (frame_ll) *frame_ll = lse;
  return ll.array().exp().matrix();
}

SufficientStats Accumulate(const GmmModel &g, const Eigen::MatrixXd &x) {
  Eigen::VectorXd frame_ll;
  Eigen::MatrixXd post = Posteriors(g, x, &frame_ll);
  SufficientStats st;
  st.n = post.colwise().sum().transpose();
  st.f = post.transpose() * x;
  st.s = post.transpose() * x.cwiseAbs2();
  st.log_likelihood = frame_ll.sum();
  return st;
}

Eigen::VectorXd VarianceFloor(const Eigen::MatrixXd &x, double factor) {
  if (x.rows() < 2) throw std::invalid_argument("gmm: need at least two frames");
  Eigen::RowVectorXd mean = x.colwise().mean();
  Eigen::VectorXd var = ((x.rowwise() - mean).cwiseAbs2().colwise().sum() / x.rows()).transpose();
  for (Eigen::Index d = 0; d < var.size(); ++d)
    if (!(var(d) > 0))
      throw std::invalid_argument("gmm: feature dimension " + std::to_string(d) + " is constant");
  return factor * var;
}

std::vector<double> RunEm(GmmModel &g, const Eigen::MatrixXd &x, int iters,
                          const Eigen::VectorXd &var_floor) {
  CheckFeatures(g, x);
  if (var_floor.size() != g.dim()) throw std::invalid_argument("gmm: floor size mismatch");
  std::vector<double> trace;
  for (int it = 0; it < iters; ++it) {
    SufficientStats st = Accumulate(g, x);
    trace.push_back(st.log_likelihood);
    const double total = st.n.sum();
    for (int k = 0; k < g.num_components(); ++k) {
      const double n = st.n(k);
      g.weights(k) = n / total;
      if (!(n > 0)) continue;
      g.means.row(k) = st.f.row(k) / n;
      Eigen::RowVectorXd v = st.s.row(k) / n - g.means.row(k).cwiseAbs2();
      g.vars.row(k) = v.cwiseMax(var_floor.transpose());
    }
    g.weights /= g.weights.sum();
  }
  trace.push_back(FrameLogLikelihoods(g, x).sum());
  return trace;
}

GmmModel SplitComponents(const GmmModel &g, int target_k) {
  const int k = g.num_components();
  if (target_k < k || target_k > 2 * k)
    throw std::invalid_argument("gmm: split target must lie in [K, 2K]");
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.weights(a) > g.weights(b); });
  std::vector<bool> split(k, false);
  for (int i = 0; i < target_k - k; ++i) split[order[i]] = true;

  GmmModel out;
  out.weights.resize(target_k);
  out.means.resize(target_k, g.dim());
  out.vars.resize(target_k, g.dim());
  int row = 0;
  for (int c = 0; c < k; ++c) {
    if (!split[c]) {
      out.weights(row) = g.weights(c);
      out.means.row(row) = g.means.row(c);
      out.vars.row(row++) = g.vars.row(c);
      continue;
    }
    Eigen::RowVectorXd offset = kSplitOffset * g.vars.row(c).cwiseSqrt();
    for (double sign : {1.0, -1.0}) {
      out.weights(row) = 0.5 * g.weights(c);
      out.means.row(row) = g.means.row(c) + sign * offset;
      out.vars.row(row++) = g.vars.row(c);
    }
  }
  return out;
}

GmmModel TrainUbm(const Eigen::MatrixXd &x, int k, const EmOptions &opts, UbmTrainLog *log) {
  if (k < 1) throw std::invalid_argument("TrainUbm: K must be >= 1");
  if (x.rows() < k)
    throw std::invalid_argument("TrainUbm: " + std::to_string(x.rows()) + " frames for K = " +
                                std::to_string(k));
  if (opts.iters_per_split < 0 || opts.final_iters < 0)
    throw std::invalid_argument("TrainUbm: negative iteration count");
  const Eigen::VectorXd floor = VarianceFloor(x, opts.var_floor_factor);
  GmmModel g;
  g.weights = Eigen::VectorXd::Ones(1);
  g.means = x.colwise().mean();
  g.vars = (((x.rowwise() - g.means.row(0)).cwiseAbs2().colwise().sum()) / x.rows())
               .cwiseMax(floor.transpose());
  while (g.num_components() < k) {
    g = SplitComponents(g, std::min(k, 2 * g.num_components()));
    auto trace = RunEm(g, x, opts.iters_per_split, floor);
    if (log) log->runs.push_back(std::move(trace));
  }
  auto trace = RunEm(g, x, opts.final_iters, floor);
  if (log) log->runs.push_back(std::move(trace));
  return g;
}

GmmModel MapAdapt(const GmmModel &ubm, const Eigen::MatrixXd &x, double relevance) {
  if (!(relevance > 0)) throw std::invalid_argument("MapAdapt: relevance must be positive");
  GmmModel out = ubm;
  if (x.rows() == 0) return out;
  SufficientStats st = Accumulate(ubm, x);
  for (int k = 0; k < ubm.num_components(); ++k) {
    const double n = st.n(k);
    if (!(n > 0)) continue;
    out.means.row(k) = (st.f.row(k) + relevance * ubm.means.row(k)) / (n + relevance);
  }
  return out;
}

double LlrScore(const GmmModel &model, const GmmModel &ubm, const Eigen::MatrixXd &x) {
  if (x.rows() == 0) throw std::invalid_argument("LlrScore: empty feature sequence");
  return (FrameLogLikelihoods(model, x) - FrameLogLikelihoods(ubm, x)).mean();
}

}  // namespace cganse::asv
