// src/nn/optim.cc

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

#include "cganse/nn/optim.h"

#include <cmath>
#include <stdexcept>

namespace cganse::nn::inline CGANSE_NN_ABI {

void ZeroGrads(const std::vector<Parameter *> &params) {
  for (Parameter *p : params) p->ZeroGrad();
}

Adam::Adam(std::vector<Parameter *> params, AdamOptions opts)
    : params_(std::move(params)), opts_(opts) {
  if (!(opts_.lr >= 0) || !(opts_.beta1 >= 0 && opts_.beta1 < 1) ||
      !(opts_.beta2 >= 0 && opts_.beta2 < 1) || !(opts_.eps >= 0))
    throw std::invalid_argument("Adam: bad hyperparameters");
  for (Parameter *p : params_) {
    m_.emplace_back(p->value.size(), 0.0);
    v_.emplace_back(p->value.size(), 0.0);
  }
}

void Adam::Step() {
  ++t_;
  const Real b1 = static_cast<Real>(opts_.beta1), b2 = static_cast<Real>(opts_.beta2);
  const double c1 = 1 - std::pow(opts_.beta1, static_cast<double>(t_));
  const double c2 = 1 - std::pow(opts_.beta2, static_cast<double>(t_));
  // lr m/c1 / (sqrt(v/c2) + eps) = step m / (sqrt(v) + eps sqrt(c2)).
  const Real step = static_cast<Real>(opts_.lr * std::sqrt(c2) / c1);
  const Real eps = static_cast<Real>(opts_.eps * std::sqrt(c2));
  for (std::size_t k = 0; k < params_.size(); ++k) {
    Parameter &p = *params_[k];
    Real *m = m_[k].data(), *v = v_[k].data(), *w = p.value.data();
    const Real *g = p.grad.data();
    const std::size_t n = p.value.size();
    for (std::size_t i = 0; i < n; ++i) {
      m[i] = b1 * m[i] + (1 - b1) * g[i];
      v[i] = b2 * v[i] + (1 - b2) * g[i] * g[i];
      w[i] -= step * m[i] / (std::sqrt(v[i]) + eps);
    }
  }
}

Sgd::Sgd(std::vector<Parameter *> params, SgdOptions opts)
    : params_(std::move(params)), opts_(opts) {
  if (!(opts_.lr >= 0) || !(opts_.momentum >= 0 && opts_.momentum < 1))
    throw std::invalid_argument("Sgd: bad hyperparameters");
  for (Parameter *p : params_) velocity_.emplace_back(p->value.size(), 0.0);
}

void Sgd::Step() {
  ++t_;
  for (std::size_t k = 0; k < params_.size(); ++k) {
    Parameter &p = *params_[k];
    std::vector<double> &vel = velocity_[k];
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      vel[i] = opts_.momentum * vel[i] + p.grad[i];
      p.value[i] = static_cast<Real>(p.value[i] - opts_.lr * vel[i]);
    }
  }
}

}  // namespace cganse::nn::inline CGANSE_NN_ABI
