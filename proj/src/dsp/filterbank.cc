// src/dsp/filterbank.cc

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

#include "cganse/dsp/filterbank.h"

#include <cmath>
#include <stdexcept>

namespace cganse::dsp {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }
double ErbHz(double hz) { return 24.7 * (4.37 * hz / 1000.0 + 1.0); }

FilterBank MelGammatoneBank(const GammatoneOptions &opts) {
  if (opts.n_filters < 2) throw std::invalid_argument("gammatone: need at least two filters");
  if (!(opts.f_lo > 0.0) || !(opts.f_lo < opts.f_hi) ||
      opts.f_hi > opts.sample_rate / 2.0)
    throw std::invalid_argument("gammatone: invalid band edges");
  const int n_bins = opts.nfft / 2 + 1;
  const double bin_hz = static_cast<double>(opts.sample_rate) / opts.nfft;
  const double mel_lo = HzToMel(opts.f_lo), mel_hi = HzToMel(opts.f_hi);

  FilterBank bank;
  bank.center_hz.resize(opts.n_filters);
  bank.response.resize(opts.n_filters, n_bins);
  for (int j = 0; j < opts.n_filters; ++j) {
    double mel = mel_lo + (mel_hi - mel_lo) * j / (opts.n_filters - 1);
    double fc = j == 0 ? opts.f_lo : (j == opts.n_filters - 1 ? opts.f_hi : MelToHz(mel));
    bank.center_hz[j] = fc;
    const double b = 1.019 * ErbHz(fc);
    for (int k = 0; k < n_bins; ++k) {
      double x = (k * bin_hz - fc) / b;
      bank.response(j, k) = 1.0 / ((1.0 + x * x) * (1.0 + x * x));
    }
  }
  return bank;
}

Eigen::MatrixXd SubbandEnergies(const Spectrogram &spec, const FilterBank &bank) {
  if (bank.response.cols() != spec.bins())
    throw std::invalid_argument("subband energies: filter bank / spectrogram bin mismatch");
  Eigen::MatrixXd power = spec.mag.array().square().matrix();  // F x T
  Eigen::MatrixXd resp2 = bank.response.array().square().matrix();  // J x F
  return power.transpose() * resp2.transpose();  // T x J
}

Eigen::MatrixXd MaskToBins(const Eigen::MatrixXd &mask, const FilterBank &bank) {
  if (mask.cols() != bank.size())
    throw std::invalid_argument("mask: expected one column per filter");
  Eigen::VectorXd denom = bank.response.colwise().sum().transpose();  // F
  Eigen::MatrixXd num = bank.response.transpose() * mask.transpose();  // F x T
  for (Eigen::Index f = 0; f < num.rows(); ++f) num.row(f) /= denom(f);
  return num;
}

}  // namespace cganse::dsp
