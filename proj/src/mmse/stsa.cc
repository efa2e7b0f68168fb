// src/mmse/stsa.cc

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

#include "cganse/mmse/stsa.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cganse/dsp/stft.h"

namespace cganse::mmse {

double StsaGain(double xi, double gamma, double cap) {
  if (!(xi > 0.0) || !(gamma > 0.0))
    throw std::invalid_argument("StsaGain: xi and gamma must be > 0");
  const double v = xi * gamma / (1.0 + xi);
  const double h = 0.5 * v;
  // exp(-v/2) I_n(v/2) is exactly the scaled Bessel value, so nothing overflows.
  const double bracket = (1.0 + v) * BesselI0Scaled(h) + v * BesselI1Scaled(h);
  return std::min(0.5 * std::sqrt(std::numbers::pi) * std::sqrt(v) / gamma * bracket, cap);
}

Eigen::VectorXd InitNoisePsd(const Waveform &w, const MmseConfig &cfg) {
  ValidateWaveform(w);
  if (cfg.init_samples < dsp::kNfft)
    throw std::invalid_argument("InitNoisePsd: init region shorter than one frame");
  if (w.size() < static_cast<std::size_t>(cfg.init_samples))
    throw std::invalid_argument("InitNoisePsd: utterance shorter than the init region");
  Waveform head;
  head.sample_rate = w.sample_rate;
  head.samples.assign(w.samples.begin(), w.samples.begin() + cfg.init_samples);
  dsp::Spectrogram s = dsp::Stft(head);
  Eigen::VectorXd psd = s.mag.array().square().rowwise().mean();
  return psd.cwiseMax(cfg.psd_floor);
}

Eigen::VectorXd DecisionDirectedXi(const MmseState &state, const Eigen::VectorXd &gamma,
                                   double xi_min) {
  const Eigen::Index n = gamma.size();
  if (state.prev_gain.size() != n || state.prev_gamma.size() != n)
    throw std::invalid_argument("DecisionDirectedXi: size mismatch");
  Eigen::VectorXd xi(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double prev = state.prev_gain(k) * state.prev_gain(k) * state.prev_gamma(k);
    double ml = std::max(gamma(k) - 1.0, 0.0);
    xi(k) = std::max(state.alpha * prev + (1.0 - state.alpha) * ml, xi_min);
  }
  return xi;
}

NoisePsdTracker::NoisePsdTracker(Eigen::VectorXd initial, const MmseConfig &cfg,
                                 double frame_rate_hz)
    : cfg_(cfg), psd_(std::move(initial)) {
  if (psd_.size() == 0) throw std::invalid_argument("NoisePsdTracker: empty initial PSD");
  psd_ = psd_.cwiseMax(cfg_.psd_floor);
  spp_mean_ = Eigen::VectorXd::Constant(psd_.size(), 0.5);
  window_frames_ = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(cfg_.safety_window_sec * frame_rate_hz)));
}

const Eigen::VectorXd &NoisePsdTracker::Update(const Eigen::VectorXd &periodogram) {
  const Eigen::Index n = psd_.size();
  if (periodogram.size() != n) throw std::invalid_argument("NoisePsdTracker: size mismatch");
  const double xi_h1 = std::pow(10.0, cfg_.xi_h1_db / 10.0);
  const double prior_ratio = 1.0 + xi_h1;  // P(H0)/P(H1) = 1
  const double beta = cfg_.tracker_beta;

  if (!have_smoothed_) {
    smoothed_ = periodogram;
    have_smoothed_ = true;
  } else {
    const double a = cfg_.periodogram_smoothing;
    smoothed_ = a * smoothed_ + (1.0 - a) * periodogram;
  }
  history_.push_back(smoothed_);
  if (history_.size() > window_frames_) history_.pop_front();

  for (Eigen::Index k = 0; k < n; ++k) {
    double post = periodogram(k) / psd_(k);
    double p1 = 1.0 / (1.0 + prior_ratio * std::exp(-post * xi_h1 / (1.0 + xi_h1)));
    // Avoid locking when the estimate lags far behind a rise in the noise.
    spp_mean_(k) = cfg_.spp_smoothing * spp_mean_(k) + (1.0 - cfg_.spp_smoothing) * p1;
    if (spp_mean_(k) > 0.99) p1 = std::min(p1, 0.99);
    double expected = (1.0 - p1) * periodogram(k) + p1 * psd_(k);
    double next = beta * psd_(k) + (1.0 - beta) * expected;
    double window_min = history_.front()(k);
    for (const auto &h : history_) window_min = std::min(window_min, h(k));
    psd_(k) = std::max({next, window_min, cfg_.psd_floor});
  }
  return psd_;
}

MmseResult EnhanceMmseDetailed(const Waveform &w, const MmseConfig &cfg) {
  ValidateWaveform(w);
  if (!(cfg.alpha >= 0.0 && cfg.alpha < 1.0))
    throw std::invalid_argument("EnhanceMmse: alpha must lie in [0, 1)");
  Eigen::VectorXd init = InitNoisePsd(w, cfg);
  dsp::Spectrogram spec = dsp::StftPadded(w);
  const int f = spec.bins(), t_count = spec.frames();
  const double xi_min = std::pow(10.0, cfg.xi_min_db / 10.0);

  NoisePsdTracker tracker(init, cfg, static_cast<double>(w.sample_rate) / spec.hop);
  MmseState state;
  state.alpha = cfg.alpha;
  state.noise_psd = init;
  state.prev_gain = Eigen::VectorXd::Zero(f);
  state.prev_gamma = Eigen::VectorXd::Zero(f);

  MmseResult out;
  out.gains.resize(f, t_count);
  out.noise_psd.resize(f, t_count);
  Eigen::VectorXd gamma(f), gain(f);
  for (int t = 0; t < t_count; ++t) {
    Eigen::VectorXd power = spec.mag.col(t).array().square();
    state.noise_psd = tracker.Update(power);
    for (int k = 0; k < f; ++k) gamma(k) = std::max(power(k) / state.noise_psd(k), 1e-10);
    Eigen::VectorXd xi = DecisionDirectedXi(state, gamma, xi_min);
    for (int k = 0; k < f; ++k) gain(k) = StsaGain(xi(k), gamma(k), cfg.gain_cap);
    spec.mag.col(t).array() *= gain.array();
    state.prev_gain = gain;
    state.prev_gamma = gamma;
    out.gains.col(t) = gain;
    out.noise_psd.col(t) = state.noise_psd;
  }
  out.enhanced = dsp::IstftToLength(spec, w.size());
  return out;
}

Waveform EnhanceMmse(const Waveform &w, const MmseConfig &cfg) {
  return EnhanceMmseDetailed(w, cfg).enhanced;
}

}  // namespace cganse::mmse
