// src/metrics/metrics.cc

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

#include "cganse/metrics/metrics.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "cganse/dsp/fft.h"
#include "cganse/dsp/resample.h"
#include "cganse/dsp/stft.h"

namespace cganse::metrics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void TrimPair(const Waveform &a, const Waveform &b, Waveform *ta, Waveform *tb) {
  ValidateWaveform(a);
  ValidateWaveform(b);
  if (a.sample_rate != b.sample_rate) throw std::invalid_argument("metrics: sample rates differ");
  const std::size_t n = std::min(a.size(), b.size());
  *ta = a;
  *tb = b;
  ta->samples.resize(n);
  tb->samples.resize(n);
}

// Symmetric Hann without the zero end points (MATLAB hanning(n)).
std::vector<double> StoiWindow(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * (i + 1) / (n + 1));
  return w;
}

// Windowed frames of x starting at 0, hop, ... strictly before len(x) - len
// (the reference convention drops a frame ending exactly at the last sample).
std::vector<std::vector<double>> Frames(const std::vector<double> &x, int len, int hop,
                                        const std::vector<double> &win) {
  std::vector<std::vector<double>> out;
  for (std::size_t s = 0; s + len < x.size(); s += hop) {
    std::vector<double> f(len);
    for (int i = 0; i < len; ++i) f[i] = x[s + i] * win[i];
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<double> OverlapAdd(const std::vector<std::vector<double>> &frames, int len, int hop) {
  if (frames.empty()) return {};
  std::vector<double> out((frames.size() - 1) * hop + len, 0.0);
  for (std::size_t k = 0; k < frames.size(); ++k)
    for (int i = 0; i < len; ++i) out[k * hop + i] += frames[k][i];
  return out;
}

// Drops frames of both signals where the clean frame is more than the
// dynamic range below the loudest clean frame, then resynthesises.
void RemoveSilentFrames(std::vector<double> *x, std::vector<double> *y) {
  const int hop = kStoiFrame / 2;
  const auto win = StoiWindow(kStoiFrame);
  auto fx = Frames(*x, kStoiFrame, hop, win), fy = Frames(*y, kStoiFrame, hop, win);
  std::vector<double> energy(fx.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < fx.size(); ++k) {
    double s = 0;
    for (double v : fx[k]) s += v * v;
    energy[k] = 20.0 * std::log10(std::sqrt(s) + kEps);
    top = std::max(top, energy[k]);
  }
  if (!(top > 20.0 * std::log10(kEps)))
    throw std::invalid_argument("Stoi: silent reference");
  std::vector<std::vector<double>> kx, ky;
  for (std::size_t k = 0; k < fx.size(); ++k)
    if (energy[k] > top - kStoiDynRangeDb) {
      kx.push_back(std::move(fx[k]));
      ky.push_back(std::move(fy[k]));
    }
  *x = OverlapAdd(kx, kStoiFrame, hop);
  *y = OverlapAdd(ky, kStoiFrame, hop);
}

// One-third octave band matrix on the bins of a kStoiNfft-point FFT.
Eigen::MatrixXd ThirdOctaveBands() {
  const int bins = kStoiNfft / 2 + 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(kStoiBands, bins);
  auto nearest = [&](double hz) {
    int best = 0;
    for (int k = 1; k < bins; ++k)
      if (std::abs(k * double(kStoiRate) / kStoiNfft - hz) <
          std::abs(best * double(kStoiRate) / kStoiNfft - hz))
        best = k;
    return best;
  };
  for (int b = 0; b < kStoiBands; ++b) {
    int lo = nearest(kStoiMinCenterHz * std::pow(2.0, (2.0 * b - 1) / 6.0));
    int hi = nearest(kStoiMinCenterHz * std::pow(2.0, (2.0 * b + 1) / 6.0));
    for (int k = lo; k < hi; ++k) a(b, k) = 1.0;
  }
  return a;
}

// Band envelopes, bands x frames.
Eigen::MatrixXd BandEnvelopes(const std::vector<double> &x, const Eigen::MatrixXd &bands) {
  const auto win = StoiWindow(kStoiFrame);
  auto frames = Frames(x, kStoiFrame, kStoiFrame / 2, win);
  dsp::RealFft fft(kStoiNfft);
  Eigen::MatrixXd power(bands.cols(), frames.size());
  std::vector<std::complex<double>> spec;
  for (std::size_t t = 0; t < frames.size(); ++t) {
    fft.Forward(frames[t], &spec);
    for (Eigen::Index k = 0; k < bands.cols(); ++k) power(k, t) = std::norm(spec[k]);
  }
  return (bands * power).array().sqrt().matrix();
}

}  // namespace

double Stoi(const Waveform &clean, const Waveform &processed) {
  Waveform c, p;
  TrimPair(clean, processed, &c, &p);
  if (c.sample_rate != kStoiRate) {
    c = dsp::Resample(c, kStoiRate);
    p = dsp::Resample(p, kStoiRate);
  }
  std::vector<double> x = c.samples, y = p.samples;
  RemoveSilentFrames(&x, &y);

  static const Eigen::MatrixXd bands = ThirdOctaveBands();
  Eigen::MatrixXd ex = BandEnvelopes(x, bands), ey = BandEnvelopes(y, bands);
  const Eigen::Index t_count = ex.cols();
  if (t_count < kStoiSegment)
    throw std::invalid_argument("Stoi: " + std::to_string(t_count) +
                                " active frames, need at least " + std::to_string(kStoiSegment));

  const double clip = 1.0 + std::pow(10.0, -kStoiBeta / 20.0);
  double total = 0;
  std::size_t count = 0;
  for (Eigen::Index m = kStoiSegment; m <= t_count; ++m) {
    for (int b = 0; b < kStoiBands; ++b) {
      Eigen::RowVectorXd xs = ex.block(b, m - kStoiSegment, 1, kStoiSegment);
      Eigen::RowVectorXd ys = ey.block(b, m - kStoiSegment, 1, kStoiSegment);
      const double alpha = xs.norm() / (ys.norm() + kEps);
      Eigen::RowVectorXd yp = (alpha * ys).cwiseMin(clip * xs);
      Eigen::RowVectorXd xc = xs.array() - xs.mean();
      Eigen::RowVectorXd yc = yp.array() - yp.mean();
      total += xc.dot(yc) / ((xc.norm() + kEps) * (yc.norm() + kEps));
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

double SegSnr(const Waveform &clean, const Waveform &processed) {
  Waveform c, p;
  TrimPair(clean, processed, &c, &p);
  const std::size_t len = static_cast<std::size_t>(std::lround(0.032 * c.sample_rate));
  const std::size_t hop = len / 2;
  std::vector<double> sig, err;
  for (std::size_t s = 0; s + len <= c.size(); s += hop) {
    double es = 0, ee = 0;
    for (std::size_t i = s; i < s + len; ++i) {
      es += c.samples[i] * c.samples[i];
      double d = c.samples[i] - p.samples[i];
      ee += d * d;
    }
    sig.push_back(es);
    err.push_back(ee);
  }
  if (sig.empty()) throw std::invalid_argument("SegSnr: signal shorter than one frame");
  const double top = *std::max_element(sig.begin(), sig.end());
  if (!(top > 0)) throw std::invalid_argument("SegSnr: silent reference");
  const double floor = top * std::pow(10.0, -kStoiDynRangeDb / 10.0);
  double total = 0;
  int used = 0;
  for (std::size_t k = 0; k < sig.size(); ++k) {
    if (sig[k] < floor) continue;
    double snr = err[k] > 0 ? 10.0 * std::log10(sig[k] / err[k]) : kSegSnrMax;
    total += std::clamp(snr, kSegSnrMin, kSegSnrMax);
    ++used;
  }
  return total / used;
}

double Lsd(const Waveform &clean, const Waveform &processed) {
  Waveform c, p;
  TrimPair(clean, processed, &c, &p);
  dsp::Spectrogram sc = dsp::Stft(c), sp = dsp::Stft(p);
  if (sc.frames() == 0) throw std::invalid_argument("Lsd: signal shorter than one frame");
  // A frame counts when either signal is within the activity range of its
  // own loudest frame, which keeps the measure symmetric.
  Eigen::RowVectorXd ec = sc.mag.array().square().colwise().sum();
  Eigen::RowVectorXd ep = sp.mag.array().square().colwise().sum();
  if (!(ec.maxCoeff() > 0) && !(ep.maxCoeff() > 0))
    throw std::invalid_argument("Lsd: both signals silent");
  const double range = std::pow(10.0, -kStoiDynRangeDb / 10.0);
  const double floor_c = ec.maxCoeff() * range, floor_p = ep.maxCoeff() * range;
  double total = 0;
  std::size_t n = 0;
  for (int t = 0; t < sc.frames(); ++t) {
    if (!(ec(t) > 0 && ec(t) >= floor_c) && !(ep(t) > 0 && ep(t) >= floor_p)) continue;
    for (int k = 0; k < sc.bins(); ++k) {
      double d = 20.0 * std::log10((sc.mag(k, t) + kLsdEps) / (sp.mag(k, t) + kLsdEps));
      total += d * d;
      ++n;
    }
  }
  return std::sqrt(total / static_cast<double>(n));
}

}  // namespace cganse::metrics
