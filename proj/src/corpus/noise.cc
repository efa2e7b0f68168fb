// src/corpus/noise.cc

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

#include "cganse/corpus/noise.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cganse {

namespace {

struct ColorParams {
  double pole;        // one-pole low-pass coefficient
  int stages;         // cascaded low-pass sections
  double white_mix;   // broadband floor added after filtering
  double am_rate_hz;  // amplitude modulation
  double am_depth;
  double click_rate_hz;  // sparse transients (0 = none)
};

ColorParams ParamsFor(NoiseType t) {
  switch (t) {
    case NoiseType::kAirplaneLike:
      return {0.985, 2, 0.05, 0.2, 0.1, 0.0};
    case NoiseType::kMarketLike:
      return {0.90, 1, 0.25, 1.5, 0.4, 0.0};
    case NoiseType::kCantineLike:
      return {0.75, 1, 0.40, 3.0, 0.5, 6.0};
    default:
      throw std::invalid_argument("colored noise: unsupported type");
  }
}

void NormalizeRms(Waveform *w) {
  double r = Rms(*w);
  if (r <= 0.0) throw std::runtime_error("noise: zero-power signal");
  for (double &s : w->samples) s /= r;
}

double CropPower(const Waveform &noise, std::size_t offset, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = noise.samples[offset + i];
    acc += v * v;
  }
  return acc / static_cast<double>(n);
}

}  // namespace

std::string NoiseTypeName(NoiseType t) {
  switch (t) {
    case NoiseType::kBabble: return "babble";
    case NoiseType::kWhite: return "white";
    case NoiseType::kCantineLike: return "cantine_like";
    case NoiseType::kMarketLike: return "market_like";
    case NoiseType::kAirplaneLike: return "airplane_like";
  }
  return "unknown";
}

std::optional<NoiseType> ParseNoiseType(std::string_view name) {
  for (NoiseType t : kAllNoiseTypes)
    if (NoiseTypeName(t) == name) return t;
  return std::nullopt;
}

Waveform WhiteNoise(std::size_t length, std::uint64_t seed, int sample_rate) {
  if (length == 0) throw std::invalid_argument("white noise: zero length");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.resize(length);
  for (double &s : w.samples) s = dist(rng);
  return w;
}

Waveform ColoredNoise(NoiseType type, std::size_t length, std::uint64_t seed,
                      int sample_rate) {
  if (type == NoiseType::kWhite) return WhiteNoise(length, seed, sample_rate);
  if (length == 0) throw std::invalid_argument("colored noise: zero length");
  const ColorParams p = ParamsFor(type);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double am_phase = 2.0 * std::numbers::pi * unif(rng);

  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.resize(length);
  std::vector<double> state(p.stages, 0.0);
  double click = 0.0;
  const double click_prob = p.click_rate_hz / sample_rate;
  for (std::size_t n = 0; n < length; ++n) {
    double x = gauss(rng);
    double y = x;
    for (double &s : state) {
      s = p.pole * s + (1.0 - p.pole) * y;
      y = s;
    }
    // Filtered noise has small variance; rescale each stage roughly to unity
    // before mixing with the broadband floor.
    y *= std::pow(std::sqrt((1.0 + p.pole) / (1.0 - p.pole)), p.stages);
    double t = static_cast<double>(n) / sample_rate;
    double am = 1.0 + p.am_depth *
                          std::sin(2.0 * std::numbers::pi * p.am_rate_hz * t +
                                   am_phase);
    double white = gauss(rng);
    if (click_prob > 0.0 && unif(rng) < click_prob) click = 4.0;
    click *= 0.97;
    w.samples[n] = am * (y + p.white_mix * white) + click * white;
  }
  NormalizeRms(&w);
  return w;
}

Waveform MakeBabble(std::span<const Waveform> sources, std::size_t length,
                    std::uint64_t seed) {
  if (sources.size() != 6)
    throw std::invalid_argument("babble: exactly 6 speech sources required, got " +
                                std::to_string(sources.size()));
  if (length == 0) throw std::invalid_argument("babble: zero length");
  std::mt19937_64 rng(seed);
  Waveform out;
  out.sample_rate = sources[0].sample_rate;
  out.samples.assign(length, 0.0);
  for (const Waveform &src : sources) {
    if (src.sample_rate != out.sample_rate)
      throw std::invalid_argument("babble: sample rate mismatch");
    if (src.size() < length)
      throw std::invalid_argument("babble: source shorter than requested length");
    std::uniform_int_distribution<std::size_t> pick(0, src.size() - length);
    std::size_t off = pick(rng);
    for (std::size_t i = 0; i < length; ++i) out.samples[i] += src.samples[off + i];
  }
  NormalizeRms(&out);
  return out;
}

Waveform ScaledNoiseFor(const Waveform &clean, const Waveform &noise,
                        double snr_db, std::uint64_t seed) {
  if (!std::isfinite(snr_db)) throw std::invalid_argument("mix: snr must be finite");
  if (clean.sample_rate != noise.sample_rate)
    throw std::invalid_argument("mix: sample rate mismatch");
  if (clean.empty()) throw std::invalid_argument("mix: empty clean signal");
  if (noise.size() < clean.size())
    throw std::invalid_argument("mix: noise shorter than clean signal");
  const double p_clean = MeanPower(clean);
  if (p_clean <= 0.0) throw std::invalid_argument("mix: silent clean signal");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, noise.size() - clean.size());
  const std::size_t off = pick(rng);
  const double p_noise = CropPower(noise, off, clean.size());
  if (p_noise <= 0.0) throw std::invalid_argument("mix: silent noise crop");

  const double g = std::sqrt(p_clean / (p_noise * std::pow(10.0, snr_db / 10.0)));
  Waveform out;
  out.sample_rate = clean.sample_rate;
  out.samples.resize(clean.size());
  for (std::size_t i = 0; i < clean.size(); ++i)
    out.samples[i] = g * noise.samples[off + i];
  return out;
}

Waveform MixAtSnr(const Waveform &clean, const Waveform &noise, double snr_db,
                  std::uint64_t seed) {
  Waveform out = ScaledNoiseFor(clean, noise, snr_db, seed);
  for (std::size_t i = 0; i < clean.size(); ++i) out.samples[i] += clean.samples[i];
  return out;
}

}  // namespace cganse
