// tests/acceptance/acceptance.cc

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

// Acceptance run: one PASS/FAIL line per criterion. Usage:
//   acceptance [criterion ...]     (default: all, 1 last)
// Exit status 0 only if every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "acceptance/criteria.h"
#include "cganse/asv/eer.h"
#include "cganse/asv/gmm.h"
#include "cganse/asv/protocol.h"
#include "cganse/cli/cli.h"
#include "cganse/corpus/manifest.h"
#include "cganse/corpus/noise.h"
#include "cganse/corpus/synth.h"
#include "cganse/dnnse/features.h"
#include "cganse/dnnse/model.h"
#include "cganse/dsp/chunk.h"
#include "cganse/dsp/filterbank.h"
#include "cganse/dsp/stft.h"
#include "cganse/metrics/metrics.h"
#include "cganse/mmse/stsa.h"
#include "cganse/pix2pix/model.h"
#include "cganse/pix2pix/train.h"

namespace cganse::acceptance {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char *fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

std::string Slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Waveform RandomSignal(std::size_t n, std::uint64_t seed, double scale = 0.3) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, scale);
  Waveform w;
  w.samples.resize(n);
  for (double &s : w.samples) s = d(rng);
  return w;
}

double InteriorSnrDb(const Waveform &ref, const Waveform &est) {
  double sig = 0.0, err = 0.0;
  for (std::size_t i = dsp::kNfft; i + dsp::kNfft < ref.size(); ++i) {
    sig += ref.samples[i] * ref.samples[i];
    const double d = ref.samples[i] - est.samples[i];
    err += d * d;
  }
  return 10.0 * std::log10(sig / err);
}

double Db(double x) { return 10.0 * std::log10(x); }

// Runs the command line in-process; throws with its stderr on failure.
std::string Cli(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  const int code = cli::RunCli(args, out, err);
  if (code != 0) {
    std::string joined;
    for (const std::string &a : args) joined += " " + a;
    throw std::runtime_error("cganse" + joined + " exited " + std::to_string(code) + ": " +
                             err.str());
  }
  return out.str();
}

// ------------------------------------------------------------------ shared corpus

inline constexpr int kSpeakers = 24;
inline constexpr int kUtterances = 6;
inline constexpr const char *kColored = "market_like";

// Pix2pix settings of criteria 5 and 9.
const char *kPix2PixConfig =
    "# desk-scale pix2pix\n"
    "side = 64\n"
    "base_channels = 32\n"
    "channel_cap = 128\n"
    "epochs = 10\n"
    "batch_size = 1\n"
    "lr = 1e-3\n"
    "seed = 1\n"
    "train_snrs = 10,20\n";

class Workspace {
 public:
  explicit Workspace(std::string root) : root_(std::move(root)) {}

  const std::string &root() const { return root_; }
  std::string Path(const std::string &name) const { return (fs::path(root_) / name).string(); }
  std::string ManifestPath() const { return Path("corpus/manifest.jsonl"); }

  // Synthesises and mixes the corpus (white and one colored noise at 0, 10
  // and 20 dB) once.
  const Manifest &Corpus() {
    if (!corpus_) {
      const auto t0 = Clock::now();
      Cli({"synth", "--out", Path("corpus"), "--speakers", std::to_string(kSpeakers), "--utts",
           std::to_string(kUtterances), "--seed", "1"});
      Cli({"mix", "--manifest", ManifestPath(), "--noise", "white", "--snr", "0,10,20", "--seed",
           "11"});
      Cli({"mix", "--manifest", ManifestPath(), "--noise", kColored, "--snr", "0,10,20", "--seed",
           "12"});
      corpus_ = std::make_unique<Manifest>(Manifest::Load(ManifestPath()));
      corpus_sec_ = Seconds(t0);
    }
    return *corpus_;
  }
  double corpus_seconds() const { return corpus_sec_; }

  // Noise-general pix2pix trained through the command line.
  const std::string &Pix2PixCheckpoint() {
    if (pix2pix_ckpt_.empty()) {
      Corpus();
      const auto t0 = Clock::now();
      std::ofstream(Path("pix2pix.cfg")) << kPix2PixConfig;
      const std::string ckpt = Path("ng_pix2pix.ckpt");
      std::string log = Cli({"--jobs", "1", "--config", Path("pix2pix.cfg"), "train", "--method",
                             "pix2pix", "--front-end", "ng", "--manifest", ManifestPath(), "--out",
                             ckpt});
      std::ofstream(Path("pix2pix_train.log")) << log;
      train_sec_ = Seconds(t0);
      pix2pix_ckpt_ = ckpt;
    }
    return pix2pix_ckpt_;
  }
  double train_seconds() const { return train_sec_; }

 private:
  std::string root_;
  std::unique_ptr<Manifest> corpus_;
  std::string pix2pix_ckpt_;
  double corpus_sec_ = 0, train_sec_ = 0;
};

bool IsSnr(const ManifestEntry &e, double snr) {
  return e.condition && std::abs(e.condition->snr_db - snr) < 1e-9;
}

// ------------------------------------------------------------------ 2

Verdict Criterion2() {
  double worst = 1e9;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Waveform x = RandomSignal(16000, 5000 + seed);
    worst = std::min(worst, InteriorSnrDb(x, dsp::Istft(dsp::Stft(x))));
  }
  const double bin_hz = dsp::Stft(RandomSignal(16000, 1)).BinHz();

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  Eigen::MatrixXd mag = Eigen::MatrixXd::NullaryExpr(257, 300, [&]() { return u(rng); });
  dsp::NormState norm{3.0};
  std::vector<dsp::SpectroChunk> chunks = dsp::ChunkForGan(mag, norm);
  bool layout = chunks.size() == 2;
  if (layout) {
    const double pad = dsp::Normalize(0.0, norm);
    for (const auto &c : chunks) layout = layout && c.data.rows() == 256 && c.data.cols() == 256;
    // Frames 0..299 in place, frames 300..511 (columns 44..255 of chunk 2) padded.
    layout = layout && (chunks[1].data.rightCols(212).array() == pad).all();
    layout = layout && std::abs(chunks[1].data(10, 43) - dsp::Normalize(mag(10, 299), norm)) < 1e-12;
    layout = layout && std::abs(chunks[0].data(255, 0) - dsp::Normalize(mag(255, 0), norm)) < 1e-12;
  }
  return {worst > 60.0 && bin_hz == 31.25 && layout,
          Fmt("worst round trip %.1f dB > 60 over 50 signals; bin width %.17g Hz; 257x300 -> %zu "
              "chunks, padding from column 44 of chunk 2: %s",
              worst, bin_hz, chunks.size(), layout ? "yes" : "no")};
}

// ------------------------------------------------------------------ 5

// mean |G(y) - x| / mean |y - x| over the normalised chunks.
double L1Ratio(pix2pix::Pix2PixModel &model, const std::vector<Waveform> &noisy,
               const std::vector<Waveform> &clean) {
  pix2pix::ChunkDataset d = pix2pix::BuildChunkDataset(noisy, clean, model.net.side, &model.norm);
  double g_err = 0, y_err = 0;
  for (std::size_t i = 0; i < d.noisy.size(); ++i) {
    g_err += (pix2pix::GenerateChunk(model, d.noisy[i].data) - d.clean[i].data).cwiseAbs().sum();
    y_err += (d.noisy[i].data - d.clean[i].data).cwiseAbs().sum();
  }
  return g_err / y_err;
}

bool StoiImproved(pix2pix::Pix2PixModel &model, const Waveform &clean, const Waveform &noisy) {
  return metrics::Stoi(clean, pix2pix::EnhancePix2Pix(noisy, model)) > metrics::Stoi(clean, noisy);
}

Verdict Criterion5(Workspace &ws) {
  const Manifest &m = ws.Corpus();
  const std::string ckpt = ws.Pix2PixCheckpoint();
  const auto t0 = Clock::now();
  std::unique_ptr<pix2pix::Pix2PixModel> model = pix2pix::LoadModel(ckpt);

  // Held-out mixtures: test split at the training SNRs.
  std::vector<Waveform> noisy, clean;
  int wins = 0, total = 0;
  for (const ManifestEntry *e : m.Select(Split::kTest, true)) {
    if (IsSnr(*e, 10) || IsSnr(*e, 20)) {
      noisy.push_back(m.LoadAudio(*e));
      clean.push_back(m.LoadClean(*e));
    } else if (IsSnr(*e, 0)) {
      wins += StoiImproved(*model, m.LoadClean(*e), m.LoadAudio(*e));
      ++total;
    }
  }
  const double ratio = L1Ratio(*model, noisy, clean);
  const double frac = total > 0 ? static_cast<double>(wins) / total : 0.0;
  const double runtime = ws.corpus_seconds() + ws.train_seconds() + Seconds(t0);

  // Not gating: every test speaker reads the same text, so the measures are
  // repeated on unseen speakers and texts (a third of the UBM utterances,
  // mixed here with the same two noises).
  std::vector<Waveform> u_noisy, u_clean;
  int u_wins = 0, u_total = 0, k = 0;
  for (const ManifestEntry *e : m.Select(Split::kUbm, false)) {
    if (k++ % 3) continue;
    Waveform x = m.LoadAudio(*e);
    for (NoiseType nt : {NoiseType::kWhite, NoiseType::kMarketLike}) {
      Waveform n = ColoredNoise(nt, x.size() + 8000, 4000 + 10 * k + static_cast<int>(nt));
      for (double snr : {10.0, 20.0}) {
        u_noisy.push_back(MixAtSnr(x, n, snr, k));
        u_clean.push_back(x);
      }
      u_wins += StoiImproved(*model, x, MixAtSnr(x, n, 0.0, k));
      ++u_total;
    }
  }
  const double u_ratio = L1Ratio(*model, u_noisy, u_clean);

  return {ratio < 0.5 && frac >= 0.8 && runtime < 900.0,
          Fmt("test split: mean|G(y)-x| / mean|y-x| = %.4f < 0.5 at 10/20 dB, STOI improved on "
              "%d/%d 0 dB utterances (%.0f%%, need 80%%); %.0f s (train %.0f s) < 900 s; "
              "unseen speakers and texts (reference only): ratio %.4f, STOI improved %d/%d",
              ratio, wins, total, 100 * frac, runtime, ws.train_seconds(), u_ratio, u_wins,
              u_total)};
}

// ------------------------------------------------------------------ 6

// E[A | R] / R by direct quadrature of the amplitude posterior.
double QuadratureGain(double xi, double gamma) {
  using boost::math::quadrature::gauss_kronrod;
  const double r = std::sqrt(gamma);
  const double lambda = 1.0 / (1.0 / xi + 1.0);
  const double peak = lambda * r * r;
  auto phase_integral = [&](double a) {
    auto f = [&](double th) {
      return std::exp(-a * a / lambda + 2.0 * a * r * std::cos(th) - peak);
    };
    return gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi, 15, 1e-14);
  };
  const double upper = lambda * r + 40.0 * std::sqrt(lambda);
  const double num = gauss_kronrod<double, 61>::integrate(
      [&](double a) { return a * a * phase_integral(a); }, 0.0, upper, 15, 1e-13);
  const double den = gauss_kronrod<double, 61>::integrate(
      [&](double a) { return a * phase_integral(a); }, 0.0, upper, 15, 1e-13);
  return num / den / r;
}

Verdict Criterion6() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> lx(-2.0, 2.0), lg(-1.0, 2.0);
  double gain_err = 0;
  for (int i = 0; i < 20; ++i) {
    const double xi = std::pow(10.0, lx(rng)), gamma = std::pow(10.0, lg(rng));
    const double ref = QuadratureGain(xi, gamma);
    gain_err = std::max(gain_err, std::abs(mmse::StsaGain(xi, gamma, 1e300) - ref) / ref);
  }

  // Tracker on stationary white noise, started 10 dB high: time after which
  // the median per-bin error stays within 3 dB.
  const double sigma = 0.05;
  double window_energy = 0;
  for (double v : dsp::HammingWindow(dsp::kNfft)) window_energy += v * v;
  const double truth = sigma * sigma * window_energy;
  double worst_settle = 0;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Waveform w = WhiteNoise(16000 * 4, seed);
    for (double &s : w.samples) s *= sigma;
    mmse::MmseConfig cfg;
    mmse::NoisePsdTracker tracker(10.0 * mmse::InitNoisePsd(w, cfg), cfg, 16000.0 / dsp::kHop);
    dsp::Spectrogram s = dsp::Stft(w);
    int last_bad = -1;
    for (int t = 0; t < s.frames(); ++t) {
      Eigen::VectorXd est = tracker.Update(s.mag.col(t).array().square().matrix());
      std::vector<double> e;
      for (int k = 1; k < 256; ++k) e.push_back(std::abs(Db(est(k) / truth)));
      std::nth_element(e.begin(), e.begin() + e.size() / 2, e.end());
      if (e[e.size() / 2] >= 3.0) last_bad = t;
    }
    worst_settle = std::max(worst_settle, (last_bad + 1) * static_cast<double>(dsp::kHop) / 16000.0);
  }

  double atten = 0;
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    Waveform w = WhiteNoise(16000 * 3, seed);
    for (double &s : w.samples) s *= 0.1;
    Waveform y = mmse::EnhanceMmse(w);
    double pin = 0, pout = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      pin += w.samples[i] * w.samples[i];
      pout += y.samples[i] * y.samples[i];
    }
    atten += -Db(pout / pin) / 3.0;
  }
  return {gain_err < 1e-6 && worst_settle <= 0.5 && atten > 10.0,
          Fmt("gain vs quadrature max rel err %.2e < 1e-6 at 20 points; tracker within 3 dB after "
              "%.3f s <= 0.5 s from a +10 dB start; white noise attenuated %.1f dB > 10",
              gain_err, worst_settle, atten)};
}

// ------------------------------------------------------------------ 7

Verdict Criterion7(Workspace &ws) {
  const Manifest &m = ws.Corpus();
  const dsp::FilterBank bank = dsp::MelGammatoneBank();

  int wins = 0, total = 0;
  for (const ManifestEntry *e : m.Select(Split::kTest, true)) {
    if (!IsSnr(*e, 0)) continue;
    Waveform y = m.LoadAudio(*e), x = m.LoadClean(*e), n = m.LoadNoise(*e);
    Eigen::MatrixXd mask = dnnse::Irm(dnnse::EnergyPair(x, n, bank));
    wins += metrics::Stoi(x, dnnse::ApplyBandMask(y, mask, bank)) > metrics::Stoi(x, y);
    ++total;
  }
  const double frac = total > 0 ? static_cast<double>(wins) / total : 0.0;

  // 50 white-noise mixtures at the training SNRs; every tenth held out.
  std::vector<dnnse::DnnSeExample> train, val;
  int taken = 0;
  for (const ManifestEntry *e : m.Select(Split::kEnhancerTrain, true)) {
    if (e->condition->noise_type != NoiseType::kWhite || !(IsSnr(*e, 10) || IsSnr(*e, 20))) continue;
    if (taken == 50) break;
    dnnse::DnnSeExample ex = dnnse::MakeExample(m.LoadClean(*e), m.LoadNoise(*e), bank);
    (taken % 10 == 9 ? val : train).push_back(std::move(ex));
    ++taken;
  }
  const auto t0 = Clock::now();
  std::vector<dnnse::DnnSeEpochRecord> hist;
  dnnse::DnnSeConfig cfg;
  dnnse::DnnSeModel model =
      dnnse::TrainDnnSe(train, val, cfg, [&](const dnnse::DnnSeEpochRecord &r) { hist.push_back(r); });
  const double val_mse = dnnse::MaskMse(model, val);
  int non_increasing = 0;
  for (std::size_t i = 1; i < hist.size(); ++i) non_increasing += hist[i].train_loss <= hist[i - 1].train_loss;

  Waveform w = RandomSignal(16000, 77);
  const int frames = dsp::StftPadded(w).frames();
  Waveform ones = dnnse::ApplyBandMask(w, Eigen::MatrixXd::Ones(frames, bank.size()), bank);
  double err = 0;
  for (std::size_t i = 0; i < w.size(); ++i) err += std::pow(w.samples[i] - ones.samples[i], 2);
  const double ident = Db(std::inner_product(w.samples.begin(), w.samples.end(), w.samples.begin(), 0.0) / err);

  return {frac >= 0.95 && val_mse < 0.04 && ident > 60.0,
          Fmt("oracle IRM raised STOI on %d/%d 0 dB test mixes (%.1f%%, need 95%%); DNN on %zu+%zu "
              "mixtures, %d epochs (%.0f s): validation MSE %.4f < 0.04, train loss "
              "non-increasing on %d/%zu transitions; all-ones mask round trip %.1f dB > 60",
              wins, total, 100 * frac, train.size(), val.size(), cfg.epochs, Seconds(t0), val_mse,
              non_increasing, hist.empty() ? 0 : hist.size() - 1, ident)};
}

// ------------------------------------------------------------------ 8

Verdict Criterion8() {
  Waveform x = SynthesizeUtterance(VoiceForSpeaker(4, 8), 3, 1, 8);
  const double self = metrics::Stoi(x, x);
  std::vector<double> curve;
  for (double snr : {20.0, 10.0, 0.0, -10.0})
    curve.push_back(metrics::Stoi(x, MixAtSnr(x, WhiteNoise(x.size() + 8000, 3), snr, 4)));
  bool decreasing = true;
  for (std::size_t i = 1; i < curve.size(); ++i) decreasing = decreasing && curve[i] < curve[i - 1];
  Waveform y = MixAtSnr(x, WhiteNoise(x.size() + 8000, 5), 5.0, 6);
  const double base = metrics::Stoi(x, y);
  double scale_err = 0;
  for (double a : {0.1, 10.0}) {
    Waveform ys = y;
    for (double &s : ys.samples) s *= a;
    scale_err = std::max(scale_err, std::abs(metrics::Stoi(x, ys) - base));
  }
  return {std::abs(self - 1.0) <= 1e-6 && decreasing && scale_err <= 1e-6,
          Fmt("stoi(x,x) - 1 = %.1e; white 20/10/0/-10 dB: %.4f %.4f %.4f %.4f; scale "
              "0.1/10 change %.1e",
              self - 1.0, curve[0], curve[1], curve[2], curve[3], scale_err)};
}

// ------------------------------------------------------------------ 9

Eigen::MatrixXd SampleGmm(const asv::GmmModel &g, int n, std::mt19937_64 &rng) {
  std::discrete_distribution<int> pick(g.weights.data(), g.weights.data() + g.weights.size());
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::MatrixXd x(n, g.dim());
  for (int t = 0; t < n; ++t) {
    const int k = pick(rng);
    for (int d = 0; d < g.dim(); ++d) x(t, d) = g.means(k, d) + std::sqrt(g.vars(k, d)) * z(rng);
  }
  return x;
}

Verdict Criterion9(Workspace &ws) {
  // EM monotonicity: 10 seeded UBM trainings on 5-component data.
  int decreases = 0, steps = 0;
  for (int run = 0; run < 10; ++run) {
    std::mt19937_64 rng(900 + run);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    asv::GmmModel truth;
    truth.weights = Eigen::VectorXd::NullaryExpr(5, [&] { return 0.5 + u(rng); });
    truth.weights /= truth.weights.sum();
    truth.means = Eigen::MatrixXd::NullaryExpr(5, 3, [&] { return 8.0 * (u(rng) - 0.5); });
    truth.vars = Eigen::MatrixXd::NullaryExpr(5, 3, [&] { return 0.3 + u(rng); });
    Eigen::MatrixXd x = SampleGmm(truth, 3000, rng);
    asv::UbmTrainLog log;
    asv::TrainUbm(x, 8, {}, &log);
    for (const auto &trace : log.runs)
      for (std::size_t i = 1; i < trace.size(); ++i, ++steps)
        decreases += (trace[i] - trace[i - 1]) / x.rows() < -1e-10;
  }

  // Recovery of a well separated 3-component mixture.
  asv::GmmModel truth;
  truth.weights = Eigen::Vector3d(0.3, 0.3, 0.4);
  truth.means.resize(3, 2);
  truth.means << -6, 0, 6, 0, 0, 7;
  truth.vars = Eigen::MatrixXd::Constant(3, 2, 0.5);
  std::mt19937_64 rng(7);
  Eigen::MatrixXd x = SampleGmm(truth, 6000, rng);
  asv::EmOptions opts;
  opts.final_iters = 50;
  asv::GmmModel g = asv::TrainUbm(x, 3, opts);
  double recovery = 0;
  std::vector<bool> used(3, false);
  for (int t = 0; t < 3; ++t) {
    int best = 0;
    double dist = 1e300;
    for (int k = 0; k < 3; ++k) {
      const double d = (g.means.row(k) - truth.means.row(t)).norm();
      if (!used[k] && d < dist) {
        dist = d;
        best = k;
      }
    }
    used[best] = true;
    recovery = std::max(recovery, (g.means.row(best) - truth.means.row(t)).cwiseAbs().maxCoeff());
    recovery = std::max(recovery, std::abs(g.weights(best) - truth.weights(t)));
  }

  std::mt19937_64 zr(99);
  std::normal_distribution<double> z(0.0, 1.0);
  asv::ScoreSet s;
  for (int i = 0; i < 100000; ++i) {
    s.target.push_back(2.0 + z(zr));
    s.impostor.push_back(z(zr));
  }
  const double gauss_eer = asv::Eer(s);

  // End to end at K = 64: noisy versus pix2pix-enhanced, clean speaker models.
  const Manifest &m = ws.Corpus();
  std::unique_ptr<pix2pix::Pix2PixModel> model = pix2pix::LoadModel(ws.Pix2PixCheckpoint());
  const auto t0 = Clock::now();
  asv::AsvConfig cfg;
  cfg.components = 64;
  auto white0 = [](const asv::EerTable &t) {
    for (const asv::EerCell &c : t.cells)
      if (c.noise == "white" && c.snr_db && std::abs(*c.snr_db) < 1e-9) return c;
    throw std::runtime_error("no white 0 dB cell");
  };
  const asv::EerCell noisy = white0(asv::RunProtocol(m, [](const Waveform &w) { return w; }, cfg));
  const asv::EerCell enhanced = white0(asv::RunProtocol(
      m, [&](const Waveform &w) { return pix2pix::EnhancePix2Pix(w, *model); }, cfg));

  const bool pass = decreases == 0 && recovery < 0.1 && std::abs(gauss_eer - 0.1587) <= 0.005 &&
                    enhanced.eer < noisy.eer;
  return {pass, Fmt("EM decreases %d/%d steps over 10 runs; 3-component recovery max error %.3f "
                    "< 0.1; Gaussian EER %.4f (0.1587 +- 0.005); white 0 dB EER noisy %.2f%% -> "
                    "pix2pix %.2f%% (%zu trials, K=64, %.0f s)",
                    decreases, steps, recovery, gauss_eer, 100 * noisy.eer, 100 * enhanced.eer,
                    noisy.trials.size(), Seconds(t0))};
}

// ------------------------------------------------------------------ 10

Verdict Criterion10(Workspace &ws) {
  const std::string dir = ws.Path("determinism");
  const std::string manifest = dir + "/manifest.jsonl";
  Cli({"synth", "--out", dir, "--speakers", "6", "--utts", "3", "--seed", "3"});
  Cli({"mix", "--manifest", manifest, "--noise", "white", "--snr", "0,10,20", "--seed", "4"});
  std::ofstream(dir + "/p.cfg") << "side = 16\nbase_channels = 4\nepochs = 2\nbatch_size = 2\n";
  std::ofstream(dir + "/d.cfg") << "hidden = 32,32\nepochs = 3\nbatch_size = 256\n";
  std::vector<std::string> files;
  for (const std::string run : {"a", "b"}) {
    const std::string p = dir + "/pix2pix_" + run + ".ckpt", d = dir + "/dnnse_" + run + ".ckpt";
    const std::string csv = dir + "/eval_" + run + ".csv";
    Cli({"--jobs", "1", "--config", dir + "/p.cfg", "train", "--method", "pix2pix", "--front-end",
         "ns:white", "--manifest", manifest, "--out", p, "--seed", "9"});
    Cli({"--jobs", "1", "--config", dir + "/d.cfg", "train", "--method", "dnnse", "--front-end",
         "ng", "--manifest", manifest, "--out", d, "--seed", "9"});
    Cli({"--jobs", "1", "eval", "--manifest", manifest, "--front-ends",
         "none,mmse,pix2pix:" + p + ",dnnse:" + d, "--out", csv});
    files.push_back(p);
    files.push_back(d);
    files.push_back(csv);
  }
  bool same = true;
  std::size_t bytes = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string a = Slurp(files[i]), b = Slurp(files[i + 3]);
    same = same && !a.empty() && a == b;
    bytes += a.size();
  }
  return {same, Fmt("two --jobs 1 runs of train (pix2pix, dnnse) and eval: checkpoints and CSV "
                    "byte-identical: %s (%zu bytes compared)",
                    same ? "yes" : "no", bytes)};
}

}  // namespace
}  // namespace cganse::acceptance

int main(int argc, char **argv) {
  using namespace cganse::acceptance;
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  if (selected.empty())
    for (int c = 1; c <= 10; ++c) selected.insert(c);

  const auto start = Clock::now();
  const fs::path root = fs::temp_directory_path() / "cganse_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  Workspace ws(root.string());

  const std::map<int, std::pair<std::string, std::function<Verdict()>>> criteria = {
      {2, {"dsp", Criterion2}},
      {3, {"nn core", CheckNnCore}},
      {4, {"pix2pix anchors", CheckPix2PixAnchors}},
      {5, {"pix2pix toy convergence", [&] { return Criterion5(ws); }}},
      {6, {"mmse", Criterion6}},
      {7, {"dnn-se", [&] { return Criterion7(ws); }}},
      {8, {"metrics", Criterion8}},
      {9, {"asv", [&] { return Criterion9(ws); }}},
      {10, {"determinism", [&] { return Criterion10(ws); }}},
  };

  int failures = 0;
  for (const auto &[id, c] : criteria) {
    if (!selected.count(id)) continue;
    Verdict v;
    const auto t0 = Clock::now();
    try {
      v = c.second();
    } catch (const std::exception &e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s %d %s: %s [%.0f s]\n", v.pass ? "PASS" : "FAIL", id, c.first.c_str(),
                v.detail.c_str(), Seconds(t0));
    std::fflush(stdout);
  }
  if (selected.count(1)) {
    // The reference EER and STOI tables need the original corpora and
    // full-size training; 2-10 stand in. What remains checkable is runtime.
    const double total = Seconds(start);
    const bool pass = total < 1800.0;
    failures += !pass;
    std::printf("%s 1 reproducibility: reference EER/STOI tables not reproducible at desk scale "
                "(original corpora, full-size training); property checks 2-10 stand in; suite "
                "runtime %.0f s < 1800 s\n",
                pass ? "PASS" : "FAIL", total);
  }
  return failures == 0 ? 0 : 1;
}
