// tests/unit/asv_test.cc

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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "doctest.h"

#include "cganse/asv/eer.h"
#include "cganse/asv/gmm.h"
#include "cganse/asv/protocol.h"
#include "cganse/corpus/mix.h"
#include "cganse/corpus/synth.h"
#include "unit/test_util.h"

namespace cganse::asv {
namespace {

Eigen::MatrixXd SampleGmm(const GmmModel &g, int n, std::mt19937_64 &rng) {
  std::discrete_distribution<int> pick(g.weights.data(), g.weights.data() + g.weights.size());
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::MatrixXd x(n, g.dim());
  for (int t = 0; t < n; ++t) {
    int k = pick(rng);
    for (int d = 0; d < g.dim(); ++d) x(t, d) = g.means(k, d) + std::sqrt(g.vars(k, d)) * z(rng);
  }
  return x;
}

GmmModel RandomGmm(int k, int d, std::mt19937_64 &rng, double spread) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GmmModel g;
  g.weights.resize(k);
  g.means.resize(k, d);
  g.vars.resize(k, d);
  for (int c = 0; c < k; ++c) {
    g.weights(c) = 0.5 + u(rng);
    for (int j = 0; j < d; ++j) {
      g.means(c, j) = spread * (u(rng) - 0.5);
      g.vars(c, j) = 0.2 + u(rng);
    }
  }
  g.weights /= g.weights.sum();
  return g;
}

TEST_CASE("single gaussian is the sample moments") {
  std::mt19937_64 rng(1);
  GmmModel truth = RandomGmm(3, 4, rng, 6.0);
  Eigen::MatrixXd x = SampleGmm(truth, 2000, rng);
  GmmModel g = TrainUbm(x, 1);
  Eigen::RowVectorXd mean = x.colwise().mean();
  Eigen::RowVectorXd var = (x.rowwise() - mean).cwiseAbs2().colwise().sum() / x.rows();
  CHECK(g.weights(0) == 1.0);
  CHECK((g.means.row(0) - mean).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(((g.vars.row(0) - var).array() / var.array()).abs().maxCoeff() < 1e-12);
}

TEST_CASE("em log-likelihood never decreases") {
  for (int run = 0; run < 10; ++run) {
    std::mt19937_64 rng(100 + run);
    GmmModel truth = RandomGmm(5, 3, rng, 8.0);
    Eigen::MatrixXd x = SampleGmm(truth, 3000, rng);
    UbmTrainLog log;
    GmmModel g = TrainUbm(x, 8, {}, &log);
    REQUIRE(log.runs.size() == 4);
    for (const auto &trace : log.runs)
      for (std::size_t i = 1; i < trace.size(); ++i)
        CHECK((trace[i] - trace[i - 1]) / x.rows() >= -1e-8);
    CHECK_NOTHROW(g.Validate());
    CHECK(std::abs(g.weights.sum() - 1.0) < 1e-12);
    CHECK(g.weights.minCoeff() >= 0.0);
  }
}

TEST_CASE("three component recovery") {
  GmmModel truth;
  truth.weights = Eigen::Vector3d(0.3, 0.3, 0.4);
  truth.means.resize(3, 2);
  truth.means << -6, 0, 6, 0, 0, 7;
  truth.vars = Eigen::MatrixXd::Constant(3, 2, 0.5);
  std::mt19937_64 rng(7);
  Eigen::MatrixXd x = SampleGmm(truth, 6000, rng);
  EmOptions opts;
  opts.final_iters = 50;
  GmmModel g = TrainUbm(x, 3, opts);
  REQUIRE(g.num_components() == 3);
  std::vector<bool> used(3, false);
  for (int t = 0; t < 3; ++t) {
    int best = -1;
    double dist = 1e300;
    for (int k = 0; k < 3; ++k) {
      double d = (g.means.row(k) - truth.means.row(t)).norm();
      if (!used[k] && d < dist) {
        dist = d;
        best = k;
      }
    }
    used[best] = true;
    CHECK((g.means.row(best) - truth.means.row(t)).cwiseAbs().maxCoeff() < 0.1);
    CHECK(std::abs(g.weights(best) - truth.weights(t)) < 0.05);
  }
}

TEST_CASE("splitting and flooring") {
  GmmModel g;
  g.weights = Eigen::Vector2d(0.25, 0.75);
  g.means = Eigen::MatrixXd::Zero(2, 1);
  g.means(1, 0) = 10;
  g.vars = Eigen::MatrixXd::Constant(2, 1, 4.0);
  GmmModel s = SplitComponents(g, 3);
  REQUIRE(s.num_components() == 3);
  // the heavier component splits at +-0.2 sigma
  CHECK(s.weights(0) == 0.25);
  CHECK(s.weights(1) == 0.375);
  CHECK(s.means(1, 0) == doctest::Approx(10.4));
  CHECK(s.means(2, 0) == doctest::Approx(9.6));
  CHECK_THROWS_AS(SplitComponents(g, 5), std::invalid_argument);

  Eigen::MatrixXd x(4, 2);
  x << 1, 5, 2, 5, 3, 5, 4, 5;
  CHECK_THROWS_AS(TrainUbm(x, 2), std::invalid_argument);  // constant dimension
  Eigen::MatrixXd y = Eigen::MatrixXd::Random(3, 2);
  CHECK_THROWS_AS(TrainUbm(y, 4), std::invalid_argument);  // K > frames

  // a tight cluster plus spread data: variances stay above the floor
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::MatrixXd c(400, 1);
  for (int t = 0; t < 400; ++t) c(t, 0) = t < 200 ? 1.0 + 1e-9 * z(rng) : 50 * z(rng);
  Eigen::VectorXd floor = VarianceFloor(c);
  GmmModel u = TrainUbm(c, 4);
  CHECK(u.vars.minCoeff() >= floor(0) * (1 - 1e-12));
}

TEST_CASE("map adaptation limits") {
  GmmModel ubm;
  ubm.weights = Eigen::Vector2d(0.5, 0.5);
  ubm.means.resize(2, 2);
  ubm.means << 0, 0, 100, 100;
  ubm.vars = Eigen::MatrixXd::Ones(2, 2);

  // 16 frames at (1, -1): all mass on component 0, none on 1
  Eigen::MatrixXd x(16, 2);
  x.col(0).setConstant(1.0);
  x.col(1).setConstant(-1.0);
  GmmModel a = MapAdapt(ubm, x, 16.0);
  CHECK(a.means(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(a.means(0, 1) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(a.means.row(1) == ubm.means.row(1));
  CHECK(a.weights == ubm.weights);
  CHECK(a.vars == ubm.vars);

  Eigen::MatrixXd many(100000, 2);
  many.col(0).setConstant(1.0);
  many.col(1).setConstant(-1.0);
  GmmModel b = MapAdapt(ubm, many, 16.0);
  CHECK(std::abs(b.means(0, 0) - 1.0) <= 16.0 / 100016.0 + 1e-12);

  GmmModel same = MapAdapt(ubm, Eigen::MatrixXd(0, 2));
  CHECK(same.means == ubm.means);
  std::mt19937_64 rng(2);
  Eigen::MatrixXd probe = SampleGmm(ubm, 50, rng);
  CHECK(LlrScore(same, ubm, probe) == 0.0);
}

TEST_CASE("llr scoring") {
  std::mt19937_64 rng(11);
  GmmModel ubm = RandomGmm(8, 3, rng, 6.0);
  Eigen::MatrixXd x = SampleGmm(ubm, 200, rng);
  CHECK(std::abs(LlrScore(ubm, ubm, x)) < 1e-12);

  // order invariance
  Eigen::MatrixXd rev = x.colwise().reverse();
  GmmModel spk = MapAdapt(ubm, SampleGmm(RandomGmm(8, 3, rng, 6.0), 300, rng));
  CHECK(std::abs(LlrScore(spk, ubm, x) - LlrScore(spk, ubm, rev)) < 1e-12);

  double mean = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::mt19937_64 r(500 + trial);
    mean += LlrScore(spk, ubm, SampleGmm(spk, 50, r)) / 100;
  }
  CHECK(mean > 0.0);
  CHECK_THROWS_AS(LlrScore(spk, ubm, Eigen::MatrixXd(0, 3)), std::invalid_argument);

  // average log density over own samples is finite and stable
  std::mt19937_64 r1(1), r2(2);
  double l1 = FrameLogLikelihoods(ubm, SampleGmm(ubm, 20000, r1)).mean();
  double l2 = FrameLogLikelihoods(ubm, SampleGmm(ubm, 20000, r2)).mean();
  CHECK(std::isfinite(l1));
  CHECK(std::abs(l1 - l2) < 0.05);
}

TEST_CASE("equal error rate") {
  CHECK(Eer({{3, 4, 5}, {0, 1, 2}}) == 0.0);
  CHECK(Eer({{1, 2, 3, 4}, {1, 2, 3, 4}}) == doctest::Approx(0.5));
  CHECK(Eer({{1, 2, 3, 4, 5}, {1, 2, 3, 4, 5}}) == doctest::Approx(0.5));
  CHECK(Eer({{0, 1}, {2, 3}}) == 1.0);
  CHECK_THROWS_AS(Eer({{}, {1}}), std::invalid_argument);

  std::mt19937_64 rng(17);
  std::normal_distribution<double> z(0.0, 1.0);
  ScoreSet s;
  for (int i = 0; i < 100000; ++i) {
    s.target.push_back(2.0 + z(rng));
    s.impostor.push_back(z(rng));
  }
  const double expected = 1.0 - boost::math::cdf(boost::math::normal(), 1.0);
  const double e = Eer(s);
  MESSAGE("gaussian eer " << e << " expected " << expected);
  CHECK(std::abs(e - expected) < 0.005);

  ScoreSet t = s;
  for (double &v : t.target) v = std::exp(v);
  for (double &v : t.impostor) v = std::exp(v);
  CHECK(std::abs(Eer(t) - e) < 1e-12);
}

TEST_CASE("protocol on a tiny corpus") {
  std::string dir = testing::TempDir("asv_protocol");
  SynthOptions so;
  so.n_speakers = 9;
  so.utterances_per_speaker = 6;
  so.seed = 3;
  so.out_dir = dir;
  Manifest m = SynthCorpus(so);
  MixOptions mo;
  mo.noise = NoiseType::kWhite;
  mo.snrs_db = {0, 20};
  mo.splits = {Split::kEnroll, Split::kTest};
  m = MixManifest(m, mo);
  AsvConfig cfg;
  cfg.components = 8;
  auto identity = [](const Waveform &w) { return w; };
  EerTable t = RunProtocol(m, identity, cfg);
  REQUIRE(t.cells.size() == 3);
  CHECK(t.cells[0].snr_db == 0.0);
  CHECK(t.cells[1].snr_db == 20.0);
  CHECK(!t.cells[2].snr_db);
  CHECK(t.RowMean("white") == doctest::Approx((t.cells[0].eer + t.cells[1].eer) / 2));
  // 3 target speakers with sessions 2, 3, 5, 6 in test, each against 3 models
  CHECK(t.cells[2].trials.size() == 36);
  CHECK(t.ToCsv().rfind("noise,snr,eer\n", 0) == 0);
  CHECK(RunProtocol(m, identity, cfg, 3).ToCsv() == t.ToCsv());

  cfg.protocol = Protocol::kMulti;
  EerTable multi = RunProtocol(m, identity, cfg);
  CHECK(multi.cells.size() == 3);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace cganse::asv
