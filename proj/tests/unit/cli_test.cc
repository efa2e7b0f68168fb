// tests/unit/cli_test.cc

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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "json.hpp"

#include "cganse/cli/cli.h"
#include "cganse/cli/image.h"
#include "cganse/cli/run_config.h"
#include "cganse/cli/run_log.h"
#include "cganse/corpus/manifest.h"
#include "cganse/corpus/wav_io.h"
#include "cganse/dsp/stft.h"
#include "unit/test_util.h"

namespace cganse::cli {
namespace {

namespace fs = std::filesystem;
using testing::ReadBytes;
using testing::TempDir;

struct Run {
  int code = 0;
  std::string out, err;
};

Run Cli(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  Run r;
  r.code = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string Slurp(const std::string &path) {
  std::vector<char> b = ReadBytes(path);
  return std::string(b.begin(), b.end());
}

TEST_CASE("run config") {
  RunConfig c;
  c.Define("epochs", "10");
  c.Define("lr", "2e-4");
  c.Define("snrs", "10,20");
  c.Define("flag", "true");
  c.MergeText("# comment\n epochs = 3  # trailing\n\nlr=0.5\n");
  CHECK(c.GetInt("epochs") == 3);
  CHECK(c.GetDouble("lr") == 0.5);
  CHECK(c.GetDoubles("snrs") == std::vector<double>{10, 20});
  CHECK(c.GetBool("flag"));
  CHECK_THROWS_AS(c.MergeText("bogus = 1\n"), UsageError);
  CHECK_THROWS_AS(c.MergeText("epochs\n"), UsageError);
  CHECK_THROWS_AS(c.MergeAssignment("nokey"), UsageError);
  c.MergeAssignment("epochs=7");
  CHECK(c.GetInt("epochs") == 7);
  c.Set("epochs", "7x");
  CHECK_THROWS_AS(c.GetInt("epochs"), UsageError);
  c.Set("snrs", "");
  CHECK(c.GetDoubles("snrs").empty());
  CHECK(c.ToJson().dump() == R"({"epochs":"7x","lr":"0.5","snrs":"","flag":"true"})");
}

TEST_CASE("git blob hash") {
  // Values printed by `git hash-object`.
  CHECK(GitBlobHash("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  CHECK(GitBlobHash("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST_CASE("synth and mix commands") {
  const std::string dir = TempDir("cli_synth");
  const std::string a = dir + "/a", b = dir + "/b";
  Run r = Cli({"synth", "--out", a, "--speakers", "2", "--utts", "3", "--seed", "5"});
  REQUIRE(r.code == 0);
  CHECK(Manifest::Load(a + "/manifest.jsonl").entries.size() == 6);
  REQUIRE(Cli({"synth", "--out", b, "--speakers", "2", "--utts", "3", "--seed", "5"}).code == 0);
  CHECK(Slurp(a + "/manifest.jsonl") == Slurp(b + "/manifest.jsonl"));

  // A regular file where a directory is needed.
  std::ofstream(dir + "/file") << "x";
  r = Cli({"synth", "--out", dir + "/file/sub", "--speakers", "2", "--utts", "1"});
  CHECK(r.code != 0);
  CHECK(!r.err.empty());

  r = Cli({"mix", "--manifest", a + "/manifest.jsonl", "--noise", "purple", "--snr", "0"});
  CHECK(r.code == kExitUsage);
  r = Cli({"mix", "--manifest", a + "/manifest.jsonl", "--noise", "white", "--snr",
           "0,5,10,15,20"});
  REQUIRE(r.code == 0);
  Manifest m = Manifest::Load(a + "/manifest.jsonl");
  int clean = 0;
  for (const ManifestEntry &e : m.entries) {
    if (!e.condition) {
      if (e.split != Split::kUbm) ++clean;
      continue;
    }
  }
  int noisy = 0;
  for (const ManifestEntry &e : m.entries) noisy += e.condition.has_value();
  CHECK(noisy == 5 * clean);

  // Usage errors.
  CHECK(Cli({}).code == kExitUsage);
  CHECK(Cli({"frobnicate"}).code == kExitUsage);
  CHECK(Cli({"synth", "--speakers", "2"}).code == kExitUsage);
  CHECK(Cli({"--set", "bogus=1", "synth", "--out", dir + "/c"}).code == kExitUsage);
  CHECK(Cli({"synth", "--out", dir + "/c", "--speakers", "two"}).code == kExitUsage);

  // Every run leaves a record next to its output.
  std::ifstream log(a + "/run_log.jsonl");
  std::string line, last;
  int lines = 0;
  while (std::getline(log, line)) {
    last = line;
    ++lines;
  }
  CHECK(lines >= 3);
  nlohmann::json rec = nlohmann::json::parse(last);
  CHECK(rec["command"] == "mix");
  CHECK(rec["config"]["snr"] == "0,5,10,15,20");
  CHECK(rec["exit_code"] == 0);
  CHECK(rec["inputs"].size() == 1);
  CHECK(rec["wall_time_sec"].get<double>() >= 0);
}

TEST_CASE("config file") {
  const std::string dir = TempDir("cli_config");
  std::ofstream(dir + "/run.cfg") << "# corpus\nspeakers = 3\nutts = 2\n";
  Run r = Cli({"--config", dir + "/run.cfg", "synth", "--out", dir + "/c", "--utts", "1"});
  REQUIRE(r.code == 0);
  // Flags win over the file.
  CHECK(Manifest::Load(dir + "/c/manifest.jsonl").entries.size() == 3);
  std::ofstream(dir + "/bad.cfg") << "speakers = 3\nfrobs = 1\n";
  r = Cli({"--config", dir + "/bad.cfg", "synth", "--out", dir + "/d"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("frobs") != std::string::npos);
}

TEST_CASE("enhance command") {
  const std::string dir = TempDir("cli_enhance");
  REQUIRE(Cli({"synth", "--out", dir, "--speakers", "2", "--utts", "1"}).code == 0);
  Manifest m = Manifest::Load(dir + "/manifest.jsonl");
  const std::string in = m.Resolve(m.entries[0].file_path);
  const std::size_t n = LoadWav(in).size();

  REQUIRE(Cli({"enhance", "--method", "none", "--in", in, "--out", dir + "/none.wav"}).code == 0);
  CHECK(ReadBytes(in) == ReadBytes(dir + "/none.wav"));
  REQUIRE(Cli({"enhance", "--method", "mmse", "--in", in, "--out", dir + "/mmse.wav"}).code == 0);
  CHECK(LoadWav(dir + "/mmse.wav").size() == n);

  CHECK(Cli({"enhance", "--method", "pix2pix", "--in", in, "--out", dir + "/p.wav"}).code ==
        kExitUsage);
  CHECK(Cli({"enhance", "--method", "wiener", "--in", in, "--out", dir + "/p.wav"}).code ==
        kExitUsage);
  CHECK(Cli({"enhance", "--method", "mmse", "--in", dir + "/missing.wav", "--out",
             dir + "/p.wav"}).code == kExitRuntime);
}

TEST_CASE("train, enhance and eval with learned front ends") {
  const std::string dir = TempDir("cli_train");
  const std::string manifest = dir + "/manifest.jsonl";
  REQUIRE(Cli({"synth", "--out", dir, "--speakers", "6", "--utts", "2"}).code == 0);
  REQUIRE(Cli({"mix", "--manifest", manifest, "--noise", "white", "--snr", "0,10,20"}).code == 0);
  REQUIRE(Cli({"mix", "--manifest", manifest, "--noise", "market_like", "--snr", "10,20", "--seed", "2"})
              .code == 0);
  const std::vector<std::string> small = {"--set", "side=8",  "--set", "base_channels=2",
                                          "--set", "epochs=1", "--set", "batch_size=4"};

  std::vector<std::string> args = small;
  const std::string ng_ckpt = dir + "/ng.ckpt", ns_ckpt = dir + "/ns.ckpt";
  for (const char *s : {"train", "--method", "pix2pix", "--front-end", "ng", "--manifest",
                        manifest.c_str(), "--out", ng_ckpt.c_str()})
    args.push_back(s);
  Run r = Cli(args);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(r.out.find("noises white,market_like") != std::string::npos);
  // 2 enhancer_train speakers x 2 utterances x (2 white + 2 market_like) training SNRs.
  CHECK(r.out.find("16 mixtures") != std::string::npos);

  args = small;
  for (const char *s : {"train", "--method", "pix2pix", "--front-end", "ns:white", "--manifest",
                        manifest.c_str(), "--out", ns_ckpt.c_str()})
    args.push_back(s);
  r = Cli(args);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(r.out.find("noises white\n") != std::string::npos);
  CHECK(r.out.find(" 8 mixtures") != std::string::npos);

  CHECK(Cli({"train", "--method", "pix2pix", "--front-end", "ng", "--manifest", manifest}).code ==
        kExitUsage);
  CHECK(Cli({"train", "--method", "pix2pix", "--front-end", "ns:purple", "--manifest", manifest,
             "--out", dir + "/x.ckpt"}).code == kExitUsage);
  CHECK(Cli({"train", "--method", "gan", "--front-end", "ng", "--manifest", manifest, "--out",
             dir + "/x.ckpt"}).code == kExitUsage);

  r = Cli({"--set", "hidden=8", "--set", "epochs=2", "--set", "batch_size=128", "train",
           "--method", "dnnse", "--front-end", "ns:white", "--manifest", manifest, "--out",
           dir + "/dnn.ckpt"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(r.out.find("7 train, 1 validation") != std::string::npos);

  Manifest m = Manifest::Load(manifest);
  const std::string in = m.Resolve(m.Select(Split::kTest, true).front()->file_path);
  const std::size_t n = LoadWav(in).size();
  REQUIRE(Cli({"enhance", "--method", "pix2pix", "--ckpt", dir + "/ng.ckpt", "--in", in, "--out",
               dir + "/p.wav"}).code == 0);
  CHECK(LoadWav(dir + "/p.wav").size() == n);
  REQUIRE(Cli({"enhance", "--method", "dnnse", "--ckpt", dir + "/dnn.ckpt", "--in", in, "--out",
               dir + "/d.wav"}).code == 0);
  CHECK(LoadWav(dir + "/d.wav").size() == n);

  r = Cli({"eval", "--manifest", manifest, "--front-ends",
           "none,ng=pix2pix:" + dir + "/ng.ckpt,dnnse:" + dir + "/dnn.ckpt", "--out",
           dir + "/eval.csv"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const std::string csv = Slurp(dir + "/eval.csv");
  CHECK(csv.rfind("front_end,noise,snr,stoi,seg_snr,lsd\n", 0) == 0);
  CHECK(csv.find("\nng,market_like,10,") != std::string::npos);
  CHECK(csv.find("\ndnnse,white,mean,") != std::string::npos);
  CHECK(r.out.find("STOI") != std::string::npos);
  CHECK(Cli({"eval", "--manifest", manifest, "--front-ends", "none,none", "--out",
             dir + "/e.csv"}).code == kExitUsage);
}

TEST_CASE("asv command") {
  const std::string dir = TempDir("cli_asv");
  const std::string manifest = dir + "/manifest.jsonl";
  REQUIRE(Cli({"synth", "--out", dir, "--speakers", "6", "--utts", "6"}).code == 0);
  REQUIRE(Cli({"mix", "--manifest", manifest, "--noise", "white", "--snr", "0"}).code == 0);
  Run r = Cli({"asv", "--manifest", manifest, "--protocol", "clean", "--components", "4", "--out",
               dir + "/eer.csv", "--scores", dir + "/scores.txt"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const std::string csv = Slurp(dir + "/eer.csv");
  CHECK(csv.rfind("noise,snr,eer\n", 0) == 0);
  CHECK(csv.find("white,clean,") != std::string::npos);
  CHECK(csv.find("white,0,") != std::string::npos);
  CHECK(!Slurp(dir + "/scores.txt").empty());
  CHECK(Cli({"asv", "--manifest", manifest, "--protocol", "dirty", "--out", dir + "/x.csv"})
            .code == kExitUsage);
}

TEST_CASE("spectrogram image") {
  const std::string dir = TempDir("cli_specgram");
  Waveform zero;
  zero.samples.assign(16000, 0.0);
  SaveWav(dir + "/zero.wav", zero);
  REQUIRE(Cli({"specgram", "--in", dir + "/zero.wav", "--out", dir + "/zero.pgm"}).code == 0);
  const int frames = dsp::NumFrames(16000);
  const std::string header = "P5\n" + std::to_string(frames) + " 256\n255\n";
  const std::string pgm = Slurp(dir + "/zero.pgm");
  REQUIRE(pgm.size() == header.size() + static_cast<std::size_t>(frames) * 256);
  CHECK(pgm.compare(0, header.size(), header) == 0);
  CHECK(pgm.find_first_not_of('\0', header.size()) == std::string::npos);

  // A 1 kHz tone lights row 256 - 1 - 32 (bin 32, low frequencies at the bottom).
  Waveform tone = testing::Sine(16000, 1000.0, 0.5);
  GrayImage img = SpectrogramImage(tone);
  CHECK(img.width == frames);
  CHECK(img.height == 256);
  const int mid = frames / 2;
  CHECK(img.at(255 - 32, mid) == 255);
  CHECK(img.at(255 - 32, mid) > img.at(255 - 100, mid));
  CHECK(img.at(255 - 32, mid) > img.at(32, mid));

  SaveWav(dir + "/tone.wav", tone);
  REQUIRE(Cli({"specgram", "--in", dir + "/tone.wav", "--out", dir + "/a.pgm"}).code == 0);
  REQUIRE(Cli({"specgram", "--in", dir + "/tone.wav", "--out", dir + "/b.pgm"}).code == 0);
  CHECK(ReadBytes(dir + "/a.pgm") == ReadBytes(dir + "/b.pgm"));
  if (PngAvailable()) {
    REQUIRE(Cli({"specgram", "--in", dir + "/tone.wav", "--out", dir + "/a.png"}).code == 0);
    CHECK(Slurp(dir + "/a.png").rfind("\x89PNG\r\n\x1a\n", 0) == 0);
  }
}

}  // namespace
}  // namespace cganse::cli
