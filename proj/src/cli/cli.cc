// src/cli/cli.cc

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

#include "cganse/cli/cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "cganse/asv/protocol.h"
#include "cganse/cli/image.h"
#include "cganse/cli/run_config.h"
#include "cganse/cli/run_log.h"
#include "cganse/corpus/manifest.h"
#include "cganse/corpus/mix.h"
#include "cganse/corpus/synth.h"
#include "cganse/corpus/wav_io.h"
#include "cganse/dnnse/model.h"
#include "cganse/dsp/filterbank.h"
#include "cganse/metrics/report.h"
#include "cganse/mmse/stsa.h"
#include "cganse/nn/runtime.h"
#include "cganse/pix2pix/model.h"
#include "cganse/pix2pix/train.h"
#include "cganse/util/parallel.h"

namespace cganse::cli {

namespace fs = std::filesystem;

namespace {

struct Globals {
  int jobs = 1;
  std::string run_log;
  std::string config_file;
  std::vector<std::string> sets;
};

// A command-line flag feeding a config key.
struct Flag {
  CLI::Option *option = nullptr;
  std::string key;
  std::string value;
};

struct Context {
  Context(std::ostream &o, std::ostream &e) : out(o), err(e) {}

  std::ostream &out;
  std::ostream &err;
  RunConfig config;
  int jobs = 1;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::map<std::string, std::string> given;  // flags present on the command line

  std::optional<std::string> Flag(const std::string &key) const {
    auto it = given.find(key);
    if (it == given.end()) return std::nullopt;
    return it->second;
  }

  const std::string &Require(const std::string &key) const {
    const std::string &v = config.Get(key);
    if (v.empty()) throw UsageError("missing --" + key);
    return v;
  }

  void AddInput(const std::string &path) { inputs.emplace_back(path, GitBlobHashFile(path)); }

  Manifest LoadManifest() {
    const std::string &path = Require("manifest");
    Manifest m = Manifest::Load(path);
    AddInput(path);
    return m;
  }
};

struct Command {
  std::string name;
  CLI::App *app = nullptr;
  std::vector<std::unique_ptr<Flag>> flags;
  std::function<void(Context &)> define;
  std::function<void(Context &)> body;

  void AddFlag(const std::string &key, const std::string &help) {
    auto f = std::make_unique<Flag>();
    f->key = key;
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    f->option = app->add_option("--" + name, f->value, help);
    flags.push_back(std::move(f));
  }
};

void WriteText(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

Waveform ReadInputWav(Context &ctx, const std::string &path) {
  WavReadOptions opts;
  opts.allow_resample = true;
  Waveform w = LoadWav(path, opts);
  ctx.AddInput(path);
  return w;
}

// Library preconditions on user-supplied values surface as usage errors.
template <typename Cfg>
void ValidateConfig(const Cfg &cfg) {
  try {
    cfg.Validate();
  } catch (const std::invalid_argument &e) {
    throw UsageError(e.what());
  }
}

// ---------------------------------------------------------------- front ends

struct FrontEndSpec {
  std::string name, kind, ckpt;
};

FrontEndSpec ParseFrontEndSpec(const std::string &spec) {
  FrontEndSpec s;
  std::string rest = spec;
  std::size_t eq = rest.find('=');
  if (eq != std::string::npos) {
    s.name = rest.substr(0, eq);
    rest = rest.substr(eq + 1);
  }
  std::size_t colon = rest.find(':');
  s.kind = rest.substr(0, colon);
  if (colon != std::string::npos) s.ckpt = rest.substr(colon + 1);
  if (s.kind == "none" || s.kind == "mmse") {
    if (!s.ckpt.empty()) throw UsageError("front end " + s.kind + " takes no checkpoint");
  } else if (s.kind == "pix2pix" || s.kind == "dnnse") {
    if (s.ckpt.empty()) throw UsageError("front end " + s.kind + " needs " + s.kind + ":CKPT");
  } else {
    throw UsageError("unknown front end '" + spec + "'");
  }
  if (s.name.empty()) s.name = s.kind;
  return s;
}

metrics::FrontEnd MakeFrontEnd(Context &ctx, const FrontEndSpec &s) {
  metrics::FrontEnd fe;
  fe.name = s.name;
  if (s.kind == "none") {
    fe.enhance = [](const Waveform &w) { return w; };
  } else if (s.kind == "mmse") {
    fe.enhance = [](const Waveform &w) { return mmse::EnhanceMmse(w); };
  } else if (s.kind == "pix2pix") {
    std::shared_ptr<pix2pix::Pix2PixModel> model = pix2pix::LoadModel(s.ckpt);
    ctx.AddInput(s.ckpt);
    fe.enhance = [model](const Waveform &w) { return pix2pix::EnhancePix2Pix(w, *model); };
  } else {
    auto model = std::make_shared<dnnse::DnnSeModel>(dnnse::LoadModel(s.ckpt));
    ctx.AddInput(s.ckpt);
    auto bank = std::make_shared<dsp::FilterBank>(dsp::MelGammatoneBank());
    fe.enhance = [model, bank](const Waveform &w) { return dnnse::EnhanceDnnSe(w, *model, *bank); };
  }
  return fe;
}

// ---------------------------------------------------------------- synth

void DefineSynth(Context &ctx) {
  ctx.config.Define("out", "");
  ctx.config.Define("speakers", "6");
  ctx.config.Define("utts", "9");
  ctx.config.Define("seed", "1");
}

void RunSynth(Context &ctx) {
  SynthOptions o;
  o.out_dir = ctx.Require("out");
  o.n_speakers = ctx.config.GetInt("speakers");
  o.utterances_per_speaker = ctx.config.GetInt("utts");
  o.seed = ctx.config.GetUint64("seed");
  if (o.n_speakers < 2) throw UsageError("--speakers must be at least 2");
  if (o.utterances_per_speaker < 1) throw UsageError("--utts must be at least 1");
  Manifest m = SynthCorpus(o);
  const std::string path = (fs::path(o.out_dir) / "manifest.jsonl").string();
  m.Save(path);
  ctx.out << "synth: " << m.entries.size() << " utterances, manifest " << path << '\n';
}

// ---------------------------------------------------------------- mix

void DefineMix(Context &ctx) {
  ctx.config.Define("manifest", "");
  ctx.config.Define("noise", "");
  ctx.config.Define("snr", "");
  ctx.config.Define("seed", "1");
  ctx.config.Define("splits", "enhancer_train,enroll,test");
  ctx.config.Define("out", "");
}

void RunMix(Context &ctx) {
  const std::string manifest_path = ctx.Require("manifest");
  MixOptions o;
  const std::string noise = ctx.Require("noise");
  std::optional<NoiseType> nt = ParseNoiseType(noise);
  if (!nt) throw UsageError("unknown noise type '" + noise + "'");
  o.noise = *nt;
  o.snrs_db = ctx.config.GetDoubles("snr");
  if (o.snrs_db.empty()) throw UsageError("missing --snr");
  o.seed = ctx.config.GetUint64("seed");
  o.splits.clear();
  for (const std::string &s : SplitList(ctx.config.Get("splits"))) {
    std::optional<Split> sp = ParseSplit(s);
    if (!sp) throw UsageError("unknown split '" + s + "'");
    o.splits.push_back(*sp);
  }
  std::string out_path = ctx.config.Get("out");
  if (out_path.empty()) out_path = manifest_path;
  // Entries hold paths relative to the manifest directory.
  if (fs::weakly_canonical(fs::absolute(out_path)).parent_path() !=
      fs::weakly_canonical(fs::absolute(manifest_path)).parent_path())
    throw UsageError("--out must be in the directory of --manifest");
  Manifest m = ctx.LoadManifest();
  const std::size_t before = m.entries.size();
  Manifest mixed = MixManifest(m, o);
  mixed.Save(out_path);
  ctx.out << "mix: " << NoiseTypeName(o.noise) << ", " << mixed.entries.size() - before
          << " mixtures, manifest " << out_path << '\n';
}

// ---------------------------------------------------------------- train

struct TrainSelection {
  std::vector<const ManifestEntry *> entries;
  std::vector<std::string> noises;
};

TrainSelection SelectTrainingMixtures(const Manifest &m, const std::string &front_end,
                                      const std::vector<double> &snrs, int max_utts) {
  std::optional<NoiseType> only;
  if (front_end.rfind("ns:", 0) == 0) {
    only = ParseNoiseType(front_end.substr(3));
    if (!only) throw UsageError("unknown noise type in --front-end " + front_end);
  } else if (front_end != "ng") {
    throw UsageError("--front-end must be ng or ns:<noise>, got '" + front_end + "'");
  }
  TrainSelection sel;
  for (const ManifestEntry *e : m.Select(Split::kEnhancerTrain, true)) {
    if (only && e->condition->noise_type != *only) continue;
    if (!snrs.empty() && std::none_of(snrs.begin(), snrs.end(), [&](double s) {
          return std::abs(s - e->condition->snr_db) < 1e-9;
        }))
      continue;
    sel.entries.push_back(e);
  }
  if (max_utts > 0) {
    // Keep every mixture of the first max_utts clean sources.
    std::vector<std::string> sources;
    std::vector<const ManifestEntry *> kept;
    for (const ManifestEntry *e : sel.entries) {
      auto it = std::find(sources.begin(), sources.end(), e->clean_path);
      if (it == sources.end()) {
        if (static_cast<int>(sources.size()) >= max_utts) continue;
        sources.push_back(e->clean_path);
      }
      kept.push_back(e);
    }
    sel.entries = std::move(kept);
  }
  if (sel.entries.empty())
    throw std::runtime_error("train: no enhancer_train mixtures match --front-end " + front_end);
  for (const ManifestEntry *e : sel.entries) {
    std::string n = NoiseTypeName(e->condition->noise_type);
    if (std::find(sel.noises.begin(), sel.noises.end(), n) == sel.noises.end())
      sel.noises.push_back(n);
  }
  return sel;
}

void DefineTrain(Context &ctx) {
  std::optional<std::string> method = ctx.Flag("method");
  if (!method) throw UsageError("missing --method");
  RunConfig &c = ctx.config;
  c.Define("method", *method);
  c.Define("front_end", "");
  c.Define("manifest", "");
  c.Define("out", "");
  c.Define("train_snrs", "10,20");
  c.Define("max_utterances", "0");
  c.Define("log_every", "50");
  if (*method == "pix2pix") {
    pix2pix::TrainConfig d;
    c.Define("seed", std::to_string(d.seed));
    c.Define("epochs", std::to_string(d.epochs));
    c.Define("batch_size", std::to_string(d.batch_size));
    c.Define("g_steps", std::to_string(d.g_steps_per_iter));
    c.Define("l1_weight", "100");
    c.Define("lr", "2e-4");
    c.Define("beta1", "0.5");
    c.Define("beta2", "0.999");
    c.Define("side", std::to_string(d.net.side));
    c.Define("base_channels", std::to_string(d.net.base_channels));
    c.Define("channel_cap", std::to_string(d.net.channel_cap));
    c.Define("inference_bn", "batch");
  } else if (*method == "dnnse") {
    dnnse::DnnSeConfig d;
    c.Define("seed", std::to_string(d.seed));
    c.Define("hidden", "1024,1024,1024");
    c.Define("epochs", std::to_string(d.epochs));
    c.Define("batch_size", std::to_string(d.batch_size));
    c.Define("lr", "0.1");
    c.Define("momentum", "0.9");
    c.Define("lr_decay", "0.5");
    c.Define("val_fraction", "0.1");
  } else {
    throw UsageError("--method must be pix2pix or dnnse, got '" + *method + "'");
  }
}

void TrainPix2Pix(Context &ctx, const Manifest &m, const TrainSelection &sel) {
  const RunConfig &c = ctx.config;
  pix2pix::TrainConfig cfg;
  cfg.seed = c.GetUint64("seed");
  cfg.epochs = c.GetInt("epochs");
  cfg.batch_size = c.GetInt("batch_size");
  cfg.g_steps_per_iter = c.GetInt("g_steps");
  cfg.l1_weight = c.GetDouble("l1_weight");
  cfg.adam.lr = c.GetDouble("lr");
  cfg.adam.beta1 = c.GetDouble("beta1");
  cfg.adam.beta2 = c.GetDouble("beta2");
  cfg.net.side = c.GetInt("side");
  cfg.net.base_channels = c.GetInt("base_channels");
  cfg.net.channel_cap = c.GetInt("channel_cap");
  const std::string &bn = c.Get("inference_bn");
  if (bn != "batch" && bn != "running") throw UsageError("inference_bn must be batch or running");
  cfg.net.batch_stats_inference = bn == "batch";
  cfg.front_end_kind = c.Get("front_end") == "ng" ? pix2pix::FrontEndKind::kNoiseGeneral
                                                  : pix2pix::FrontEndKind::kNoiseSpecific;
  ValidateConfig(cfg);
  const int log_every = c.GetInt("log_every");

  std::vector<Waveform> noisy(sel.entries.size()), clean(sel.entries.size());
  ParallelFor(sel.entries.size(), ctx.jobs, [&](std::size_t i) {
    noisy[i] = m.LoadAudio(*sel.entries[i]);
    clean[i] = m.LoadClean(*sel.entries[i]);
  });
  pix2pix::ChunkDataset data = pix2pix::BuildChunkDataset(noisy, clean, cfg.net.side);
  ctx.out << "train pix2pix: " << sel.entries.size() << " mixtures, " << data.noisy.size()
          << " chunks\n";
  ctx.out << "iteration d_loss g_adv g_l1\n";
  pix2pix::TrainResult r = pix2pix::Train(data, cfg, [&](const pix2pix::LossRecord &rec) {
    if (log_every > 0 && rec.iteration % log_every == 0)
      ctx.out << pix2pix::FormatLossRecord(rec) << '\n';
  });
  pix2pix::SaveModel(*r.model, c.Get("out"));
  ctx.out << "saved " << c.Get("out") << " after " << r.model->counters.iterations
          << " iterations\n";
}

void TrainDnn(Context &ctx, const Manifest &m, const TrainSelection &sel) {
  const RunConfig &c = ctx.config;
  dnnse::DnnSeConfig cfg;
  cfg.seed = c.GetUint64("seed");
  cfg.hidden = c.GetInts("hidden");
  cfg.epochs = c.GetInt("epochs");
  cfg.batch_size = c.GetInt("batch_size");
  cfg.lr = c.GetDouble("lr");
  cfg.momentum = c.GetDouble("momentum");
  cfg.lr_decay = c.GetDouble("lr_decay");
  ValidateConfig(cfg);
  const double val_fraction = c.GetDouble("val_fraction");
  if (!(val_fraction > 0 && val_fraction < 1)) throw UsageError("val_fraction must be in (0, 1)");

  const std::size_t n = sel.entries.size();
  if (n < 2) throw std::runtime_error("train dnnse: need at least two mixtures");
  const dsp::FilterBank bank = dsp::MelGammatoneBank();
  std::vector<dnnse::DnnSeExample> all(n);
  ParallelFor(n, ctx.jobs, [&](std::size_t i) {
    all[i] = dnnse::MakeExample(m.LoadClean(*sel.entries[i]), m.LoadNoise(*sel.entries[i]), bank);
  });
  // Validation mixtures spread evenly over the selection.
  const std::size_t n_val =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::lround(val_fraction * n)), 1, n - 1);
  std::vector<dnnse::DnnSeExample> train, val;
  for (std::size_t i = 0; i < n; ++i) {
    const bool is_val = (i * n_val) / n != ((i + 1) * n_val) / n;
    (is_val ? val : train).push_back(std::move(all[i]));
  }
  ctx.out << "train dnnse: " << train.size() << " train, " << val.size() << " validation mixtures\n";
  ctx.out << "epoch train_mse val_mse lr\n";
  dnnse::DnnSeModel model = dnnse::TrainDnnSe(train, val, cfg, [&](const dnnse::DnnSeEpochRecord &r) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d %.6f %.6f %.6g", r.epoch, r.train_loss, r.val_loss, r.lr);
    ctx.out << buf << '\n';
  });
  dnnse::SaveModel(model, c.Get("out"));
  ctx.out << "saved " << c.Get("out") << '\n';
}

void RunTrain(Context &ctx) {
  const std::string front_end = ctx.Require("front_end");
  ctx.Require("out");
  Manifest m = ctx.LoadManifest();
  const int max_utts = ctx.config.GetInt("max_utterances");
  if (max_utts < 0) throw UsageError("max_utterances must be >= 0");
  TrainSelection sel =
      SelectTrainingMixtures(m, front_end, ctx.config.GetDoubles("train_snrs"), max_utts);
  std::string noises;
  for (const std::string &n : sel.noises) noises += (noises.empty() ? "" : ",") + n;
  ctx.out << "front end " << front_end << ": noises " << noises << '\n';
  if (ctx.config.Get("method") == "pix2pix")
    TrainPix2Pix(ctx, m, sel);
  else
    TrainDnn(ctx, m, sel);
}

// ---------------------------------------------------------------- enhance

void DefineEnhance(Context &ctx) {
  ctx.config.Define("method", "");
  ctx.config.Define("ckpt", "");
  ctx.config.Define("in", "");
  ctx.config.Define("out", "");
}

void RunEnhance(Context &ctx) {
  const std::string method = ctx.Require("method");
  const std::string in = ctx.Require("in"), out = ctx.Require("out");
  std::string spec = method;
  if (method == "pix2pix" || method == "dnnse") {
    spec += ":" + ctx.Require("ckpt");
  } else if (method != "none" && method != "mmse") {
    throw UsageError("--method must be mmse, pix2pix, dnnse or none, got '" + method + "'");
  }
  FrontEndSpec fs_spec = ParseFrontEndSpec(spec);
  Waveform w = ReadInputWav(ctx, in);
  if (method == "none") {
    fs::copy_file(in, out, fs::copy_options::overwrite_existing);
  } else {
    metrics::FrontEnd fe = MakeFrontEnd(ctx, fs_spec);
    SaveWav(out, fe.enhance(w));
  }
  ctx.out << "enhance " << method << ": " << out << '\n';
}

// ---------------------------------------------------------------- eval

void DefineEval(Context &ctx) {
  ctx.config.Define("manifest", "");
  ctx.config.Define("front_ends", "none,mmse");
  ctx.config.Define("split", "test");
  ctx.config.Define("out", "");
}

void RunEval(Context &ctx) {
  const std::string out = ctx.Require("out");
  std::optional<Split> split;
  const std::string &s = ctx.config.Get("split");
  if (s != "all") {
    split = ParseSplit(s);
    if (!split) throw UsageError("unknown split '" + s + "'");
  }
  std::vector<FrontEndSpec> specs;
  for (const std::string &f : SplitList(ctx.config.Get("front_ends"))) {
    FrontEndSpec sp = ParseFrontEndSpec(f);
    for (const FrontEndSpec &o : specs)
      if (o.name == sp.name)
        throw UsageError("duplicate front end name '" + sp.name + "'; use NAME=" + f);
    specs.push_back(sp);
  }
  if (specs.empty()) throw UsageError("missing --front-ends");
  Manifest m = ctx.LoadManifest();
  std::vector<metrics::FrontEnd> fes;
  for (const FrontEndSpec &sp : specs) fes.push_back(MakeFrontEnd(ctx, sp));
  metrics::EvalReport report = metrics::BuildReport(m, fes, split, ctx.jobs);
  if (report.cells.empty()) throw std::runtime_error("eval: no noisy entries in the selected split");
  WriteText(out, report.ToCsv());
  ctx.out << report.ToTable();
}

// ---------------------------------------------------------------- asv

void DefineAsv(Context &ctx) {
  asv::AsvConfig d;
  RunConfig &c = ctx.config;
  c.Define("manifest", "");
  c.Define("protocol", "clean");
  c.Define("enhancer", "none");
  c.Define("out", "");
  c.Define("scores", "");
  c.Define("components", std::to_string(d.components));
  c.Define("relevance", "16");
  c.Define("mean_norm", "true");
  c.Define("iters_per_split", std::to_string(d.em.iters_per_split));
  c.Define("final_iters", std::to_string(d.em.final_iters));
}

void RunAsv(Context &ctx) {
  const RunConfig &c = ctx.config;
  const std::string out = ctx.Require("out");
  asv::AsvConfig cfg;
  std::optional<asv::Protocol> p = asv::ParseProtocol(c.Get("protocol"));
  if (!p) throw UsageError("--protocol must be clean or multi");
  cfg.protocol = *p;
  cfg.components = c.GetInt("components");
  cfg.relevance = c.GetDouble("relevance");
  cfg.mean_norm = c.GetBool("mean_norm");
  cfg.em.iters_per_split = c.GetInt("iters_per_split");
  cfg.em.final_iters = c.GetInt("final_iters");
  if (cfg.components < 1) throw UsageError("components must be >= 1");
  if (!(cfg.relevance > 0)) throw UsageError("relevance must be > 0");
  if (cfg.em.iters_per_split < 0 || cfg.em.final_iters < 0)
    throw UsageError("EM iteration counts must be >= 0");
  FrontEndSpec spec = ParseFrontEndSpec(c.Get("enhancer"));
  Manifest m = ctx.LoadManifest();
  metrics::FrontEnd fe = MakeFrontEnd(ctx, spec);
  asv::EerTable table = asv::RunProtocol(m, fe.enhance, cfg, ctx.jobs);
  WriteText(out, table.ToCsv());
  if (!c.Get("scores").empty()) WriteText(c.Get("scores"), table.ScoreLines());
  ctx.out << "protocol " << asv::ProtocolName(cfg.protocol) << ", front end " << fe.name << '\n'
          << table.ToTable();
}

// ---------------------------------------------------------------- specgram

void DefineSpecgram(Context &ctx) {
  ctx.config.Define("in", "");
  ctx.config.Define("out", "");
}

void RunSpecgram(Context &ctx) {
  const std::string in = ctx.Require("in"), out = ctx.Require("out");
  Waveform w = ReadInputWav(ctx, in);
  GrayImage img = SpectrogramImage(w);
  WriteImage(out, img);
  ctx.out << "specgram: " << img.width << "x" << img.height << " " << out << '\n';
}

// ---------------------------------------------------------------- driver

std::string RunLogPath(const Globals &g, const Context &ctx, const std::string &command) {
  if (!g.run_log.empty()) return g.run_log;
  std::string target;
  for (const char *key : {"out", "manifest"})
    if (target.empty() && ctx.config.Has(key)) target = ctx.config.Get(key);
  if (target.empty()) return "";
  fs::path out(target);
  fs::path dir = command == "synth" ? out : out.parent_path();
  if (dir.empty()) dir = ".";
  return (dir / "run_log.jsonl").string();
}

int Execute(Command &cmd, const Globals &g, const std::vector<std::string> &args,
            std::ostream &out, std::ostream &err) {
  const auto start = std::chrono::steady_clock::now();
  Context ctx(out, err);
  ctx.jobs = g.jobs;
  int code = kExitOk;
  try {
    for (const auto &f : cmd.flags)
      if (f->option->count() > 0) ctx.given[f->key] = f->value;
    cmd.define(ctx);
    if (!g.config_file.empty()) {
      ctx.config.MergeFile(g.config_file);
      ctx.AddInput(g.config_file);
    }
    for (const std::string &s : g.sets) ctx.config.MergeAssignment(s);
    for (const auto &[k, v] : ctx.given) ctx.config.Set(k, v);
    // Training parallelism lives in BLAS; everything else fans out per utterance.
    nn::SetBlasThreads(cmd.name == "train" ? g.jobs : 1);
    cmd.body(ctx);
  } catch (const UsageError &e) {
    err << "cganse " << cmd.name << ": " << e.what() << '\n';
    code = kExitUsage;
  } catch (const std::exception &e) {
    err << "cganse " << cmd.name << ": " << e.what() << '\n';
    code = kExitRuntime;
  }
  const std::string log_path = RunLogPath(g, ctx, cmd.name);
  if (!log_path.empty()) {
    RunRecord rec;
    rec.command = cmd.name;
    rec.argv = args;
    rec.config = ctx.config.ToJson();
    rec.inputs = ctx.inputs;
    rec.wall_time_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rec.exit_code = code;
    try {
      AppendRunLog(log_path, rec);
    } catch (const std::exception &e) {
      err << "cganse: warning: " << e.what() << '\n';
    }
  }
  return code;
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"cganse: speech enhancement front ends for speaker verification"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--jobs", g.jobs, "worker threads; 1 gives bit-reproducible runs")
      ->check(CLI::PositiveNumber);
  app.add_option("--run-log", g.run_log, "append the run record here (default: next to --out)");
  app.add_option("--config", g.config_file, "key = value config file");
  app.add_option("--set", g.sets, "override a config key, key=value (repeatable)");

  std::vector<std::unique_ptr<Command>> cmds;
  auto add = [&](const std::string &name, const std::string &help,
                 std::function<void(Context &)> define, std::function<void(Context &)> body) {
    auto c = std::make_unique<Command>();
    c->name = name;
    c->app = app.add_subcommand(name, help);
    c->app->fallthrough();
    c->define = std::move(define);
    c->body = std::move(body);
    cmds.push_back(std::move(c));
    return cmds.back().get();
  };

  Command *c = add("synth", "synthesise a speech-like corpus", DefineSynth, RunSynth);
  c->AddFlag("out", "output directory");
  c->AddFlag("speakers", "number of speakers");
  c->AddFlag("utts", "utterances per speaker");
  c->AddFlag("seed", "corpus seed");

  c = add("mix", "add noise at the given SNRs", DefineMix, RunMix);
  c->AddFlag("manifest", "input manifest");
  c->AddFlag("noise", "white, babble, cantine_like, market_like or airplane_like");
  c->AddFlag("snr", "comma separated SNRs in dB");
  c->AddFlag("seed", "noise seed");
  c->AddFlag("out", "output manifest (default: overwrite --manifest)");

  c = add("train", "train a learned front end", DefineTrain, RunTrain);
  c->AddFlag("method", "pix2pix or dnnse");
  c->AddFlag("front_end", "ng or ns:<noise>");
  c->AddFlag("manifest", "manifest with enhancer_train mixtures");
  c->AddFlag("out", "checkpoint path");
  c->AddFlag("seed", "training seed");

  c = add("enhance", "enhance one file", DefineEnhance, RunEnhance);
  c->AddFlag("method", "mmse, pix2pix, dnnse or none");
  c->AddFlag("ckpt", "checkpoint for pix2pix/dnnse");
  c->AddFlag("in", "input WAV");
  c->AddFlag("out", "output WAV");

  c = add("eval", "STOI / segSNR / LSD grid", DefineEval, RunEval);
  c->AddFlag("manifest", "manifest");
  c->AddFlag("front_ends", "comma list: none, mmse, pix2pix:CKPT, dnnse:CKPT, NAME=...");
  c->AddFlag("split", "split to score, or all");
  c->AddFlag("out", "CSV path");

  c = add("asv", "GMM-UBM speaker verification protocol", DefineAsv, RunAsv);
  c->AddFlag("manifest", "manifest");
  c->AddFlag("protocol", "clean or multi");
  c->AddFlag("enhancer", "front end, as for eval");
  c->AddFlag("out", "EER CSV path");
  c->AddFlag("scores", "trial score file");
  c->AddFlag("components", "UBM components");

  c = add("specgram", "render a log spectrogram", DefineSpecgram, RunSpecgram);
  c->AddFlag("in", "input WAV");
  c->AddFlag("out", "output .png or .pgm");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "cganse: " << e.what() << '\n';
    return kExitUsage;
  }
  for (auto &cmd : cmds)
    if (cmd->app->parsed()) return Execute(*cmd, g, args, out, err);
  err << "cganse: no command\n";
  return kExitUsage;
}

}  // namespace cganse::cli
