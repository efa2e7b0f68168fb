// src/asv/protocol.cc

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

#include "cganse/asv/protocol.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cganse/asv/eer.h"
#include "cganse/util/parallel.h"

namespace cganse::asv {

namespace {

struct Utt {
  const ManifestEntry *entry;
  Eigen::MatrixXd feats;
};

struct Speaker {
  std::string id;
  int text_id = 0;
  GmmModel model;
};

Eigen::MatrixXd Stack(const std::vector<const Eigen::MatrixXd *> &parts) {
  Eigen::Index rows = 0, cols = 0;
  for (auto *p : parts) {
    rows += p->rows();
    cols = p->cols();
  }
  Eigen::MatrixXd out(rows, cols);
  Eigen::Index r = 0;
  for (auto *p : parts) {
    out.middleRows(r, p->rows()) = *p;
    r += p->rows();
  }
  return out;
}

std::string Fmt(double v, const char *f) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

std::string SnrLabel(const std::optional<double> &snr) {
  if (!snr) return "clean";
  return Fmt(*snr, "%g");
}

EerCell Score(const std::string &noise, std::optional<double> snr,
              const std::vector<const Utt *> &tests, const std::vector<Speaker> &speakers,
              const GmmModel &ubm) {
  EerCell cell;
  cell.noise = noise;
  cell.snr_db = snr;
  ScoreSet set;
  for (const Utt *u : tests) {
    Eigen::VectorXd ubm_ll = FrameLogLikelihoods(ubm, u->feats);
    for (const Speaker &s : speakers) {
      if (s.text_id != u->entry->text_id) continue;
      Trial t;
      t.id = u->entry->utterance_id + ":" + s.id;
      t.target = s.id == u->entry->speaker_id;
      t.score = (FrameLogLikelihoods(s.model, u->feats) - ubm_ll).mean();
      (t.target ? set.target : set.impostor).push_back(t.score);
      cell.trials.push_back(std::move(t));
    }
  }
  if (set.target.empty() || set.impostor.empty())
    throw std::invalid_argument("RunProtocol: cell " + noise + "/" + SnrLabel(snr) +
                                " lacks target or impostor trials");
  cell.eer = Eer(set);
  return cell;
}

}  // namespace

std::string ProtocolName(Protocol p) { return p == Protocol::kClean ? "clean" : "multi"; }

std::optional<Protocol> ParseProtocol(const std::string &name) {
  if (name == "clean") return Protocol::kClean;
  if (name == "multi") return Protocol::kMulti;
  return std::nullopt;
}

Eigen::MatrixXd AsvFeatures(const Waveform &w, bool mean_norm) {
  Eigen::MatrixXd f = dsp::Mfcc(w).frames;
  if (f.rows() == 0) throw std::invalid_argument("AsvFeatures: signal shorter than one frame");
  if (mean_norm) f.rowwise() -= f.colwise().mean();
  return f;
}

double EerTable::RowMean(const std::string &noise) const {
  double sum = 0;
  int n = 0;
  for (const EerCell &c : cells)
    if (c.noise == noise && c.snr_db) {
      sum += c.eer;
      ++n;
    }
  if (n == 0) throw std::invalid_argument("EerTable: no SNR cells for " + noise);
  return sum / n;
}

std::vector<std::string> EerTable::Noises() const {
  std::vector<std::string> out;
  for (const EerCell &c : cells)
    if (std::find(out.begin(), out.end(), c.noise) == out.end()) out.push_back(c.noise);
  return out;
}

std::string EerTable::ToCsv() const {
  std::ostringstream os;
  os << "noise,snr,eer\n";
  for (const std::string &n : Noises()) {
    for (const EerCell &c : cells)
      if (c.noise == n) os << n << ',' << SnrLabel(c.snr_db) << ',' << Fmt(c.eer, "%.6f") << '\n';
    os << n << ",mean," << Fmt(RowMean(n), "%.6f") << '\n';
  }
  return os.str();
}

std::string EerTable::ToTable() const {
  std::set<double> snrs;
  for (const EerCell &c : cells)
    if (c.snr_db) snrs.insert(*c.snr_db);
  std::ostringstream os;
  auto col = [&](const std::string &s) { os << std::string(s.size() < 9 ? 9 - s.size() : 1, ' ') << s; };
  os << "EER (%), " << ProtocolName(protocol) << " speaker models\n";
  os << "noise     ";
  for (double s : snrs) col(Fmt(s, "%g"));
  col("clean");
  col("mean");
  os << '\n';
  for (const std::string &n : Noises()) {
    os << n << std::string(n.size() < 10 ? 10 - n.size() : 1, ' ');
    for (double s : snrs) {
      auto it = std::find_if(cells.begin(), cells.end(),
                             [&](const EerCell &c) { return c.noise == n && c.snr_db == s; });
      col(it == cells.end() ? "-" : Fmt(100 * it->eer, "%.2f"));
    }
    auto cl = std::find_if(cells.begin(), cells.end(),
                           [&](const EerCell &c) { return c.noise == n && !c.snr_db; });
    col(cl == cells.end() ? "-" : Fmt(100 * cl->eer, "%.2f"));
    col(Fmt(100 * RowMean(n), "%.2f"));
    os << '\n';
  }
  return os.str();
}

std::string EerTable::ScoreLines() const {
  std::ostringstream os;
  for (const EerCell &c : cells)
    for (const Trial &t : c.trials)
      os << c.noise << '/' << SnrLabel(c.snr_db) << '/' << t.id << ' '
         << (t.target ? "target" : "impostor") << ' ' << Fmt(t.score, "%.8f") << '\n';
  return os.str();
}

EerTable RunProtocol(const Manifest &manifest, const metrics::Enhancer &enhance,
                     const AsvConfig &cfg, int jobs) {
  std::vector<Utt> utts;
  for (const ManifestEntry &e : manifest.entries) {
    const bool noisy = e.condition.has_value();
    if ((e.split == Split::kUbm && !noisy) || e.split == Split::kEnroll || e.split == Split::kTest)
      utts.push_back({&e, {}});
  }
  ParallelFor(utts.size(), jobs, [&](std::size_t i) {
    utts[i].feats = AsvFeatures(enhance(manifest.LoadAudio(*utts[i].entry)), cfg.mean_norm);
  });

  std::vector<const Eigen::MatrixXd *> ubm_parts;
  std::map<std::string, std::vector<const Utt *>> enroll_clean;
  std::map<std::string, std::map<std::string, std::vector<const Utt *>>> enroll_noisy;
  std::vector<const Utt *> test_clean;
  std::map<std::string, std::map<double, std::vector<const Utt *>>> test_noisy;
  for (const Utt &u : utts) {
    const ManifestEntry &e = *u.entry;
    if (e.split == Split::kUbm) {
      ubm_parts.push_back(&u.feats);
    } else if (e.split == Split::kEnroll) {
      if (e.condition)
        enroll_noisy[e.speaker_id][NoiseTypeName(e.condition->noise_type)].push_back(&u);
      else
        enroll_clean[e.speaker_id].push_back(&u);
    } else if (e.condition) {
      test_noisy[NoiseTypeName(e.condition->noise_type)][e.condition->snr_db].push_back(&u);
    } else {
      test_clean.push_back(&u);
    }
  }
  if (ubm_parts.empty()) throw std::invalid_argument("RunProtocol: no clean UBM speech");
  if (enroll_clean.empty()) throw std::invalid_argument("RunProtocol: no clean enrollment");
  if (test_noisy.empty()) throw std::invalid_argument("RunProtocol: no noisy test speech");

  const GmmModel ubm = TrainUbm(Stack(ubm_parts), cfg.components, cfg.em);

  auto enroll = [&](const std::string *noise) {
    std::vector<Speaker> speakers(enroll_clean.size());
    std::vector<const std::pair<const std::string, std::vector<const Utt *>> *> order;
    for (const auto &kv : enroll_clean) order.push_back(&kv);
    ParallelFor(order.size(), jobs, [&](std::size_t i) {
      const auto &[id, clean] = *order[i];
      std::vector<const Eigen::MatrixXd *> parts;
      for (const Utt *u : clean) parts.push_back(&u->feats);
      if (noise) {
        auto sp = enroll_noisy.find(id);
        if (sp == enroll_noisy.end() || !sp->second.count(*noise))
          throw std::invalid_argument("RunProtocol: speaker " + id + " has no " + *noise +
                                      " enrollment for the multi-condition protocol");
        for (const Utt *u : sp->second.at(*noise)) parts.push_back(&u->feats);
      }
      speakers[i] = {id, clean.front()->entry->text_id, MapAdapt(ubm, Stack(parts), cfg.relevance)};
    });
    return speakers;
  };

  EerTable table;
  table.protocol = cfg.protocol;
  std::vector<Speaker> clean_models;
  if (cfg.protocol == Protocol::kClean) clean_models = enroll(nullptr);
  for (const auto &[noise, by_snr] : test_noisy) {
    std::vector<Speaker> models = cfg.protocol == Protocol::kClean ? clean_models : enroll(&noise);
    std::vector<std::pair<std::optional<double>, const std::vector<const Utt *> *>> jobs_list;
    for (const auto &[snr, tests] : by_snr) jobs_list.push_back({snr, &tests});
    if (!test_clean.empty()) jobs_list.push_back({std::nullopt, &test_clean});
    std::vector<EerCell> row(jobs_list.size());
    ParallelFor(jobs_list.size(), jobs, [&](std::size_t i) {
      row[i] = Score(noise, jobs_list[i].first, *jobs_list[i].second, models, ubm);
    });
    for (EerCell &c : row) table.cells.push_back(std::move(c));
  }
  return table;
}

}  // namespace cganse::asv
