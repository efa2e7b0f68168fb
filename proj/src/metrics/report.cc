// src/metrics/report.cc

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

#include "cganse/metrics/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "cganse/metrics/metrics.h"
#include "cganse/util/parallel.h"

namespace cganse::metrics {

namespace {

struct Scores {
  double stoi = 0, seg_snr = 0, lsd = 0;
};

std::string Fmt(double v, const char *f = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

std::string SnrLabel(double snr) {
  if (snr == std::round(snr)) return std::to_string(static_cast<long long>(snr));
  return Fmt(snr, "%g");
}

}  // namespace

std::vector<EvalCell> EvalReport::Means() const {
  std::vector<EvalCell> out;
  for (const EvalCell &c : cells) {
    auto it = std::find_if(out.begin(), out.end(), [&](const EvalCell &m) {
      return m.front_end == c.front_end && m.noise == c.noise;
    });
    if (it == out.end()) {
      out.push_back({c.front_end, c.noise, 0, 0, 0, 0, 0});
      it = out.end() - 1;
    }
    it->stoi += c.stoi;
    it->seg_snr += c.seg_snr;
    it->lsd += c.lsd;
    it->utterances += 1;  // number of SNR cells while accumulating
  }
  for (EvalCell &m : out) {
    m.stoi /= m.utterances;
    m.seg_snr /= m.utterances;
    m.lsd /= m.utterances;
    m.utterances = 0;
  }
  return out;
}

std::string EvalReport::ToCsv() const {
  std::ostringstream os;
  os << "front_end,noise,snr,stoi,seg_snr,lsd\n";
  for (const EvalCell &c : cells)
    os << c.front_end << ',' << c.noise << ',' << SnrLabel(c.snr_db) << ',' << Fmt(c.stoi) << ','
       << Fmt(c.seg_snr) << ',' << Fmt(c.lsd) << '\n';
  for (const EvalCell &m : Means())
    os << m.front_end << ',' << m.noise << ",mean," << Fmt(m.stoi) << ',' << Fmt(m.seg_snr) << ','
       << Fmt(m.lsd) << '\n';
  return os.str();
}

std::string EvalReport::ToTable() const {
  std::set<double> snrs;
  for (const EvalCell &c : cells) snrs.insert(c.snr_db);
  const std::vector<EvalCell> means = Means();
  std::size_t label_w = 10;
  for (const EvalCell &m : means) label_w = std::max(label_w, m.front_end.size() + m.noise.size() + 1);

  std::ostringstream os;
  auto pad = [](const std::string &s, std::size_t w, bool left) {
    if (s.size() >= w) return s;
    return left ? s + std::string(w - s.size(), ' ') : std::string(w - s.size(), ' ') + s;
  };
  const std::size_t cw = 9;
  struct Metric {
    const char *name;
    double EvalCell::*field;
    const char *fmt;
  };
  const Metric metrics[] = {{"STOI", &EvalCell::stoi, "%.4f"},
                            {"segSNR (dB)", &EvalCell::seg_snr, "%.2f"},
                            {"LSD (dB)", &EvalCell::lsd, "%.2f"}};
  for (const Metric &mt : metrics) {
    os << mt.name << '\n' << pad("", label_w, true);
    for (double s : snrs) os << pad(SnrLabel(s), cw, false);
    os << pad("mean", cw, false) << '\n';
    for (const EvalCell &m : means) {
      os << pad(m.front_end + "/" + m.noise, label_w, true);
      for (double s : snrs) {
        auto it = std::find_if(cells.begin(), cells.end(), [&](const EvalCell &c) {
          return c.front_end == m.front_end && c.noise == m.noise && c.snr_db == s;
        });
        os << pad(it == cells.end() ? "-" : Fmt((*it).*mt.field, mt.fmt), cw, false);
      }
      os << pad(Fmt(m.*mt.field, mt.fmt), cw, false) << '\n';
    }
    os << '\n';
  }
  return os.str();
}

EvalReport BuildReport(const Manifest &manifest, const std::vector<FrontEnd> &front_ends,
                       std::optional<Split> split, int jobs) {
  if (front_ends.empty()) throw std::invalid_argument("BuildReport: no front ends");
  if (jobs < 1) throw std::invalid_argument("BuildReport: jobs must be >= 1");
  std::vector<const ManifestEntry *> items;
  for (const ManifestEntry &e : manifest.entries)
    if (e.condition && (!split || e.split == *split)) items.push_back(&e);
  if (items.empty()) throw std::invalid_argument("BuildReport: manifest has no noisy entries");

  // Task k = (item k / F, front end k % F); results land in fixed slots.
  const std::size_t f_count = front_ends.size(), total = items.size() * f_count;
  std::vector<Scores> results(total);
  ParallelFor(total, jobs, [&](std::size_t k) {
    const ManifestEntry &e = *items[k / f_count];
    Waveform noisy = manifest.LoadAudio(e), clean = manifest.LoadClean(e);
    Waveform out = front_ends[k % f_count].enhance(noisy);
    results[k] = {Stoi(clean, out), SegSnr(clean, out), Lsd(clean, out)};
  });

  // Deterministic merge in item order.
  EvalReport report;
  for (std::size_t f = 0; f < f_count; ++f) {
    std::map<std::pair<std::string, double>, EvalCell> grid;
    for (std::size_t i = 0; i < items.size(); ++i) {
      const Condition &c = *items[i]->condition;
      EvalCell &cell = grid[{NoiseTypeName(c.noise_type), c.snr_db}];
      cell.front_end = front_ends[f].name;
      cell.noise = NoiseTypeName(c.noise_type);
      cell.snr_db = c.snr_db;
      const Scores &s = results[i * f_count + f];
      cell.stoi += s.stoi;
      cell.seg_snr += s.seg_snr;
      cell.lsd += s.lsd;
      cell.utterances += 1;
    }
    for (auto &[key, cell] : grid) {
      cell.stoi /= cell.utterances;
      cell.seg_snr /= cell.utterances;
      cell.lsd /= cell.utterances;
      report.cells.push_back(cell);
    }
  }
  return report;
}

}  // namespace cganse::metrics
