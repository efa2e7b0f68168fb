// src/dsp/chunk.cc

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

#include "cganse/dsp/chunk.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cganse/dsp/stft.h"

namespace cganse::dsp {

namespace {

int PoolFactor(int side) {
  if (side <= 0 || side > kGanRows || kGanRows % side != 0)
    throw std::invalid_argument("chunk: side must divide " + std::to_string(kGanRows));
  return kGanRows / side;
}

}  // namespace

void CheckNorm(const NormState &norm) {
  if (!(norm.scale > 0.0) || !std::isfinite(norm.scale))
    throw std::invalid_argument("normalize: scale must be positive");
}

double Normalize(double v, const NormState &norm) {
  CheckNorm(norm);
  return 2.0 * std::min(v / norm.scale, 1.0) - 1.0;
}

double Denormalize(double u, const NormState &norm) {
  CheckNorm(norm);
  return std::max(0.0, (u + 1.0) / 2.0 * norm.scale);
}

Eigen::MatrixXd PoolRows(const Eigen::MatrixXd &mag, int side) {
  if (mag.rows() != kNumBins)
    throw std::invalid_argument("chunk: expected " + std::to_string(kNumBins) +
                                " frequency rows, got " + std::to_string(mag.rows()));
  const int factor = PoolFactor(side);
  if (factor == 1) return mag.topRows(kGanRows);
  Eigen::MatrixXd out(side, mag.cols());
  for (int r = 0; r < side; ++r)
    out.row(r) = mag.middleRows(r * factor, factor).colwise().mean();
  return out;
}

Eigen::MatrixXd ExpandRows(const Eigen::MatrixXd &pooled,
                           const Eigen::MatrixXd &reference,
                           const Eigen::VectorXd &top_row) {
  const int side = static_cast<int>(pooled.rows());
  const int factor = PoolFactor(side);
  const Eigen::Index frames = pooled.cols();
  if (top_row.size() != 0 && top_row.size() != frames)
    throw std::invalid_argument("chunk: top row length mismatch");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(kNumBins, frames);
  if (factor == 1) {
    out.topRows(kGanRows) = pooled;
  } else {
    if (reference.rows() < kGanRows || reference.cols() != frames)
      throw std::invalid_argument("chunk: reference magnitude shape mismatch");
    for (int r = 0; r < side; ++r) {
      for (Eigen::Index t = 0; t < frames; ++t) {
        double mean = reference.block(r * factor, t, factor, 1).mean();
        for (int i = 0; i < factor; ++i) {
          double share = mean > 1e-12 ? reference(r * factor + i, t) / mean : 1.0;
          out(r * factor + i, t) = pooled(r, t) * share;
        }
      }
    }
  }
  if (top_row.size() != 0) out.row(kNumBins - 1) = top_row.transpose();
  return out;
}

double MaxPooledMagnitude(const Eigen::MatrixXd &mag, int side) {
  Eigen::MatrixXd p = PoolRows(mag, side);
  return p.size() == 0 ? 0.0 : p.maxCoeff();
}

std::vector<SpectroChunk> ChunkForGan(const Eigen::MatrixXd &mag,
                                      const NormState &norm, int side) {
  CheckNorm(norm);
  const Eigen::MatrixXd pooled = PoolRows(mag, side);
  const Eigen::Index frames = pooled.cols();
  const Eigen::Index n_chunks = (frames + side - 1) / side;
  const double pad_value = Normalize(0.0, norm);
  std::vector<SpectroChunk> chunks;
  chunks.reserve(static_cast<std::size_t>(n_chunks));
  for (Eigen::Index c = 0; c < n_chunks; ++c) {
    SpectroChunk ch;
    ch.norm = norm;
    ch.data = Eigen::MatrixXd::Constant(side, side, pad_value);
    for (Eigen::Index j = 0; j < side; ++j) {
      Eigen::Index t = c * side + j;
      if (t >= frames) break;
      for (int r = 0; r < side; ++r) ch.data(r, j) = Normalize(pooled(r, t), norm);
    }
    chunks.push_back(std::move(ch));
  }
  return chunks;
}

std::vector<SpectroChunk> ChunkForTraining(std::span<const Eigen::MatrixXd> mags,
                                           const NormState &norm, int side) {
  CheckNorm(norm);
  Eigen::Index total = 0;
  for (const auto &m : mags) total += m.cols();
  Eigen::MatrixXd all(side, total);
  Eigen::Index col = 0;
  for (const auto &m : mags) {
    all.middleCols(col, m.cols()) = PoolRows(m, side);
    col += m.cols();
  }
  std::vector<SpectroChunk> chunks;
  for (Eigen::Index start = 0; start + side <= total; start += side) {
    SpectroChunk ch;
    ch.norm = norm;
    ch.data = all.middleCols(start, side).unaryExpr(
        [&](double v) { return Normalize(v, norm); });
    chunks.push_back(std::move(ch));
  }
  return chunks;
}

Eigen::MatrixXd UnchunkFromGan(std::span<const SpectroChunk> chunks, int n_frames) {
  if (chunks.empty()) throw std::invalid_argument("unchunk: no chunks");
  const Eigen::Index side = chunks.front().data.rows();
  if (static_cast<Eigen::Index>(chunks.size()) * side < n_frames)
    throw std::invalid_argument("unchunk: not enough chunks for frame count");
  Eigen::MatrixXd out(side, n_frames);
  for (int t = 0; t < n_frames; ++t) {
    const SpectroChunk &ch = chunks[static_cast<std::size_t>(t / side)];
    for (Eigen::Index r = 0; r < side; ++r)
      out(r, t) = Denormalize(ch.data(r, t % side), ch.norm);
  }
  return out;
}

}  // namespace cganse::dsp
