// cganse/dsp/chunk.h

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

#ifndef CGANSE_DSP_CHUNK_H_
#define CGANSE_DSP_CHUNK_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cganse::dsp {

// Rows kept after dropping the highest STFT bin.
inline constexpr int kGanRows = 256;

// Global linear magnitude scale shared by training data and inference.
struct NormState {
  double scale = 1.0;
};

// u = 2 * min(v / scale, 1) - 1.
double Normalize(double v, const NormState &norm);
// (u + 1) / 2 * scale, clamped at zero.
double Denormalize(double u, const NormState &norm);
void CheckNorm(const NormState &norm);

// A side x side image in [-1, 1]; rows are frequency (ascending), columns
// are frames.
struct SpectroChunk {
  Eigen::MatrixXd data;
  NormState norm;
};

// Drops the top bin of a 257-row magnitude and averages groups of
// 256/side adjacent rows. side == 256 leaves the rows untouched.
Eigen::MatrixXd PoolRows(const Eigen::MatrixXd &mag, int side);

// Inverse of PoolRows for enhancement output: each pooled value is spread
// over its group in proportion to `reference` (the noisy magnitude), then the
// dropped top bin is re-appended as `top_row` (zeros when empty).
Eigen::MatrixXd ExpandRows(const Eigen::MatrixXd &pooled,
                           const Eigen::MatrixXd &reference,
                           const Eigen::VectorXd &top_row = {});

// Largest pooled magnitude; the corpus-wide normalisation scale.
double MaxPooledMagnitude(const Eigen::MatrixXd &mag, int side);

// Inference layout: pool, zero-pad the frame axis to a multiple of side,
// split into side-frame chunks, normalise. mag must have 257 rows.
std::vector<SpectroChunk> ChunkForGan(const Eigen::MatrixXd &mag,
                                      const NormState &norm, int side = kGanRows);

// Training layout: the magnitudes are concatenated along time and split every
// side frames; the incomplete tail is discarded.
std::vector<SpectroChunk> ChunkForTraining(std::span<const Eigen::MatrixXd> mags,
                                           const NormState &norm,
                                           int side = kGanRows);

// Reassembles chunks, denormalises and drops the padding: returns a
// side x n_frames pooled magnitude.
Eigen::MatrixXd UnchunkFromGan(std::span<const SpectroChunk> chunks, int n_frames);

}  // namespace cganse::dsp

#endif  // CGANSE_DSP_CHUNK_H_
