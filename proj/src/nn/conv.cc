// src/nn/conv.cc

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

#include <stdexcept>
#include <string>
#include <vector>

#include "cganse/nn/ops.h"
#include "nn/blas.h"

namespace cganse::nn::inline CGANSE_NN_ABI {

namespace {

using internal::Gemm;

struct Geometry {
  int channels, height, width;  // image side
  int k, stride, pad;
  int out_h, out_w;              // column side
  int rows() const { return channels * k * k; }
  int cols() const { return out_h * out_w; }
};

// col[(c, i, j), (oh, ow)] = img[c, oh s - p + i, ow s - p + j] (0 outside).
void Im2Col(const Geometry &g, const Real *img, Real *col) {
  for (int c = 0; c < g.channels; ++c)
    for (int i = 0; i < g.k; ++i)
      for (int j = 0; j < g.k; ++j) {
        Real *dst = col + static_cast<std::size_t>((c * g.k + i) * g.k + j) * g.cols();
        const Real *src = img + static_cast<std::size_t>(c) * g.height * g.width;
        for (int oh = 0; oh < g.out_h; ++oh) {
          int h = oh * g.stride - g.pad + i;
          Real *row = dst + static_cast<std::size_t>(oh) * g.out_w;
          if (h < 0 || h >= g.height) {
            for (int ow = 0; ow < g.out_w; ++ow) row[ow] = 0;
            continue;
          }
          const Real *line = src + static_cast<std::size_t>(h) * g.width;
          for (int ow = 0; ow < g.out_w; ++ow) {
            int w = ow * g.stride - g.pad + j;
            row[ow] = (w >= 0 && w < g.width) ? line[w] : Real(0);
          }
        }
      }
}

// Adjoint of Im2Col: img += scatter(col).
void Col2Im(const Geometry &g, const Real *col, Real *img) {
  for (int c = 0; c < g.channels; ++c)
    for (int i = 0; i < g.k; ++i)
      for (int j = 0; j < g.k; ++j) {
        const Real *src = col + static_cast<std::size_t>((c * g.k + i) * g.k + j) * g.cols();
        Real *dst = img + static_cast<std::size_t>(c) * g.height * g.width;
        for (int oh = 0; oh < g.out_h; ++oh) {
          int h = oh * g.stride - g.pad + i;
          if (h < 0 || h >= g.height) continue;
          const Real *row = src + static_cast<std::size_t>(oh) * g.out_w;
          Real *line = dst + static_cast<std::size_t>(h) * g.width;
          for (int ow = 0; ow < g.out_w; ++ow) {
            int w = ow * g.stride - g.pad + j;
            if (w >= 0 && w < g.width) line[w] += row[ow];
          }
        }
      }
}

void CheckKernel(const Tensor &w, const char *op) {
  if (w.rank() != 4 || w.dim(2) != w.dim(3))
    throw std::invalid_argument(std::string(op) + ": kernel must be rank 4 with square taps, got " +
                                ShapeString(w.shape()));
}

void AddBias(Tensor &y, const Tensor &b) {
  const int n = y.dim(0), k = y.dim(1);
  const std::size_t plane = y.size() / (static_cast<std::size_t>(n) * k);
  for (int s = 0; s < n; ++s)
    for (int c = 0; c < k; ++c) {
      Real *p = y.data() + (static_cast<std::size_t>(s) * k + c) * plane;
      for (std::size_t i = 0; i < plane; ++i) p[i] += b[c];
    }
}

void BiasGrad(const Tensor &gy, Tensor &gb) {
  const int n = gy.dim(0), k = gy.dim(1);
  const std::size_t plane = gy.size() / (static_cast<std::size_t>(n) * k);
  for (int s = 0; s < n; ++s)
    for (int c = 0; c < k; ++c) {
      const Real *p = gy.data() + (static_cast<std::size_t>(s) * k + c) * plane;
      double acc = 0;
      for (std::size_t i = 0; i < plane; ++i) acc += p[i];
      gb[c] += static_cast<Real>(acc);
    }
}

}  // namespace

int ConvOutSize(int in, int k, int stride, int pad) {
  if (stride <= 0) throw std::invalid_argument("ConvOutSize: stride must be positive");
  int span = in + 2 * pad - k;
  if (span < 0) throw std::invalid_argument("ConvOutSize: kernel larger than padded input");
  return span / stride + 1;
}

Var Conv2d(Tape &tape, Var x, Var w, Var b, int stride, int pad) {
  const Tensor &xv = x->value, &wv = w->value;
  CheckKernel(wv, "Conv2d");
  if (xv.rank() != 4 || xv.dim(1) != wv.dim(1))
    throw std::invalid_argument("Conv2d: input " + ShapeString(xv.shape()) + " vs kernel " +
                                ShapeString(wv.shape()));
  const int n = xv.dim(0), kout = wv.dim(0);
  Geometry g{xv.dim(1), xv.dim(2), xv.dim(3), wv.dim(2), stride, pad, 0, 0};
  g.out_h = ConvOutSize(g.height, g.k, stride, pad);
  g.out_w = ConvOutSize(g.width, g.k, stride, pad);
  if (b != nullptr && (b->value.rank() != 1 || b->value.dim(0) != kout))
    throw std::invalid_argument("Conv2d: bias shape " + ShapeString(b->value.shape()));

  Tensor y({n, kout, g.out_h, g.out_w});
  const std::size_t in_plane = static_cast<std::size_t>(g.channels) * g.height * g.width;
  const std::size_t out_plane = static_cast<std::size_t>(kout) * g.cols();
  const std::size_t col_size = static_cast<std::size_t>(g.rows()) * g.cols();
  auto cols = std::make_shared<std::vector<Real>>(col_size * n);
  for (int s = 0; s < n; ++s) {
    Real *col = cols->data() + s * col_size;
    Im2Col(g, xv.data() + s * in_plane, col);
    Gemm(false, false, kout, g.cols(), g.rows(), 1, wv.data(), g.rows(), col, g.cols(), 0,
         y.data() + s * out_plane, g.cols());
  }
  if (b != nullptr) AddBias(y, b->value);

  return tape.Record(std::move(y), {x, w, b}, [=](Node &self) {
    const Tensor &gy = self.grad;
    std::vector<Real> gcol(col_size);
    for (int s = 0; s < n; ++s) {
      const Real *gys = gy.data() + s * out_plane;
      if (w->requires_grad)
        Gemm(false, true, kout, g.rows(), g.cols(), 1, gys, g.cols(), cols->data() + s * col_size,
             g.cols(), 1, w->Grad().data(), g.rows());
      if (x->requires_grad) {
        Gemm(true, false, g.rows(), g.cols(), kout, 1, w->value.data(), g.rows(), gys, g.cols(), 0,
             gcol.data(), g.cols());
        Col2Im(g, gcol.data(), x->Grad().data() + s * in_plane);
      }
    }
    if (b != nullptr && b->requires_grad) BiasGrad(gy, b->Grad());
  });
}

Var ConvTranspose2d(Tape &tape, Var x, Var w, Var b, int stride, int pad, int output_padding) {
  const Tensor &xv = x->value, &wv = w->value;
  CheckKernel(wv, "ConvTranspose2d");
  if (xv.rank() != 4 || xv.dim(1) != wv.dim(0))
    throw std::invalid_argument("ConvTranspose2d: input " + ShapeString(xv.shape()) +
                                " vs kernel " + ShapeString(wv.shape()));
  if (output_padding < 0 || output_padding >= stride)
    throw std::invalid_argument("ConvTranspose2d: output_padding must lie in [0, stride)");
  const int n = xv.dim(0), cin = wv.dim(0), kout = wv.dim(1), k = wv.dim(2);
  const int out_h = (xv.dim(2) - 1) * stride - 2 * pad + k + output_padding;
  const int out_w = (xv.dim(3) - 1) * stride - 2 * pad + k + output_padding;
  if (out_h <= 0 || out_w <= 0) throw std::invalid_argument("ConvTranspose2d: empty output");
  // Geometry of the forward convolution this op is the adjoint of: image =
  // our output, columns = our input grid.
  Geometry g{kout, out_h, out_w, k, stride, pad, xv.dim(2), xv.dim(3)};
  if (ConvOutSize(out_h, k, stride, pad) != g.out_h || ConvOutSize(out_w, k, stride, pad) != g.out_w)
    throw std::invalid_argument("ConvTranspose2d: inconsistent geometry");
  if (b != nullptr && (b->value.rank() != 1 || b->value.dim(0) != kout))
    throw std::invalid_argument("ConvTranspose2d: bias shape " + ShapeString(b->value.shape()));

  Tensor y({n, kout, out_h, out_w});
  const std::size_t in_plane = static_cast<std::size_t>(cin) * g.cols();
  const std::size_t out_plane = static_cast<std::size_t>(kout) * out_h * out_w;
  const std::size_t col_size = static_cast<std::size_t>(g.rows()) * g.cols();
  std::vector<Real> col(col_size);
  for (int s = 0; s < n; ++s) {
    // col = W^T x, W viewed as cin x (kout k k).
    Gemm(true, false, g.rows(), g.cols(), cin, 1, wv.data(), g.rows(), xv.data() + s * in_plane,
         g.cols(), 0, col.data(), g.cols());
    Col2Im(g, col.data(), y.data() + s * out_plane);
  }
  if (b != nullptr) AddBias(y, b->value);

  return tape.Record(std::move(y), {x, w, b}, [=](Node &self) {
    const Tensor &gy = self.grad;
    std::vector<Real> gcol(col_size);
    for (int s = 0; s < n; ++s) {
      Im2Col(g, gy.data() + s * out_plane, gcol.data());
      if (x->requires_grad)
        Gemm(false, false, cin, g.cols(), g.rows(), 1, w->value.data(), g.rows(), gcol.data(),
             g.cols(), 1, x->Grad().data() + s * in_plane, g.cols());
      if (w->requires_grad)
        Gemm(false, true, cin, g.rows(), g.cols(), 1, x->value.data() + s * in_plane, g.cols(),
             gcol.data(), g.cols(), 1, w->Grad().data(), g.rows());
    }
    if (b != nullptr && b->requires_grad) BiasGrad(gy, b->Grad());
  });
}

}  // namespace cganse::nn::inline CGANSE_NN_ABI
