// src/nn/ops.cc

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
#include <memory>
#include <stdexcept>
#include <string>

#include "cganse/nn/ops.h"
#include "nn/blas.h"

namespace cganse::nn::inline CGANSE_NN_ABI {

namespace {

using internal::Gemm;

// Elementwise op with derivative given as a function of (input, output).
template <typename F, typename D>
Var Pointwise(Tape &tape, Var x, F f, D df) {
  Tensor y(x->value.shape());
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n; ++i) y[i] = f(x->value[i]);
  return tape.Record(std::move(y), {x}, [x, df, n](Node &self) {
    Tensor &gx = x->Grad();
    for (std::size_t i = 0; i < n; ++i) gx[i] += self.grad[i] * df(x->value[i], self.value[i]);
  });
}

void RequireSameShape(const Tensor &a, const Tensor &b, const char *op) {
  if (!a.SameShape(b))
    throw std::invalid_argument(std::string(op) + ": shape " + ShapeString(a.shape()) + " vs " +
                                ShapeString(b.shape()));
}

}  // namespace

Var BatchNorm(Tape &tape, Var x, Var gamma, Var beta, BatchNormStats &stats, Mode mode,
              double momentum, double eps) {
  const Tensor &xv = x->value;
  if (xv.rank() != 4 && xv.rank() != 2)
    throw std::invalid_argument("BatchNorm: expected rank 2 or 4, got " + ShapeString(xv.shape()));
  const int n = xv.dim(0), c = xv.dim(1);
  const std::size_t plane = xv.rank() == 4 ? static_cast<std::size_t>(xv.dim(2)) * xv.dim(3) : 1;
  const std::size_t m = static_cast<std::size_t>(n) * plane;
  if (m == 0 || c == 0) throw std::invalid_argument("BatchNorm: zero-element channel");
  if (gamma->value.size() != static_cast<std::size_t>(c) ||
      beta->value.size() != static_cast<std::size_t>(c))
    throw std::invalid_argument("BatchNorm: scale/shift size mismatch");
  if (stats.mean.size() != static_cast<std::size_t>(c)) {
    stats.mean = Tensor({c}, 0);
    stats.var = Tensor({c}, 1);
  }
  auto at = [plane, c](int s, int ch) { return (static_cast<std::size_t>(s) * c + ch) * plane; };

  auto xhat = std::make_shared<Tensor>(xv.shape());
  auto inv_std = std::make_shared<std::vector<double>>(c);
  Tensor y(xv.shape());
  for (int ch = 0; ch < c; ++ch) {
    double mean, var;
    if (mode != Mode::kEval) {
      double sum = 0;
      for (int s = 0; s < n; ++s)
        for (std::size_t i = 0; i < plane; ++i) sum += xv[at(s, ch) + i];
      mean = sum / m;
      double sq = 0;
      for (int s = 0; s < n; ++s)
        for (std::size_t i = 0; i < plane; ++i) {
          double d = xv[at(s, ch) + i] - mean;
          sq += d * d;
        }
      var = sq / m;
      if (mode == Mode::kTrain) {
        double unbiased = m > 1 ? sq / (m - 1) : var;
        stats.mean[ch] = static_cast<Real>((1 - momentum) * stats.mean[ch] + momentum * mean);
        stats.var[ch] = static_cast<Real>((1 - momentum) * stats.var[ch] + momentum * unbiased);
      }
    } else {
      mean = stats.mean[ch];
      var = stats.var[ch];
    }
    double is = 1.0 / std::sqrt(var + eps);
    (*inv_std)[ch] = is;
    double gm = gamma->value[ch], bt = beta->value[ch];
    for (int s = 0; s < n; ++s)
      for (std::size_t i = 0; i < plane; ++i) {
        std::size_t idx = at(s, ch) + i;
        double h = (xv[idx] - mean) * is;
        (*xhat)[idx] = static_cast<Real>(h);
        y[idx] = static_cast<Real>(gm * h + bt);
      }
  }

  return tape.Record(std::move(y), {x, gamma, beta}, [=](Node &self) {
    const Tensor &gy = self.grad;
    for (int ch = 0; ch < c; ++ch) {
      double sum_g = 0, sum_gh = 0;
      for (int s = 0; s < n; ++s)
        for (std::size_t i = 0; i < plane; ++i) {
          std::size_t idx = at(s, ch) + i;
          sum_g += gy[idx];
          sum_gh += gy[idx] * (*xhat)[idx];
        }
      if (gamma->requires_grad) gamma->Grad()[ch] += static_cast<Real>(sum_gh);
      if (beta->requires_grad) beta->Grad()[ch] += static_cast<Real>(sum_g);
      if (!x->requires_grad) continue;
      Tensor &gx = x->Grad();
      double gm = gamma->value[ch], is = (*inv_std)[ch];
      if (mode == Mode::kEval) {
        for (int s = 0; s < n; ++s)
          for (std::size_t i = 0; i < plane; ++i) {
            std::size_t idx = at(s, ch) + i;
            gx[idx] += static_cast<Real>(gm * is * gy[idx]);
          }
        continue;
      }
      const double k = gm * is / m;
      for (int s = 0; s < n; ++s)
        for (std::size_t i = 0; i < plane; ++i) {
          std::size_t idx = at(s, ch) + i;
          gx[idx] += static_cast<Real>(k * (m * gy[idx] - sum_g - (*xhat)[idx] * sum_gh));
        }
    }
  });
}

Var LeakyRelu(Tape &tape, Var x, double slope) {
  const Real a = static_cast<Real>(slope);
  return Pointwise(
      tape, x, [a](Real v) { return v > 0 ? v : a * v; },
      [a](Real v, Real) { return v > 0 ? Real(1) : a; });
}

Var Relu(Tape &tape, Var x) {
  return Pointwise(
      tape, x, [](Real v) { return v > 0 ? v : Real(0); },
      [](Real v, Real) { return v > 0 ? Real(1) : Real(0); });
}

Var Tanh(Tape &tape, Var x) {
  return Pointwise(
      tape, x, [](Real v) { return std::tanh(v); }, [](Real, Real y) { return 1 - y * y; });
}

Var Sigmoid(Tape &tape, Var x) {
  return Pointwise(
      tape, x,
      [](Real v) {
        // Stable on both tails.
        if (v >= 0) return Real(1) / (1 + std::exp(-v));
        Real e = std::exp(v);
        return e / (1 + e);
      },
      [](Real, Real y) { return y * (1 - y); });
}

Var Dropout(Tape &tape, Var x, double p, Mode mode, std::mt19937_64 &rng) {
  if (p < 0 || p >= 1) throw std::invalid_argument("Dropout: p must lie in [0, 1)");
  if (mode != Mode::kTrain || p == 0) {
    return tape.Record(x->value, {x}, [x](Node &self) { x->Grad().Add(self.grad); });
  }
  const std::size_t n = x->value.size();
  auto mask = std::make_shared<std::vector<Real>>(n);
  std::bernoulli_distribution keep(1 - p);
  const Real scale = static_cast<Real>(1 / (1 - p));
  Tensor y(x->value.shape());
  for (std::size_t i = 0; i < n; ++i) {
    (*mask)[i] = keep(rng) ? scale : Real(0);
    y[i] = x->value[i] * (*mask)[i];
  }
  return tape.Record(std::move(y), {x}, [x, mask, n](Node &self) {
    Tensor &gx = x->Grad();
    for (std::size_t i = 0; i < n; ++i) gx[i] += self.grad[i] * (*mask)[i];
  });
}

Var Concat(Tape &tape, Var a, Var b) {
  const Tensor &av = a->value, &bv = b->value;
  if (av.rank() != 4 || bv.rank() != 4 || av.dim(0) != bv.dim(0) || av.dim(2) != bv.dim(2) ||
      av.dim(3) != bv.dim(3))
    throw std::invalid_argument("Concat: " + ShapeString(av.shape()) + " vs " +
                                ShapeString(bv.shape()));
  const int n = av.dim(0), ca = av.dim(1), cb = bv.dim(1);
  const std::size_t plane = static_cast<std::size_t>(av.dim(2)) * av.dim(3);
  const std::size_t sa = ca * plane, sb = cb * plane;
  Tensor y({n, ca + cb, av.dim(2), av.dim(3)});
  for (int s = 0; s < n; ++s) {
    std::copy_n(av.data() + s * sa, sa, y.data() + s * (sa + sb));
    std::copy_n(bv.data() + s * sb, sb, y.data() + s * (sa + sb) + sa);
  }
  return tape.Record(std::move(y), {a, b}, [=](Node &self) {
    for (int s = 0; s < n; ++s) {
      const Real *g = self.grad.data() + s * (sa + sb);
      if (a->requires_grad) {
        Real *ga = a->Grad().data() + s * sa;
        for (std::size_t i = 0; i < sa; ++i) ga[i] += g[i];
      }
      if (b->requires_grad) {
        Real *gb = b->Grad().data() + s * sb;
        for (std::size_t i = 0; i < sb; ++i) gb[i] += g[sa + i];
      }
    }
  });
}

Var Dense(Tape &tape, Var x, Var w, Var b) {
  const Tensor &xv = x->value, &wv = w->value;
  if (xv.rank() != 2 || wv.rank() != 2 || xv.dim(1) != wv.dim(1))
    throw std::invalid_argument("Dense: input " + ShapeString(xv.shape()) + " vs weight " +
                                ShapeString(wv.shape()));
  const int n = xv.dim(0), in = xv.dim(1), out = wv.dim(0);
  if (b != nullptr && (b->value.rank() != 1 || b->value.dim(0) != out))
    throw std::invalid_argument("Dense: bias shape " + ShapeString(b->value.shape()));
  Tensor y({n, out});
  Gemm(false, true, n, out, in, 1, xv.data(), in, wv.data(), in, 0, y.data(), out);
  if (b != nullptr)
    for (int s = 0; s < n; ++s)
      for (int o = 0; o < out; ++o) y[static_cast<std::size_t>(s) * out + o] += b->value[o];
  return tape.Record(std::move(y), {x, w, b}, [=](Node &self) {
    const Real *gy = self.grad.data();
    if (x->requires_grad)
      Gemm(false, false, n, in, out, 1, gy, out, w->value.data(), in, 1, x->Grad().data(), in);
    if (w->requires_grad)
      Gemm(true, false, out, in, n, 1, gy, out, x->value.data(), in, 1, w->Grad().data(), in);
    if (b != nullptr && b->requires_grad) {
      Tensor &gb = b->Grad();
      for (int o = 0; o < out; ++o) {
        double acc = 0;
        for (int s = 0; s < n; ++s) acc += gy[static_cast<std::size_t>(s) * out + o];
        gb[o] += static_cast<Real>(acc);
      }
    }
  });
}

Var Flatten(Tape &tape, Var x) {
  const Tensor &xv = x->value;
  if (xv.rank() < 1) throw std::invalid_argument("Flatten: scalar input");
  const int n = xv.dim(0);
  const int rest = n == 0 ? 0 : static_cast<int>(xv.size() / n);
  return tape.Record(xv.Reshaped({n, rest}), {x}, [x](Node &self) {
    Tensor &gx = x->Grad();
    for (std::size_t i = 0; i < gx.size(); ++i) gx[i] += self.grad[i];
  });
}

Var Add(Tape &tape, Var a, Var b) {
  RequireSameShape(a->value, b->value, "Add");
  Tensor y = a->value;
  y.Add(b->value);
  return tape.Record(std::move(y), {a, b}, [a, b](Node &self) {
    if (a->requires_grad) a->Grad().Add(self.grad);
    if (b->requires_grad) b->Grad().Add(self.grad);
  });
}

Var Scale(Tape &tape, Var a, double s) {
  Tensor y = a->value;
  const Real k = static_cast<Real>(s);
  for (Real &v : y.values()) v *= k;
  return tape.Record(std::move(y), {a}, [a, k](Node &self) {
    Tensor &ga = a->Grad();
    for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += k * self.grad[i];
  });
}

Var MeanAbsError(Tape &tape, Var a, const Tensor &target) {
  RequireSameShape(a->value, target, "MeanAbsError");
  const std::size_t n = a->value.size();
  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += std::abs(double(a->value[i]) - double(target[i]));
  auto t = std::make_shared<Tensor>(target);
  return tape.Record(Tensor({1}, static_cast<Real>(acc / n)), {a}, [a, t, n](Node &self) {
    Tensor &ga = a->Grad();
    const double g = self.grad[0] / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      double d = double(a->value[i]) - double((*t)[i]);
      ga[i] += static_cast<Real>(d > 0 ? g : (d < 0 ? -g : 0.0));
    }
  });
}

Var MeanSquaredError(Tape &tape, Var a, const Tensor &target) {
  RequireSameShape(a->value, target, "MeanSquaredError");
  const std::size_t n = a->value.size();
  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = double(a->value[i]) - double(target[i]);
    acc += d * d;
  }
  auto t = std::make_shared<Tensor>(target);
  return tape.Record(Tensor({1}, static_cast<Real>(acc / n)), {a}, [a, t, n](Node &self) {
    Tensor &ga = a->Grad();
    const double g = 2.0 * self.grad[0] / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
      ga[i] += static_cast<Real>(g * (double(a->value[i]) - double((*t)[i])));
  });
}

Var BinaryCrossEntropy(Tape &tape, Var p, double target, double clamp) {
  const std::size_t n = p->value.size();
  if (n == 0) throw std::invalid_argument("BinaryCrossEntropy: empty input");
  auto clamped = [clamp](double v) { return std::clamp(v, clamp, 1.0 - clamp); };
  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double q = clamped(p->value[i]);
    acc -= target * std::log(q) + (1 - target) * std::log(1 - q);
  }
  return tape.Record(Tensor({1}, static_cast<Real>(acc / n)), {p},
                     [p, target, n, clamped](Node &self) {
                       Tensor &gp = p->Grad();
                       const double g = self.grad[0] / static_cast<double>(n);
                       for (std::size_t i = 0; i < n; ++i) {
                         double q = clamped(p->value[i]);
                         gp[i] += static_cast<Real>(g * (-target / q + (1 - target) / (1 - q)));
                       }
                     });
}

}  // namespace cganse::nn::inline CGANSE_NN_ABI
