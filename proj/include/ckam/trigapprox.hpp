// Copyright 2026 The ckam authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Multi-dimensional Fejer and de la Vallee Poussin means with Jackson-type
// error reports.  The operators are realized as Cesaro weights in frequency
// space over an oversampled discrete transform: the m-th Fejer mean
// multiplies the coefficient at frequency k along the chosen axis by
// max(0, 1-|k|/m), and P_m = 2 F_{2m} - F_m, which reproduces degrees <= m
// and tapers linearly to zero at 2m.  Inputs that are not band limited are
// approximated by their grid samples (oversampling factor 4 relative to the
// largest operator degree by default).

#ifndef CKAM_TRIGAPPROX_HPP
#define CKAM_TRIGAPPROX_HPP

#include <concepts>
#include <cmath>
#include <functional>
#include <vector>

#include "ckam/common.hpp"
#include "ckam/trigpoly.hpp"

namespace ckam::trigapprox {

/// 2pi-periodic samples on a uniform row-major grid over [0,2pi)^d.
struct SampledGrid {
  std::vector<int> shape;
  std::vector<double> values;
  int dim() const { return static_cast<int>(shape.size()); }
};

template <class F>
SampledGrid sample_callable(F&& f, const std::vector<int>& shape) {
  SampledGrid g;
  g.shape = shape;
  std::size_t n = 1;
  for (int s : shape) n *= s;
  g.values.resize(n);
  const int d = g.dim();
  std::vector<double> x(d);
  std::vector<int> idx(d, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) x[j] = two_pi * idx[j] / g.shape[j];
    g.values[i] = f(x);
    for (int j = d - 1; j >= 0; --j) {
      if (++idx[j] < g.shape[j]) break;
      idx[j] = 0;
    }
  }
  return g;
}

/// Default transform grid for per-axis operator orders m_j: 8*m_j points
/// (factor 4 over the degree 2m_j-1), rounded to a power of two.
inline std::vector<int> operator_grid(const std::vector<int>& m) {
  std::vector<int> shape(m.size());
  for (std::size_t j = 0; j < m.size(); ++j)
    shape[j] = static_cast<int>(next_pow2(std::max(32, 8 * m[j])));
  return shape;
}

inline double fejer_weight(int k, int m) {
  const double t = 1.0 - std::abs(k) / static_cast<double>(m);
  return t > 0 ? t : 0.0;
}

/// 2(1-|k|/2m) - (1-|k|/m): equals 1 for |k| <= m, tapers to 0 at |k| = 2m.
inline double vallee_poussin_weight(int k, int m) {
  return 2.0 * fejer_weight(k, 2 * m) - fejer_weight(k, m);
}

inline TrigPolyND spectrum_of(const SampledGrid& g) {
  std::vector<int> degrees(g.dim());
  for (int j = 0; j < g.dim(); ++j) degrees[j] = g.shape[j] / 2 - 1;
  return TrigPolyND::from_samples(g.values, g.shape, degrees);
}

/// Fejer mean F_m^{[j]} acting on an explicit polynomial (exact).
inline TrigPolyND fejer(const TrigPolyND& f, int m, int axis) {
  auto w = f.axis_weighted(axis, [m](int k) { return fejer_weight(k, m); });
  std::vector<int> deg = f.degrees();
  deg[axis] = std::min(deg[axis], m - 1);
  return w.truncated(deg);
}

/// Fejer mean of sampled data; the grid must resolve the operator
/// (>= 8m points along the axis).
inline TrigPolyND fejer(const SampledGrid& g, int m, int axis) {
  if (g.shape[axis] < 8 * m) throw GridTooCoarse("fejer: need >= 8m samples along the axis");
  return fejer(spectrum_of(g), m, axis);
}

inline TrigPolyND vallee_poussin_axis(const TrigPolyND& f, int m, int axis) {
  auto w = f.axis_weighted(axis, [m](int k) { return vallee_poussin_weight(k, m); });
  std::vector<int> deg = f.degrees();
  deg[axis] = std::min(deg[axis], 2 * m - 1);
  return w.truncated(deg);
}

/// P_{m_1..m_d}^{[1..d]} applied axis by axis.
inline TrigPolyND vallee_poussin_nd(const TrigPolyND& f, const std::vector<int>& m) {
  TrigPolyND out = f;
  for (int j = 0; j < f.dim(); ++j) out = vallee_poussin_axis(out, m[j], j);
  return out;
}

inline TrigPolyND vallee_poussin_nd(const SampledGrid& g, const std::vector<int>& m) {
  for (int j = 0; j < g.dim(); ++j)
    if (g.shape[j] < 8 * m[j]) throw GridTooCoarse("vallee_poussin: need >= 8m samples per axis");
  return vallee_poussin_nd(spectrum_of(g), m);
}

template <class F>
  requires std::invocable<F&, const std::vector<double>&>
TrigPolyND vallee_poussin_nd(F&& f, const std::vector<int>& m) {
  return vallee_poussin_nd(sample_callable(std::forward<F>(f), operator_grid(m)), m);
}

/// Sup of the r-th directional derivative along an axis, measured by r-fold
/// binomial differences of the callable (robust for functions that are only
/// piecewise smooth at the requested order).
template <class F>
double derivative_sup_fd(F&& f, int d, int axis, int r, int grid = 2048, double h = 0.0) {
  if (h <= 0) h = two_pi / (r >= 5 ? 512.0 : 2048.0);
  std::vector<double> binom(r + 1);
  binom[0] = 1;
  for (int i = 1; i <= r; ++i) binom[i] = binom[i - 1] * (r - i + 1) / i;
  double best = 0;
  std::vector<double> x(d, 0.0);
  // probe along a handful of transverse offsets so d>1 features are seen
  const int transverse = (d == 1) ? 1 : 16;
  for (int t = 0; t < transverse; ++t) {
    for (int j = 0; j < d; ++j) x[j] = (j == axis) ? 0.0 : two_pi * ((t * 37 + 11 * j) % 64) / 64.0;
    for (int i = 0; i < grid; ++i) {
      const double xi = two_pi * i / grid;
      double acc = 0;
      for (int s = 0; s <= r; ++s) {
        x[axis] = xi + (r / 2.0 - s) * h;
        acc += ((s % 2) ? -1.0 : 1.0) * binom[s] * f(x);
      }
      best = std::max(best, std::abs(acc) / std::pow(h, r));
    }
  }
  return best;
}

struct JacksonReport {
  double achieved_error = 0;                 // ||f - P(f)||_C0 on a dense grid
  std::vector<double> bound_terms;           // m_j^{-r_j} ||d^{r_j} f / dx_j^{r_j}||
  std::vector<double> derivative_norms;
  double bound_sum = 0;
  double fitted_constant = 0;                // achieved / bound_sum
  TrigPolyND approximation;
};

/// Measures ||f - P_m(f)|| against the per-axis Jackson terms of (B8).
template <class F>
JacksonReport jackson_report(F&& f, const std::vector<int>& m, const std::vector<int>& r,
                             int dense_factor = 2) {
  const int d = static_cast<int>(m.size());
  JacksonReport rep;
  rep.approximation = vallee_poussin_nd(f, m);

  std::vector<int> dense = operator_grid(m);
  for (auto& s : dense) s *= dense_factor;
  SampledGrid fg = sample_callable(f, dense);
  std::vector<double> pg = rep.approximation.sample(dense);
  for (std::size_t i = 0; i < fg.values.size(); ++i)
    rep.achieved_error = std::max(rep.achieved_error, std::abs(fg.values[i] - pg[i]));

  for (int j = 0; j < d; ++j) {
    const double norm = derivative_sup_fd(f, d, j, r[j]);
    rep.derivative_norms.push_back(norm);
    rep.bound_terms.push_back(std::pow(static_cast<double>(m[j]), -r[j]) * norm);
    rep.bound_sum += rep.bound_terms.back();
  }
  rep.fitted_constant = rep.bound_sum > 0 ? rep.achieved_error / rep.bound_sum : 0.0;
  return rep;
}

}  // namespace ckam::trigapprox

#endif  // CKAM_TRIGAPPROX_HPP
