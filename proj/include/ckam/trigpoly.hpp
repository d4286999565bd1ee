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

#ifndef CKAM_TRIGPOLY_HPP
#define CKAM_TRIGPOLY_HPP

#include <algorithm>
#include <complex>
#include <functional>
#include <numeric>
#include <vector>

#include "ckam/common.hpp"
#include "ckam/detail/fft.hpp"

namespace ckam::trigapprox {

using cplx = std::complex<double>;

/// Real trigonometric polynomial f(x) = sum_{|k|<=N} c_k e^{i k w0 x} with
/// w0 = 2*pi/period.  Coefficients are stored for k = -N..N at index k+N and
/// satisfy the reality condition c_{-k} = conj(c_k) up to roundoff.
class TrigPoly1D {
 public:
  TrigPoly1D() : degree_(0), period_(two_pi), c_(1, cplx(0.0, 0.0)) {}
  TrigPoly1D(int degree, double period)
      : degree_(degree), period_(period), c_(2 * degree + 1, cplx(0.0, 0.0)) {}

  int degree() const { return degree_; }
  double period() const { return period_; }
  double base_freq() const { return two_pi / period_; }

  cplx coeff(int k) const {
    return (k < -degree_ || k > degree_) ? cplx(0.0, 0.0) : c_[k + degree_];
  }
  void set_coeff(int k, cplx v) { c_[k + degree_] = v; }
  const std::vector<cplx>& coeffs() const { return c_; }

  /// Exact degree of the nonzero support (<= declared degree).
  int support_degree(double tol = 0.0) const {
    for (int k = degree_; k >= 1; --k)
      if (std::abs(coeff(k)) > tol || std::abs(coeff(-k)) > tol) return k;
    return 0;
  }

  static TrigPoly1D constant(double v, double period = two_pi) {
    TrigPoly1D p(0, period);
    p.set_coeff(0, v);
    return p;
  }

  /// cos/sin building block: a*cos(k w0 x) + b*sin(k w0 x).
  static TrigPoly1D harmonic(int k, double a, double b, double period = two_pi) {
    TrigPoly1D p(std::abs(k), period);
    p.set_coeff(k, cplx(a / 2.0, -b / 2.0));
    p.set_coeff(-k, cplx(a / 2.0, b / 2.0));
    return p;
  }

  /// Coefficients of the sampled function on a uniform grid (aliased to the
  /// requested degree; exact when the samples come from a polynomial of
  /// degree <= (M-1)/2).
  static TrigPoly1D from_samples(const std::vector<double>& samples, int degree, double period) {
    const int m = static_cast<int>(samples.size());
    if (m < 2 * degree + 1) throw GridTooCoarse("from_samples: grid smaller than 2N+1");
    std::vector<cplx> buf(samples.begin(), samples.end());
    detail::fft_1d(buf, FFTW_FORWARD);
    TrigPoly1D p(degree, period);
    for (int k = -degree; k <= degree; ++k) {
      const int idx = (k >= 0) ? k : m + k;
      p.set_coeff(k, buf[idx] / static_cast<double>(m));
    }
    return p;
  }

  double eval(double x) const {
    const double w = base_freq() * x;
    const cplx z(std::cos(w), std::sin(w));
    cplx pos(0.0, 0.0), neg(0.0, 0.0);
    for (int k = degree_; k >= 1; --k) {
      pos = pos * z + coeff(k);
      neg = neg * std::conj(z) + coeff(-k);
    }
    return (pos * z + neg * std::conj(z) + coeff(0)).real();
  }
  double operator()(double x) const { return eval(x); }

  TrigPoly1D derivative(int order = 1) const {
    TrigPoly1D p(degree_, period_);
    const double w0 = base_freq();
    for (int k = -degree_; k <= degree_; ++k) {
      cplx f = std::pow(cplx(0.0, k * w0), order);
      p.set_coeff(k, coeff(k) * f);
    }
    return p;
  }

  TrigPoly1D operator+(const TrigPoly1D& o) const {
    TrigPoly1D p(std::max(degree_, o.degree_), period_);
    for (int k = -p.degree_; k <= p.degree_; ++k) p.set_coeff(k, coeff(k) + o.coeff(k));
    return p;
  }
  TrigPoly1D operator*(double s) const {
    TrigPoly1D p = *this;
    for (auto& v : p.c_) v *= s;
    return p;
  }
  /// Product; degrees add (coefficient convolution).
  TrigPoly1D operator*(const TrigPoly1D& o) const {
    TrigPoly1D p(degree_ + o.degree_, period_);
    for (int k = -degree_; k <= degree_; ++k)
      for (int l = -o.degree_; l <= o.degree_; ++l)
        p.set_coeff(k + l, p.coeff(k + l) + coeff(k) * o.coeff(l));
    return p;
  }

  /// Values on the uniform grid x_j = j*period/m via zero-padded inverse DFT.
  std::vector<double> sample(int m) const {
    if (m < 2 * degree_ + 1) throw GridTooCoarse("sample: grid smaller than 2N+1");
    std::vector<cplx> buf(m, cplx(0.0, 0.0));
    for (int k = -degree_; k <= degree_; ++k) {
      const int idx = (k >= 0) ? k : m + k;
      buf[idx] += coeff(k);
    }
    detail::fft_1d(buf, FFTW_BACKWARD);
    std::vector<double> out(m);
    for (int j = 0; j < m; ++j) out[j] = buf[j].real();
    return out;
  }

  double max_imag_on_grid(int m) const {
    std::vector<cplx> buf(m, cplx(0.0, 0.0));
    for (int k = -degree_; k <= degree_; ++k) buf[(k >= 0) ? k : m + k] += coeff(k);
    detail::fft_1d(buf, FFTW_BACKWARD);
    double mi = 0;
    for (auto& v : buf) mi = std::max(mi, std::abs(v.imag()));
    return mi;
  }

  /// max |c_{-k} - conj(c_k)| over k, the reality-condition defect.
  double reality_defect() const {
    double d = 0;
    for (int k = 0; k <= degree_; ++k) d = std::max(d, std::abs(coeff(-k) - std::conj(coeff(k))));
    return d;
  }

  /// Sup norm on the real line: dense grid plus local parabolic refinement.
  double sup_norm(int oversample = 16) const {
    const int m = std::max(64, oversample * (2 * degree_ + 1));
    std::vector<double> v = sample(m);
    int best = 0;
    for (int j = 1; j < m; ++j)
      if (std::abs(v[j]) > std::abs(v[best])) best = j;
    const double h = period_ / m;
    double lo = (best - 1) * h, hi = (best + 1) * h;
    // golden-section on |f| around the best bin
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = std::abs(eval(x1)), f2 = std::abs(eval(x2));
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = std::abs(eval(x2));
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = std::abs(eval(x1));
      }
    }
    return std::max({std::abs(v[best]), f1, f2});
  }

  /// Maximum modulus on the closed complex strip |Im z| <= r (attained on the
  /// boundary).  p(x + i y) = sum c_k e^{i k w0 x} e^{-k w0 y}.
  double strip_norm(double r, int oversample = 16) const {
    const int m = std::max(64, oversample * (2 * degree_ + 1));
    double best = 0;
    for (double sgn : {-1.0, 1.0}) {
      for (int j = 0; j < m; ++j) {
        const double x = period_ * j / m;
        cplx s(0.0, 0.0);
        for (int k = -degree_; k <= degree_; ++k)
          s += coeff(k) * std::exp(-k * base_freq() * sgn * r) *
               std::exp(cplx(0.0, k * base_freq() * x));
        best = std::max(best, std::abs(s));
      }
    }
    return best;
  }

 private:
  int degree_;
  double period_;
  std::vector<cplx> c_;
};

/// Real trigonometric polynomial on the d-torus [0,2pi)^d.  Coefficients are
/// indexed by integer frequency vectors k with |k_j| <= degree_[j].
class TrigPolyND {
 public:
  TrigPolyND() = default;
  explicit TrigPolyND(std::vector<int> degrees) : degrees_(std::move(degrees)) {
    std::size_t n = 1;
    for (int d : degrees_) n *= static_cast<std::size_t>(2 * d + 1);
    c_.assign(n, cplx(0.0, 0.0));
  }

  int dim() const { return static_cast<int>(degrees_.size()); }
  const std::vector<int>& degrees() const { return degrees_; }
  const std::vector<cplx>& coeffs() const { return c_; }

  std::size_t index_of(const std::vector<int>& k) const {
    std::size_t idx = 0;
    for (int j = 0; j < dim(); ++j) idx = idx * (2 * degrees_[j] + 1) + (k[j] + degrees_[j]);
    return idx;
  }
  cplx coeff(const std::vector<int>& k) const {
    for (int j = 0; j < dim(); ++j)
      if (k[j] < -degrees_[j] || k[j] > degrees_[j]) return cplx(0.0, 0.0);
    return c_[index_of(k)];
  }
  void set_coeff(const std::vector<int>& k, cplx v) { c_[index_of(k)] = v; }

  cplx mean() const { return c_[index_of(std::vector<int>(dim(), 0))]; }
  void set_mean(cplx v) { c_[index_of(std::vector<int>(dim(), 0))] = v; }

  /// Iterate all frequency vectors; f(k, index).
  template <class F>
  void for_each(F&& f) const {
    std::vector<int> k(dim());
    for (int j = 0; j < dim(); ++j) k[j] = -degrees_[j];
    std::size_t idx = 0;
    const std::size_t n = c_.size();
    while (idx < n) {
      f(k, idx);
      ++idx;
      for (int j = dim() - 1; j >= 0; --j) {
        if (++k[j] <= degrees_[j]) break;
        k[j] = -degrees_[j];
      }
    }
  }

  /// DFT of grid samples (row-major over shape), truncated to `degrees`.
  static TrigPolyND from_samples(const std::vector<double>& samples, const std::vector<int>& shape,
                                 std::vector<int> degrees) {
    const int d = static_cast<int>(shape.size());
    for (int j = 0; j < d; ++j)
      if (shape[j] < 2 * degrees[j] + 1) throw GridTooCoarse("from_samples: grid < 2N+1");
    std::vector<cplx> buf(samples.begin(), samples.end());
    detail::fft_nd(buf, shape, FFTW_FORWARD);
    double norm = 1.0;
    for (int s : shape) norm *= s;
    TrigPolyND p(std::move(degrees));
    p.for_each([&](const std::vector<int>& k, std::size_t idx) {
      std::size_t src = 0;
      for (int j = 0; j < d; ++j) {
        const int kk = (k[j] >= 0) ? k[j] : shape[j] + k[j];
        src = src * shape[j] + kk;
      }
      p.c_[idx] = buf[src] / norm;
    });
    return p;
  }

  /// Samples on the uniform grid of the given shape (zero-padded inverse DFT).
  std::vector<double> sample(const std::vector<int>& shape) const {
    const int d = dim();
    for (int j = 0; j < d; ++j)
      if (shape[j] < 2 * degrees_[j] + 1) throw GridTooCoarse("sample: grid < 2N+1");
    std::size_t n = 1;
    for (int s : shape) n *= s;
    std::vector<cplx> buf(n, cplx(0.0, 0.0));
    for_each([&](const std::vector<int>& k, std::size_t idx) {
      std::size_t dst = 0;
      for (int j = 0; j < d; ++j) {
        const int kk = (k[j] >= 0) ? k[j] : shape[j] + k[j];
        dst = dst * shape[j] + kk;
      }
      buf[dst] += c_[idx];
    });
    detail::fft_nd(buf, shape, FFTW_BACKWARD);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = buf[i].real();
    return out;
  }

  double eval(const std::vector<double>& x) const {
    cplx s(0.0, 0.0);
    for_each([&](const std::vector<int>& k, std::size_t idx) {
      double phase = 0;
      for (int j = 0; j < dim(); ++j) phase += k[j] * x[j];
      s += c_[idx] * std::exp(cplx(0.0, phase));
    });
    return s.real();
  }

  double reality_defect() const {
    double defect = 0;
    for_each([&](const std::vector<int>& k, std::size_t idx) {
      std::vector<int> nk(k.size());
      for (std::size_t j = 0; j < k.size(); ++j) nk[j] = -k[j];
      defect = std::max(defect, std::abs(c_[idx] - std::conj(coeff(nk))));
    });
    return defect;
  }

  /// Multiply coefficients along one axis by w(k_axis).
  TrigPolyND axis_weighted(int axis, const std::function<double(int)>& w) const {
    TrigPolyND p = *this;
    p.for_each([&](const std::vector<int>& k, std::size_t idx) { p.c_[idx] *= w(k[axis]); });
    return p;
  }

  /// Truncate the declared degree along one axis (drops outside coeffs).
  TrigPolyND truncated(std::vector<int> new_degrees) const {
    TrigPolyND p(std::move(new_degrees));
    p.for_each([&](const std::vector<int>& k, std::size_t idx) { p.c_[idx] = coeff(k); });
    return p;
  }

  TrigPolyND partial_derivative(int axis, int order = 1) const {
    TrigPolyND p = *this;
    p.for_each([&](const std::vector<int>& k, std::size_t idx) {
      p.c_[idx] *= std::pow(cplx(0.0, k[axis]), order);
    });
    return p;
  }

  TrigPolyND laplacian() const {
    TrigPolyND p = *this;
    p.for_each([&](const std::vector<int>& k, std::size_t idx) {
      double k2 = 0;
      for (int j = 0; j < dim(); ++j) k2 += static_cast<double>(k[j]) * k[j];
      p.c_[idx] *= -k2;
    });
    return p;
  }

  TrigPolyND operator+(const TrigPolyND& o) const {
    std::vector<int> deg(degrees_);
    for (int j = 0; j < dim(); ++j) deg[j] = std::max(deg[j], o.degrees_[j]);
    TrigPolyND p(deg);
    p.for_each([&](const std::vector<int>& k, std::size_t idx) { p.c_[idx] = coeff(k) + o.coeff(k); });
    return p;
  }
  TrigPolyND operator*(double s) const {
    TrigPolyND p = *this;
    for (auto& v : p.c_) v *= s;
    return p;
  }

  /// Sup of |f| on a dense grid (oversample per axis relative to 2N+1).
  double sup_norm(int oversample = 8) const {
    std::vector<int> shape(dim());
    for (int j = 0; j < dim(); ++j)
      shape[j] = static_cast<int>(next_pow2(std::max<std::size_t>(32, oversample * (2 * degrees_[j] + 1))));
    std::vector<double> v = sample(shape);
    double m = 0;
    for (double t : v) m = std::max(m, std::abs(t));
    return m;
  }

 private:
  std::vector<int> degrees_;
  std::vector<cplx> c_;
};

}  // namespace ckam::trigapprox

#endif  // CKAM_TRIGPOLY_HPP
