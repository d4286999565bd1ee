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
// Herman's total-destruction criterion for twist maps of T^d, the 1-DOF toy
// family, the smooth/analytic T_n constructions (plateau bump minus a scaled
// ball bump, zero mean), and the spectral Poisson solve Delta Psi / d = T.

#ifndef CKAM_HERMAN_HPP
#define CKAM_HERMAN_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "ckam/common.hpp"
#include "ckam/perturb.hpp"
#include "ckam/trigapprox.hpp"
#include "ckam/twistmap.hpp"

namespace ckam::herman {

using trigapprox::TrigPolyND;

/// Grid samples of a smooth function on [0,2pi)^d (power-of-two shapes).
struct TorusField {
  std::vector<int> shape;
  std::vector<double> values;

  int dim() const { return static_cast<int>(shape.size()); }
  std::size_t size() const { return values.size(); }

  double mean() const {
    double s = 0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
  }

  TrigPolyND spectrum() const {
    std::vector<int> deg(shape.size());
    for (std::size_t j = 0; j < shape.size(); ++j) deg[j] = shape[j] / 2 - 1;
    return TrigPolyND::from_samples(values, shape, deg);
  }

  static TorusField from_poly(const TrigPolyND& p, const std::vector<int>& shape) {
    return {shape, p.sample(shape)};
  }

  template <class F>
  static TorusField from_callable(F&& f, const std::vector<int>& shape) {
    auto g = trigapprox::sample_callable(std::forward<F>(f), shape);
    return {g.shape, std::move(g.values)};
  }

  /// max |spectrum -> samples| round-trip defect.
  double transform_roundtrip_error() const {
    auto back = spectrum().sample(shape);
    double e = 0;
    for (std::size_t i = 0; i < values.size(); ++i) e = std::max(e, std::abs(values[i] - back[i]));
    return e;
  }
};

struct CriterionReport {
  double min_T = 0;
  double max_T = 0;
  double lhs = 0;                 // 1 / (1 + min/2)
  double rhs = 0;                 // 1 + max/2 + sqrt(max + max^2/4)
  bool holds = false;             // lhs > rhs  =>  no invariant Lipschitz graph
  bool denominator_collapse = false;  // 1 + min/2 <= 0: bound already violated
  bool scri_holds = false;        // asymptotic form -min/2 > sqrt(max)
  double margin = 0;
  double lipschitz_bound_G = 0;   // G <= 1 + M/2 + sqrt(M + M^2/4)
  std::vector<double> argmin;
  std::vector<double> argmax;
};

/// Exact arithmetic of the destruction inequality given the extrema of the
/// trace T (or of D phi in one degree of freedom).
inline CriterionReport criterion_check(double min_T, double max_T) {
  CriterionReport r;
  r.min_T = min_T;
  r.max_T = max_T;
  const double M = max_T;
  r.lipschitz_bound_G = 1.0 + 0.5 * M + std::sqrt(std::max(0.0, M + 0.25 * M * M));
  r.rhs = r.lipschitz_bound_G;
  const double den = 1.0 + 0.5 * min_T;
  if (den <= 0) {
    r.denominator_collapse = true;
    r.lhs = std::numeric_limits<double>::infinity();
    r.holds = true;
  } else {
    r.lhs = 1.0 / den;
    r.holds = r.lhs > r.rhs;
  }
  r.margin = r.lhs - r.rhs;
  r.scri_holds = (-0.5 * min_T) > std::sqrt(std::max(0.0, max_T));
  return r;
}

namespace detail {

// dense scan + golden refinement of a smooth 1-periodic-in-each-axis scalar
// function along a 1-D parametrization; here only used axis-aligned or 1-D.
inline std::pair<double, double> refine_extremum_1d(const std::function<double(double)>& f,
                                                    double a, double b, bool maximize) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  auto val = [&](double x) { return maximize ? f(x) : -f(x); };
  double f1 = val(x1), f2 = val(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = val(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = val(x1);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

struct Extremum {
  double x = 0;
  double value = 0;
};

// min and max of f over one period, >= 8 samples per smallest wavelength.
inline std::pair<Extremum, Extremum> scan_extrema(const std::function<double(double)>& f,
                                                  double period, int grid) {
  int imin = 0, imax = 0;
  std::vector<double> v(grid);
  for (int i = 0; i < grid; ++i) {
    v[i] = f(period * i / grid);
    if (v[i] < v[imin]) imin = i;
    if (v[i] > v[imax]) imax = i;
  }
  const double h = period / grid;
  auto lo = refine_extremum_1d(f, (imin - 1) * h, (imin + 1) * h, false);
  auto hi = refine_extremum_1d(f, (imax - 1) * h, (imax + 1) * h, true);
  return {{wrap_positive(lo.first, period), lo.second}, {wrap_positive(hi.first, period), hi.second}};
}

}  // namespace detail

/// Toy potential of the 1-DOF model: V(x) = -5/(4n^2) sin(nx) - 1/(16n^2) cos(2nx),
/// 2pi-periodic, so that V' = phi_n and V'' = D phi_n.
inline twistmap::PeriodicPotential toy_potential(int n) {
  if (n < 1) throw ValidationError("toy_potential: n >= 1");
  auto poly = trigapprox::TrigPoly1D::harmonic(n, 0.0, -5.0 / (4.0 * n * n)) +
              trigapprox::TrigPoly1D::harmonic(2 * n, -1.0 / (16.0 * n * n), 0.0);
  return twistmap::trig_potential(poly, "toy");
}

struct ToyFamily {
  twistmap::PeriodicPotential phi;  // phi_n(x) = -5/(4n) cos(nx) + 1/(8n) sin(2nx)
  twistmap::PeriodicPotential V;    // potential generating f_n
  CriterionReport report;
};

/// The toy family with its criterion report: min D phi = -3/2, max D phi = 1,
/// located by a dense grid (>= 8 samples per smallest wavelength) plus local
/// refinement.
inline ToyFamily toy_family(int n) {
  ToyFamily t;
  t.V = toy_potential(n);
  auto phi_poly = trigapprox::TrigPoly1D::harmonic(n, -5.0 / (4.0 * n), 0.0) +
                  trigapprox::TrigPoly1D::harmonic(2 * n, 0.0, 1.0 / (8.0 * n));
  t.phi = twistmap::trig_potential(phi_poly, "toy-phi");
  auto dphi = [&](double x) { return t.phi.deriv(1, x); };
  auto [lo, hi] = detail::scan_extrema(dphi, two_pi, std::max(64, 32 * n));
  t.report = criterion_check(lo.value, hi.value);
  t.report.argmin = {lo.x};
  t.report.argmax = {hi.x};
  return t;
}

struct SmoothT {
  TorusField field;
  CriterionReport report;
  double beta = 0;    // ball amplitude multiplier enforcing zero mean
  double R = 0;       // ball radius
  double ball_peak = 0;
  double plateau_peak = 0;
};

namespace detail {

inline double plateau_1d(double x) {
  // C-infinity bump on [0, pi], identically 1 on the middle half
  const double t = wrap_positive(x, two_pi);
  if (t <= 0 || t >= pi) return 0.0;
  return perturb::detail::smooth_step_derivs(4.0 * t / pi)[0] *
         perturb::detail::smooth_step_derivs(4.0 * (pi - t) / pi)[0];
}

inline double torus_dist(const std::vector<double>& x, const std::vector<double>& c) {
  double s = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double d = wrap_positive(x[j] - c[j], two_pi);
    if (d > pi) d -= two_pi;
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace detail

/// Herman's smooth construction: T = T+ - beta T- with T+ a plateau bump on
/// [0,pi]^d of height 1/n, T- a radial bump of height c/sqrt(n) on the ball
/// B_R((-pi/2,..)) with R = n^{-1/(2d)}, and beta chosen so the grid mean is
/// exactly zero.
inline SmoothT make_T_smooth(int n, int d, double c = 4.0, std::vector<int> shape = {}) {
  if (n < 1 || d < 1) throw ValidationError("make_T_smooth: n, d >= 1");
  const double R = std::pow(1.0 / std::sqrt(static_cast<double>(n)), 1.0 / d);
  if (R >= pi / 2) throw BallDoesNotFit("make_T_smooth: ball radius exceeds pi/2");
  if (shape.empty()) shape.assign(d, d >= 3 ? 64 : 256);

  const std::vector<double> center(d, -pi / 2.0);
  const double plateau_peak = 1.0 / n;
  const double ball_peak = c / std::sqrt(static_cast<double>(n));

  auto plus = [&](const std::vector<double>& x) {
    double v = plateau_peak;
    for (double xi : x) v *= detail::plateau_1d(xi);
    return v;
  };
  auto minus = [&](const std::vector<double>& x) {
    const double rho = detail::torus_dist(x, center) / R;
    return ball_peak * perturb::detail::bump_profile_derivs(rho)[0];
  };

  TorusField fplus = TorusField::from_callable(plus, shape);
  TorusField fminus = TorusField::from_callable(minus, shape);
  const double mp = fplus.mean(), mm = fminus.mean();
  if (mm == 0) throw BallDoesNotFit("make_T_smooth: ball unresolved by the grid");
  const double beta = mp / mm;

  SmoothT out;
  out.beta = beta;
  out.R = R;
  out.ball_peak = ball_peak;
  out.plateau_peak = plateau_peak;
  out.field.shape = shape;
  out.field.values.resize(fplus.values.size());
  for (std::size_t i = 0; i < fplus.values.size(); ++i)
    out.field.values[i] = fplus.values[i] - beta * fminus.values[i];

  // extrema are attained at the profile peaks by construction
  const double min_T = -beta * ball_peak;
  const double max_T = plateau_peak;
  out.report = criterion_check(min_T, max_T);
  out.report.argmin = center;
  out.report.argmax = std::vector<double>(d, pi / 2.0);
  return out;
}

/// Smallest n for which the smooth construction satisfies the criterion with
/// min T > -2 (no denominator collapse) and positive margin.
inline int smooth_criterion_threshold(int d, double c = 4.0, int n_max = 4096) {
  for (int n = 1; n <= n_max; ++n) {
    const double R = std::pow(1.0 / std::sqrt(static_cast<double>(n)), 1.0 / d);
    if (R >= pi / 2) continue;
    auto t = make_T_smooth(n, d, c, std::vector<int>(d, d >= 3 ? 32 : 128));
    if (!t.report.denominator_collapse && t.report.holds) return n;
  }
  throw Error("smooth_criterion_threshold: not reached");
}

struct AnalyticT {
  TrigPolyND p_tilde;
  CriterionReport report;
  int N = 0;          // max per-axis degree
  double beta = 0;
  double max_abs_p = 0;
  double min_val = 0;
  double max_val = 0;
};

/// Analytic variant: approximate the (plateau height ~1, ball height ~n)
/// field by the de la Vallee Poussin mean, zero the constant coefficient,
/// then normalize to n^{-(1-eps)} p_N / max|p_N|.  Expected magnitudes
/// max ~ n^{-(2-eps)}, min ~ -n^{-(1-eps)}.
inline AnalyticT make_T_analytic(int n, int d, int k, double eps, double sigma = 0.1,
                                 int degree_cap = 512) {
  if (n < 1 || d < 1 || eps <= 0 || eps >= 1) throw ValidationError("make_T_analytic: bad parameters");
  const double R = std::pow(1.0 / static_cast<double>(n), 1.0 / d);
  if (R >= pi / 2) throw BallDoesNotFit("make_T_analytic: ball radius exceeds pi/2");
  (void)k;  // the Jackson order enters through the measured stopping rule

  const std::vector<double> center(d, -pi / 2.0);
  auto plus = [&](const std::vector<double>& x) {
    double v = 1.0;
    for (double xi : x) v *= detail::plateau_1d(xi);
    return v;
  };
  auto minus = [&](const std::vector<double>& x) {
    const double rho = detail::torus_dist(x, center) / R;
    return static_cast<double>(n) * perturb::detail::bump_profile_derivs(rho)[0];
  };

  auto mean_of = [](const std::vector<double>& v) {
    double s = 0;
    for (double t : v) s += t;
    return s / static_cast<double>(v.size());
  };

  TrigPolyND p;
  AnalyticT out;
  std::vector<int> shape;
  bool ok = false;
  for (int m = 4; 2 * m - 1 <= degree_cap; m *= 2) {
    shape.assign(d, static_cast<int>(next_pow2(std::max(64, 8 * m))));
    auto gplus = trigapprox::sample_callable(plus, shape);
    auto gminus = trigapprox::sample_callable(minus, shape);
    const double mminus = mean_of(gminus.values);
    if (mminus == 0) throw BallDoesNotFit("make_T_analytic: ball unresolved by the grid");
    out.beta = mean_of(gplus.values) / mminus;
    trigapprox::SampledGrid grid;
    grid.shape = shape;
    grid.values.resize(gplus.values.size());
    for (std::size_t i = 0; i < grid.values.size(); ++i)
      grid.values[i] = gplus.values[i] - out.beta * gminus.values[i];

    auto cand = trigapprox::vallee_poussin_nd(grid, std::vector<int>(d, m));
    auto back = cand.sample(shape);
    double err = 0;
    for (std::size_t i = 0; i < back.size(); ++i)
      err = std::max(err, std::abs(back[i] - grid.values[i]));
    if (err < sigma) {
      p = cand;
      ok = true;
      break;
    }
  }
  if (!ok) throw DegreeOverflow("make_T_analytic: degree cap reached before sigma was met");

  p.set_mean(0.0);
  out.N = *std::max_element(p.degrees().begin(), p.degrees().end());

  // dense extrema of p
  std::vector<int> dense(d);
  for (int j = 0; j < d; ++j) dense[j] = std::min(2 * shape[j], 4 * (2 * p.degrees()[j] + 1));
  for (auto& s : dense) s = static_cast<int>(next_pow2(s));
  auto samples = p.sample(dense);
  double mn = samples[0], mx = samples[0];
  for (double v : samples) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  out.max_abs_p = std::max(std::abs(mn), std::abs(mx));

  const double scale = std::pow(static_cast<double>(n), -(1.0 - eps)) / out.max_abs_p;
  out.p_tilde = p * scale;
  out.min_val = mn * scale;
  out.max_val = mx * scale;
  out.report = criterion_check(out.min_val, out.max_val);
  return out;
}

/// Spectral inversion of (1/d) Delta Psi = T with zero-mean normalization:
/// Psi_hat(k) = -d T_hat(k)/|k|^2, Psi_hat(0) = 0.
inline TrigPolyND poisson_solve(const TrigPolyND& T, int d) {
  if (std::abs(T.mean()) > 1e-12) throw NonzeroMean("poisson_solve: T must have zero mean");
  TrigPolyND psi = T;
  TrigPolyND out(T.degrees());
  T.for_each([&](const std::vector<int>& k, std::size_t idx) {
    double k2 = 0;
    for (int kj : k) k2 += static_cast<double>(kj) * kj;
    if (k2 == 0)
      out.set_coeff(k, 0.0);
    else
      out.set_coeff(k, -static_cast<double>(d) * T.coeffs()[idx] / k2);
  });
  return out;
}

inline TorusField poisson_solve(const TorusField& T) {
  auto psi = poisson_solve(T.spectrum(), T.dim());
  return TorusField::from_poly(psi, T.shape);
}

/// sup over the sample grid of |(g + g^{-1})/2 - Id - phi/2| for a sampled
/// strictly increasing circle-map lift g (values at x_j = 2 pi j / M).
inline double conjugacy_residual(const std::function<double(double)>& phi,
                                 const std::vector<double>& g) {
  const int M = static_cast<int>(g.size());
  if (M < 8) throw ValidationError("conjugacy_residual: need >= 8 samples");
  for (int j = 0; j + 1 < M; ++j)
    if (g[j + 1] <= g[j]) throw NotMonotone("conjugacy_residual: lift must be strictly increasing");
  if (g[0] + two_pi <= g[M - 1]) throw NotMonotone("conjugacy_residual: lift must advance by < 2pi per period");

  auto g_at = [&](double x) {
    // piecewise-linear evaluation of the lift at any real x
    const double shift = std::floor(x / two_pi);
    const double xr = x - shift * two_pi;
    const double pos = xr / two_pi * M;
    const int j = std::min(M - 1, static_cast<int>(pos));
    const double frac = pos - j;
    const double gj = g[j];
    const double gj1 = (j + 1 < M) ? g[j + 1] : g[0] + two_pi;
    return gj + frac * (gj1 - gj) + shift * two_pi;
  };
  auto g_inv = [&](double y) {
    // monotone bisection on the interpolant
    double lo = y - two_pi, hi = y + two_pi;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (g_at(mid) < y)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };

  double res = 0;
  for (int j = 0; j < M; ++j) {
    const double x = two_pi * j / M;
    const double v = 0.5 * (g_at(x) + g_inv(x)) - x - 0.5 * phi(x);
    res = std::max(res, std::abs(v));
  }
  return res;
}

}  // namespace ckam::herman

#endif  // CKAM_HERMAN_HPP
