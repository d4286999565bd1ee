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
// Constructors for the torus-destroying perturbation families:
//   u_n(x)   = n^{-a} (1 - cos 2 pi x)
//   v_n      = C-infinity bump of height n^{-s}, s = (k+2)a, supported in
//              [1/2 - n^{-a}, 1/2 + n^{-a}]
//   v_n(x)   = u_n(x) e^{-2N} (p_N(x)/max p_N)^2   (real-analytic variant)
// plus sup/Hoelder/strip norm reports for them.

#ifndef CKAM_PERTURB_HPP
#define CKAM_PERTURB_HPP

#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <vector>

#include "ckam/common.hpp"
#include "ckam/trigapprox.hpp"
#include "ckam/twistmap.hpp"

namespace ckam::perturb {

namespace detail {

// Smooth unit step T(x) = logistic(1/(1-x) - 1/x): C-infinity, identically
// 0 for x <= 0 and 1 for x >= 1, with all derivatives vanishing at both
// ends.  Derivatives to order 4 by Faa di Bruno.
inline std::array<double, 5> smooth_step_derivs(double x) {
  if (x <= 1e-12) return {0, 0, 0, 0, 0};
  if (x >= 1.0 - 1e-12) return {1, 0, 0, 0, 0};
  const double om = 1.0 - x;
  const double phi = 1.0 / om - 1.0 / x;
  double s;
  if (phi >= 0)
    s = 1.0 / (1.0 + std::exp(-phi));
  else {
    const double e = std::exp(phi);
    s = e / (1.0 + e);
  }
  const double s1 = s * (1.0 - s);
  const double s2 = s1 * (1.0 - 2.0 * s);
  const double s3 = s1 * (1.0 - 6.0 * s + 6.0 * s * s);
  const double s4 = s1 * (1.0 - 2.0 * s) * (1.0 - 12.0 * s + 12.0 * s * s);
  const double p1 = 1.0 / (om * om) + 1.0 / (x * x);
  const double p2 = 2.0 / (om * om * om) - 2.0 / (x * x * x);
  const double p3 = 6.0 / (om * om * om * om) + 6.0 / (x * x * x * x);
  const double p4 = 24.0 / std::pow(om, 5) - 24.0 / std::pow(x, 5);
  std::array<double, 5> out;
  out[0] = s;
  out[1] = s1 * p1;
  out[2] = s2 * p1 * p1 + s1 * p2;
  out[3] = s3 * p1 * p1 * p1 + 3.0 * s2 * p1 * p2 + s1 * p3;
  out[4] = s4 * p1 * p1 * p1 * p1 + 6.0 * s3 * p1 * p1 * p2 + s2 * (3.0 * p2 * p2 + 4.0 * p1 * p3) +
           s1 * p4;
  return out;
}

// Even bump profile g(t) = T(1 - |t|): peak exactly 1 at t = 0, support
// [-1,1], C-infinity on the line.
inline std::array<double, 5> bump_profile_derivs(double t) {
  const double at = std::abs(t);
  if (at >= 1.0) return {0, 0, 0, 0, 0};
  auto T = smooth_step_derivs(1.0 - at);
  const double sg = (t >= 0) ? -1.0 : 1.0;  // d(1-|t|)/dt
  return {T[0], sg * T[1], T[2], sg * T[3], T[4]};
}

inline double dense_sup(const std::function<double(double)>& f, double period, int grid = 1 << 16) {
  double best = 0;
  int bi = 0;
  for (int i = 0; i < grid; ++i) {
    const double v = std::abs(f(period * i / grid));
    if (v > best) {
      best = v;
      bi = i;
    }
  }
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = period * (bi - 1) / grid, b = period * (bi + 1) / grid;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = std::abs(f(x1)), f2 = std::abs(f(x2));
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = std::abs(f(x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = std::abs(f(x1));
    }
  }
  return std::max({best, f1, f2});
}

}  // namespace detail

struct SmoothBumpParams {
  int n = 2;
  double a = 1.0;
  int k = 2;             // smoothness order tracked by the C^k estimate
  double s() const { return (k + 2) * a; }
};

struct AnalyticPerturbParams {
  int n = 2;
  double a = 1.0;
  int k = 4;             // Jackson order
  double sigma = 0.0;    // off-bump slack; 0 picks the largest admissible
  int coeff_cap = 4096;  // cap on 2N+1
};

/// u_n(x) = n^{-a}(1 - cos 2 pi x), 1-periodic.
inline twistmap::PeriodicPotential make_u(int n, double a) {
  if (n < 1 || a <= 0) throw ValidationError("make_u: n >= 1, a > 0");
  const double amp = std::pow(static_cast<double>(n), -a);
  trigapprox::TrigPoly1D poly(1, 1.0);
  poly.set_coeff(0, amp);
  poly.set_coeff(1, -amp / 2.0);
  poly.set_coeff(-1, -amp / 2.0);
  auto p = twistmap::trig_potential(poly, "u");
  return p;
}

/// C-infinity bump of Eq.-(32) type: supported in [1/2-n^{-a}, 1/2+n^{-a}],
/// max exactly n^{-s} at 1/2, 1-periodic.  The support half-width is n^{-a};
/// widths beyond half the period are rejected.
inline twistmap::PeriodicPotential make_bump_v(const SmoothBumpParams& prm) {
  if (prm.n < 1 || prm.a <= 0 || prm.k < 1) throw ValidationError("make_bump_v: bad parameters");
  const double r = std::pow(static_cast<double>(prm.n), -prm.a);
  if (r > 0.5) throw SupportTooWide("make_bump_v: support half-width n^-a exceeds half the period");
  const double peak = std::pow(static_cast<double>(prm.n), -prm.s());
  twistmap::PeriodicPotential p;
  p.period = 1.0;
  p.family = "bump";
  for (int j = 0; j <= 4; ++j) {
    const double scale = peak / std::pow(r, j);
    p.d[j] = [r, scale, j](double x) {
      double del = wrap_positive(x - 0.5, 1.0);
      if (del >= 0.5) del -= 1.0;
      return scale * detail::bump_profile_derivs(del / r)[j];
    };
  }
  return p;
}

struct AnalyticPerturbation {
  twistmap::PeriodicPotential v;         // u_n * e^{-2N} (p_N/max p_N)^2
  trigapprox::TrigPoly1D p;              // the Jackson polynomial p_N
  trigapprox::TrigPoly1D normalized_sq;  // (p_N/max p_N)^2, O(1) coefficients
  int N = 0;
  double sigma = 0;
  double log_amp = 0;                    // ln e^{-2N} = -2N
  double max_p = 0;
  double lambda_lo = 0, lambda_hi = 0;   // bump region
  double on_bump_max = 0;                // max v on the bump region
  double off_bump_max = 0;               // max |v| off the bump region
  double off_constant = 0;               // off / (sigma^2 e^{-2N} n^{-a})
};

/// Real-analytic second perturbation of section 2.1.3.  The Jackson target is
/// a bump of height 2 on Lambda_n (length ~ n^{-a/2} inside [1/4,3/4]); the
/// de la Vallee Poussin order doubles until the off-bump slack sigma is met.
inline AnalyticPerturbation make_analytic_v(const AnalyticPerturbParams& prm) {
  if (prm.n < 1 || prm.a <= 0 || prm.k < 1) throw ValidationError("make_analytic_v: bad parameters");
  const double sigma_max = 0.5 * std::pow(static_cast<double>(prm.n), -prm.a / 2.0);
  double sigma = (prm.sigma > 0) ? prm.sigma : sigma_max;
  if (sigma > sigma_max + 1e-15)
    throw ValidationError("make_analytic_v: sigma must satisfy sigma <= n^{-a/2}/2");

  const double rho = std::min(0.25 * std::pow(static_cast<double>(prm.n), -prm.a / 2.0), 0.2375);
  auto phi = [rho](double x) {
    double del = wrap_positive(x - 0.5, 1.0);
    if (del >= 0.5) del -= 1.0;
    return 2.0 * detail::bump_profile_derivs(del / rho)[0];
  };

  trigapprox::TrigPoly1D p;
  bool ok = false;
  for (int m = 4; 2 * (2 * m - 1) + 3 <= prm.coeff_cap; m *= 2) {
    auto nd = trigapprox::vallee_poussin_nd(
        [&](const std::vector<double>& th) { return phi(th[0] / two_pi); }, std::vector<int>{m});
    trigapprox::TrigPoly1D cand(nd.degrees()[0], 1.0);
    for (int k = -cand.degree(); k <= cand.degree(); ++k) cand.set_coeff(k, nd.coeff({k}));
    // measured Jackson error on a dense grid
    double err = 0;
    const int G = 1 << 14;
    for (int i = 0; i < G; ++i) {
      const double x = static_cast<double>(i) / G;
      err = std::max(err, std::abs(cand.eval(x) - phi(x)));
    }
    if (err < sigma) {
      p = cand;
      ok = true;
      break;
    }
  }
  if (!ok) throw DegreeOverflow("make_analytic_v: coefficient cap reached before sigma was met");

  AnalyticPerturbation out;
  out.p = p;
  out.N = p.degree();
  out.sigma = sigma;
  out.log_amp = -2.0 * out.N;
  out.lambda_lo = 0.5 - rho;
  out.lambda_hi = 0.5 + rho;
  out.max_p = [&] {
    double best = -1e300;
    const int G = 1 << 14;
    for (int i = 0; i <= G; ++i) best = std::max(best, p.eval(static_cast<double>(i) / G));
    return best;
  }();

  trigapprox::TrigPoly1D scaled = p * (1.0 / out.max_p);
  out.normalized_sq = scaled * scaled;

  const double amp = std::exp(out.log_amp);
  auto u = make_u(prm.n, prm.a);
  auto w = std::make_shared<std::array<trigapprox::TrigPoly1D, 5>>();
  (*w)[0] = out.normalized_sq;
  for (int j = 1; j <= 4; ++j) (*w)[j] = out.normalized_sq.derivative(j);
  auto uf = std::make_shared<twistmap::PeriodicPotential>(u);

  twistmap::PeriodicPotential v;
  v.period = 1.0;
  v.family = "analytic-v";
  static const double binom[5][5] = {
      {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
  for (int rr = 0; rr <= 4; ++rr) {
    v.d[rr] = [uf, w, amp, rr](double x) {
      double acc = 0;
      for (int j = 0; j <= rr; ++j) acc += binom[rr][j] * uf->deriv(j, x) * (*w)[rr - j].eval(x);
      return amp * acc;
    };
  }
  if (u.spectrum) v.spectrum = (*u.spectrum * out.normalized_sq) * amp;
  out.v = v;

  const int G = 1 << 14;
  for (int i = 0; i < G; ++i) {
    const double x = static_cast<double>(i) / G;
    const double val = v(x);
    if (x >= out.lambda_lo && x <= out.lambda_hi)
      out.on_bump_max = std::max(out.on_bump_max, val);
    else
      out.off_bump_max = std::max(out.off_bump_max, std::abs(val));
  }
  out.off_constant =
      out.off_bump_max / (sigma * sigma * amp * std::pow(static_cast<double>(prm.n), -prm.a));
  return out;
}

struct NormRow {
  double order = 0;
  double value = 0;
  std::string method;  // "sup", "interpolated"
};

struct StripRow {
  double r = 0;
  double value = 0;  // measured max on |Im z| = r
  double bound = 0;  // e^{r N w0} ||p||
};

struct NormReport {
  std::vector<NormRow> rows;
  std::optional<StripRow> strip;
};

/// Sup norms of derivatives (closed-form evaluators, spectral for trig
/// families), Hoelder-interpolated fractional orders (upper bound
/// 2 ||f^(m)||^{1-t} ||f^(m+1)||^{t}), and the analytic strip norm for trig
/// polynomials.
inline NormReport norm_report(const twistmap::PeriodicPotential& V, const std::vector<double>& orders,
                              std::optional<double> strip_r = std::nullopt) {
  NormReport rep;
  auto sup_of_order = [&](int m) {
    return detail::dense_sup([&](double x) { return V.deriv(m, x); }, V.period);
  };
  for (double o : orders) {
    NormRow row;
    row.order = o;
    const double nearest = std::round(o);
    if (std::abs(o - nearest) < 1e-12) {
      const int m = static_cast<int>(nearest);
      if (m < 0 || m > 4) throw Unsupported("norm_report: integer orders 0..4");
      row.value = sup_of_order(m);
      row.method = "sup";
    } else {
      const int m = static_cast<int>(std::floor(o));
      if (m < 0 || m + 1 > 4) throw Unsupported("norm_report: fractional orders below 4");
      const double t = o - m;
      row.value = 2.0 * std::pow(sup_of_order(m), 1.0 - t) * std::pow(sup_of_order(m + 1), t);
      row.method = "interpolated";
    }
    rep.rows.push_back(row);
  }
  if (strip_r) {
    if (!V.spectrum) throw ValidationError("norm_report: strip norm needs a trig polynomial");
    StripRow s;
    s.r = *strip_r;
    s.value = V.spectrum->strip_norm(*strip_r);
    const int N = V.spectrum->support_degree(1e-14);
    s.bound = std::exp(*strip_r * N * V.spectrum->base_freq()) * V.spectrum->sup_norm();
    rep.strip = s;
  }
  return rep;
}

}  // namespace ckam::perturb

#endif  // CKAM_PERTURB_HPP
