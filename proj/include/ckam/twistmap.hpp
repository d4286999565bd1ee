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
// Generating functions, map iteration and stationarity residuals for 1-DOF
// exact area-preserving twist maps.  The variational kernel is always
// h(x,x') = (x-x')^2/2 + V(x') with V periodic, so the map is explicit:
// f(x,y) = (x+y, y + V'(x+y)).

#ifndef CKAM_TWISTMAP_HPP
#define CKAM_TWISTMAP_HPP

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ckam/common.hpp"
#include "ckam/trigpoly.hpp"

namespace ckam::twistmap {

/// Periodic potential with closed-form derivatives up to order 4.
/// Trigonometric families also carry their Fourier coefficients so norm and
/// strip computations can work spectrally.
struct PeriodicPotential {
  double period = 1.0;
  std::array<std::function<double(double)>, 5> d;
  std::optional<trigapprox::TrigPoly1D> spectrum;
  std::string family = "zero";

  double operator()(double x) const { return d[0](x); }
  double deriv(int order, double x) const {
    if (order < 0 || order > 4) throw Unsupported("potential derivatives are closed-form up to order 4");
    return d[order](x);
  }
};

inline PeriodicPotential zero_potential(double period = 1.0) {
  PeriodicPotential p;
  p.period = period;
  for (auto& f : p.d) f = [](double) { return 0.0; };
  p.spectrum = trigapprox::TrigPoly1D::constant(0.0, period);
  p.family = "zero";
  return p;
}

/// Potential from an explicit trig polynomial; derivatives are spectral.
inline PeriodicPotential trig_potential(const trigapprox::TrigPoly1D& poly,
                                        std::string family = "trig") {
  PeriodicPotential p;
  p.period = poly.period();
  auto sp = std::make_shared<std::array<trigapprox::TrigPoly1D, 5>>();
  (*sp)[0] = poly;
  for (int k = 1; k <= 4; ++k) (*sp)[k] = poly.derivative(k);
  for (int k = 0; k <= 4; ++k)
    p.d[k] = [sp, k](double x) { return (*sp)[k].eval(x); };
  p.spectrum = poly;
  p.family = std::move(family);
  return p;
}

/// Pointwise sum.  Periods must agree.
inline PeriodicPotential sum_potential(const PeriodicPotential& a, const PeriodicPotential& b) {
  if (a.period != b.period) throw ValidationError("sum_potential: period mismatch");
  PeriodicPotential p;
  p.period = a.period;
  for (int k = 0; k <= 4; ++k) {
    auto fa = a.d[k], fb = b.d[k];
    p.d[k] = [fa, fb](double x) { return fa(x) + fb(x); };
  }
  if (a.spectrum && b.spectrum) p.spectrum = *a.spectrum + *b.spectrum;
  p.family = "sum(" + a.family + "," + b.family + ")";
  return p;
}

/// Q(x) = P(s x)/s^2 for real s > 0; the returned period is P.period/s.
/// With integer s this is the Lemma-Herm rescaling viewed on the original
/// circle (see rotation::rescale_problem, which keeps the ambient period).
inline PeriodicPotential rescaled_potential(const PeriodicPotential& P, double s) {
  PeriodicPotential p;
  p.period = P.period / s;
  for (int k = 0; k <= 4; ++k) {
    auto f = P.d[k];
    const double fac = std::pow(s, k - 2);
    p.d[k] = [f, s, fac](double x) { return fac * f(s * x); };
  }
  if (P.spectrum) {
    // same coefficients, frequencies scaled through the shorter period
    trigapprox::TrigPoly1D q(P.spectrum->degree(), P.period / s);
    for (int k = -q.degree(); k <= q.degree(); ++k) q.set_coeff(k, P.spectrum->coeff(k) / (s * s));
    p.spectrum = q;
  }
  p.family = "rescaled(" + P.family + ")";
  return p;
}

/// h(x,x') = (x-x')^2/2 + V(x').
struct GeneratingFunction {
  PeriodicPotential V;

  double operator()(double x, double xp) const { return 0.5 * (x - xp) * (x - xp) + V(xp); }
  double d1(double x, double xp) const { return x - xp; }
  double d2(double x, double xp) const { return xp - x + V.deriv(1, xp); }
  // twist: d1 d2 h = -1 identically for this kernel
  static constexpr double d12() { return -1.0; }
  double period() const { return V.period; }
};

struct PhasePoint {
  double x = 0;
  double y = 0;
};

/// One iterate of the lift: y = -d1 h(x,x'), y' = d2 h(x,x').
inline PhasePoint map_step(const GeneratingFunction& h, PhasePoint p) {
  const double xp = p.x + p.y;
  return {xp, p.y + h.V.deriv(1, xp)};
}

/// (x_N - x_0)/N along the orbit of p0.  Escape past the lift bound throws.
inline double orbit_rotation_number(const GeneratingFunction& h, PhasePoint p0, long N) {
  if (N < 1) throw ValidationError("orbit_rotation_number: N >= 1");
  PhasePoint p = p0;
  for (long i = 0; i < N; ++i) {
    p = map_step(h, p);
    if (std::abs(p.x) > 1e12) throw LiftOverflow("orbit left the lift bound 1e12 (unbounded drift)");
  }
  return (p.x - p0.x) / static_cast<double>(N);
}

/// Max interior violation of d1 h(x_i, x_{i+1}) + d2 h(x_{i-1}, x_i) = 0.
/// For periodic data pass the closed sequence (x_0..x_{q-1}, wrap handled by
/// the caller through aubry::Configuration).
inline double stationarity_residual_segment(const GeneratingFunction& h,
                                            const std::vector<double>& x) {
  if (x.size() < 3) throw ValidationError("stationarity residual needs length >= 3");
  double r = 0;
  for (std::size_t i = 1; i + 1 < x.size(); ++i)
    r = std::max(r, std::abs(h.d1(x[i], x[i + 1]) + h.d2(x[i - 1], x[i])));
  return r;
}

}  // namespace ckam::twistmap

#endif  // CKAM_TWISTMAP_HPP
