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
// Pendulum action lemmas and the Melnikov function of the coupled rotator:
// separatrix, the energy <-> half-turn-time correspondence, the broken
// action L(t1) and its derivative identity, and the closed-form/quadrature
// pair for M(w2, q2) = 2 pi w2 / sinh(pi w2 / (2 sqrt(delta))) cos(q2).

#ifndef CKAM_MELNIKOV_HPP
#define CKAM_MELNIKOV_HPP

#include <cmath>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "ckam/common.hpp"

namespace ckam::melnikov {

struct PendulumParams {
  double sigma = 1.0;  // stiffness (the sigma_n = n^-a or delta_n families)
};

struct SeparatrixPoint {
  double q = 0;
  double qdot = 0;
};

/// q(t) = 4 arctan(exp(sqrt(s) t)), qdot = 2 sqrt(s)/cosh(sqrt(s) t):
/// the zero-energy orbit of A(q,qdot) = qdot^2/2 + s(1-cos q).
inline SeparatrixPoint separatrix(const PendulumParams& p, double t) {
  const double rs = std::sqrt(p.sigma);
  return {4.0 * std::atan(std::exp(rs * t)), 2.0 * rs / std::cosh(rs * t)};
}

/// Time for the energy-e orbit (e > 0, above the separatrix) to cross from
/// q = 0 to q = pi:  T(e) = int_0^pi dq / sqrt(2(e + s(1-cos q))).
/// Strictly decreasing in e.
inline double time_of_flight(const PendulumParams& p, double e) {
  if (e <= 0) throw ValidationError("time_of_flight: e > 0");
  const double s = p.sigma;
  // Half-angle reduction turns the integral into a complete elliptic one:
  //   T(e) = K(k1) / sqrt(s (1 + k^2)),  k^2 = e/(2s),  k1 = 1/sqrt(1+k^2).
  // Near k1 = 1 (deeply sub-separatrix energies, where direct quadrature
  // loses the boundary layer) the log series in the complementary modulus
  // takes over; its error is O(kc^4 log kc).
  const double k2 = e / (2.0 * s);
  const double kc2 = k2 / (1.0 + k2);  // complementary modulus squared
  double K;
  if (kc2 < 1e-10) {
    const double kc = std::sqrt(kc2);
    const double l = std::log(4.0 / kc);
    K = l + 0.25 * kc2 * (l - 1.0);
  } else {
    K = boost::math::ellint_1(1.0 / std::sqrt(1.0 + k2));
  }
  const double val = K / std::sqrt(s * (1.0 + k2));
  if (!std::isfinite(val)) throw QuadratureFailure("time_of_flight: evaluation failed");
  return val;
}

/// The literal adaptive quadrature of the flight-time integral; accurate for
/// e/sigma down to about 1e-10 and used as the independent cross-check of
/// the elliptic route.
inline double time_of_flight_quadrature(const PendulumParams& p, double e) {
  if (e <= 0) throw ValidationError("time_of_flight_quadrature: e > 0");
  const double s = p.sigma;
  boost::math::quadrature::tanh_sinh<double> integ;
  double err = 0, l1 = 0;
  std::size_t levels = 0;
  const double val = integ.integrate(
      [s, e](double q) { return 1.0 / std::sqrt(2.0 * (e + s * (1.0 - std::cos(q)))); }, 0.0, pi,
      1e-12, &err, &l1, &levels);
  if (!(std::isfinite(val)) || err > 1e-11 * std::max(1.0, l1))
    throw QuadratureFailure("time_of_flight_quadrature: tanh_sinh did not reach tolerance");
  return val;
}

/// Monotone inversion of time_of_flight.  The upper energy bracket is the
/// free-motion bound T <= pi/sqrt(2e); the lower bracket shrinks until the
/// flight time exceeds the target.
inline double energy_from_time(const PendulumParams& p, double T) {
  if (T <= 0) throw ValidationError("energy_from_time: T > 0");
  const double hi = pi * pi / (2.0 * T * T);  // T(hi) <= T
  if (time_of_flight(p, hi) > T) throw OutOfBracket("energy_from_time: free-motion bound violated");
  double lo = 0.5 * hi;
  int guard = 0;
  while (time_of_flight(p, lo) <= T) {
    lo *= 0.1;
    if (++guard > 300) throw OutOfBracket("energy_from_time: no lower bracket");
  }
  auto f = [&](double loge) { return time_of_flight(p, std::exp(loge)) - T; };
  std::uintmax_t it = 200;
  auto r = boost::math::tools::toms748_solve(f, std::log(lo), std::log(hi),
                                             boost::math::tools::eps_tolerance<double>(45), it);
  return std::exp(0.5 * (r.first + r.second));
}

/// Two-piece broken pendulum action
///   L(t1) = [int_0^pi sqrt(2(e1+V)) dq - e1 (t1-t0)]
///         + [int_pi^2pi sqrt(2(e2+V)) dq - e2 (t2-t1)],
/// with V(q) = s(1-cos q), e1 = e(t1-t0), e2 = e(t2-t1).
inline double broken_action(const PendulumParams& p, double t0, double t1, double t2) {
  if (!(t0 < t1 && t1 < t2)) throw ValidationError("broken_action: need t0 < t1 < t2");
  const double s = p.sigma;
  auto leg = [&](double dt) {
    const double e = energy_from_time(p, dt);
    boost::math::quadrature::tanh_sinh<double> integ;
    const double val = integ.integrate(
        [s, e](double q) { return std::sqrt(2.0 * (e + s * (1.0 - std::cos(q)))); }, 0.0, pi, 1e-12);
    return val - e * dt;
  };
  // V is symmetric about pi, so the [pi, 2pi] leg equals the [0, pi] leg.
  return leg(t1 - t0) + leg(t2 - t1);
}

struct MelnikovParams {
  double delta = 1.0;   // pendulum stiffness delta_n
  double omega2 = 1.0;  // <omega, k'>
  double q2_t1 = 0.0;   // phase q2(t1) in [0, 2pi)
};

/// M = 2 pi w2 / sinh(pi w2 / (2 sqrt(delta))) * cos(q2).
inline double melnikov_closed_form(const MelnikovParams& m) {
  if (m.omega2 == 0) throw ValidationError("melnikov_closed_form: omega2 != 0");
  return two_pi * m.omega2 / std::sinh(pi * m.omega2 / (2.0 * std::sqrt(m.delta))) *
         std::cos(m.q2_t1);
}

/// delta int (1 - cos qhat(t-t1)) cos(w2 (t-t1) + q2) dt over t1 +- W/sqrt(delta).
/// The integrand decays like exp(-2 sqrt(delta)|t-t1|); 40 e-foldings bound
/// the truncation error far below the 1e-6 agreement target.
inline double melnikov_quadrature(const MelnikovParams& m, double window_mult = 40.0) {
  const double rd = std::sqrt(m.delta);
  const double W = window_mult / rd;
  if (!std::isfinite(W)) throw ValidationError("melnikov_quadrature: window overflow");
  auto integrand = [&](double u) {
    const double qhat = 4.0 * std::atan(std::exp(rd * u));
    return (1.0 - std::cos(qhat)) * std::cos(m.omega2 * u + m.q2_t1);
  };
  double err = 0;
  const double val = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, -W, W, 15, 1e-14, &err);
  if (!std::isfinite(val)) throw QuadratureFailure("melnikov_quadrature: integral not finite");
  return m.delta * val;
}

}  // namespace ckam::melnikov

#endif  // CKAM_MELNIKOV_HPP
