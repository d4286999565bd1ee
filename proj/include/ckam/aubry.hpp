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
// Discrete variational engine for the Frenkel-Kontorova action
// sum h(x_i, x_{i+1}):  minimal periodic orbits for every rational p/q,
// heteroclinic (one-sided symbol) minimizers between neighboring translates,
// Peierls barriers, and the invariant-circle (Mather criterion) test.
//
// The action of a configuration segment has tridiagonal Hessian
//   H_ii = 2 + V''(x_i),  H_{i,i+1} = H_{i+1,i} = -1,
// so Newton steps cost O(length).  Minimization runs projected gradient
// descent from the rotation-linear seed, then damped (projected) Newton.
//
// All Aubry-Mather machinery assumes the potential period is 1 (translates
// x -> x+1).  Potentials with another period are normalized internally by
// Q(X) = V(T X)/T^2; rotation numbers and barrier anchors are then fractions
// of the circle, and barrier values are reported in normalized units.

#ifndef CKAM_AUBRY_HPP
#define CKAM_AUBRY_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "ckam/common.hpp"
#include "ckam/rotation.hpp"
#include "ckam/twistmap.hpp"

namespace ckam::aubry {

using twistmap::GeneratingFunction;

struct RotationSymbol {
  enum class Kind { rational, rational_plus, rational_minus, irrational };
  Kind kind = Kind::rational;
  long p = 0;
  long q = 1;
  double omega = 0;

  double value() const {
    return kind == Kind::irrational ? omega : static_cast<double>(p) / static_cast<double>(q);
  }

  static RotationSymbol rational(long p, long q) { return make(Kind::rational, p, q); }
  static RotationSymbol rational_plus(long p, long q) { return make(Kind::rational_plus, p, q); }
  static RotationSymbol rational_minus(long p, long q) { return make(Kind::rational_minus, p, q); }

  /// Irrational symbols carry a floating omega; "irrational at working
  /// precision" means |q w - p| > threshold for all q <= 1e4.
  static RotationSymbol irrational(double w, double rational_threshold = 1e-9) {
    if (rotation::is_rational_at_precision(w, rational_threshold))
      throw ValidationError("RotationSymbol: omega is rational at working precision");
    RotationSymbol s;
    s.kind = Kind::irrational;
    s.omega = w;
    return s;
  }

 private:
  static RotationSymbol make(Kind k, long p, long q) {
    if (q < 1) throw ValidationError("RotationSymbol: q >= 1");
    if (gcd_long(p, q) != 1 && !(p == 0 && q == 1))
      throw ValidationError("RotationSymbol: gcd(p,q) = 1 required");
    RotationSymbol s;
    s.kind = k;
    s.p = p;
    s.q = q;
    return s;
  }
};

enum class Closure { periodic, clamped, free_segment };

struct Configuration {
  std::vector<double> x;
  Closure closure = Closure::free_segment;
  long p = 0;
  long q = 0;  // periodic closure: x.size() == q and x_{i+q} = x_i + p
  std::optional<RotationSymbol> symbol;
};

/// Action of consecutive pairs; periodic closure wraps with x_q = x_0 + p.
inline double segment_action(const GeneratingFunction& h, const Configuration& c) {
  if (c.closure == Closure::periodic) {
    if (static_cast<long>(c.x.size()) != c.q) throw ValidationError("periodic closure: length != q");
    double s = 0;
    for (long i = 0; i + 1 < c.q; ++i) s += h(c.x[i], c.x[i + 1]);
    s += h(c.x[c.q - 1], c.x[0] + c.p);
    return s;
  }
  if (c.x.size() < 2) throw ValidationError("segment_action: length >= 2");
  double s = 0;
  for (std::size_t i = 0; i + 1 < c.x.size(); ++i) s += h(c.x[i], c.x[i + 1]);
  return s;
}

/// Max |d1 h(x_i, x_{i+1}) + d2 h(x_{i-1}, x_i)| over interior points
/// (all points for periodic closure).
inline double stationarity_residual(const GeneratingFunction& h, const Configuration& c) {
  if (c.closure == Closure::periodic) {
    const long q = c.q;
    double r = 0;
    auto at = [&](long i) {
      long m = i % q;
      if (m < 0) m += q;
      return c.x[m] + c.p * static_cast<double>((i - m) / q);
    };
    for (long i = 0; i < q; ++i)
      r = std::max(r, std::abs(h.d1(at(i), at(i + 1)) + h.d2(at(i - 1), at(i))));
    return r;
  }
  return twistmap::stationarity_residual_segment(h, c.x);
}

// ---------------------------------------------------------------------------
// solver engine
// ---------------------------------------------------------------------------

namespace engine {

struct Options {
  int max_iter = 600;
  double tol = 1e-12;
  int gd_iters = 60;
};

inline double potential_curvature_bound(const GeneratingFunction& h) {
  double m = 0;
  for (int i = 0; i < 4096; ++i)
    m = std::max(m, std::abs(h.V.deriv(2, h.period() * i / 4096.0)));
  return 4.0 + m;
}

struct Box {
  std::vector<double> lo, hi;  // per variable; empty = unconstrained
  bool active() const { return !lo.empty(); }
};

inline void project(std::vector<double>& x, const Box& box) {
  if (!box.active()) return;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::min(std::max(x[i], box.lo[i]), box.hi[i]);
}

// Chain problem: variables x[0..L-1]; fixed[i] marks Dirichlet coordinates
// (at least the two ends for clamped problems).  Gradient of
// sum_{i=0}^{L-2} h(x_i, x_{i+1}) at interior i is
//   2 x_i - x_{i-1} - x_{i+1} + V'(x_i).
inline void chain_gradient(const GeneratingFunction& h, const std::vector<double>& x,
                           const std::vector<char>& fixed, std::vector<double>& g) {
  const std::size_t L = x.size();
  g.assign(L, 0.0);
  for (std::size_t i = 0; i < L; ++i) {
    if (fixed[i]) continue;
    double v = h.V.deriv(1, x[i]);
    if (i > 0) v += x[i] - x[i - 1];
    if (i + 1 < L) v += x[i] - x[i + 1];
    g[i] = v;
  }
}

// Projected-gradient stationarity measure: for free coordinates |g|, at an
// active bound only the infeasible-direction part counts.
inline double kkt_residual(const std::vector<double>& x, const std::vector<double>& g,
                           const std::vector<char>& fixed, const Box& box) {
  double r = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (fixed[i]) continue;
    double gi = g[i];
    if (box.active()) {
      if (x[i] <= box.lo[i] + 1e-14 && gi > 0) gi = 0;
      if (x[i] >= box.hi[i] - 1e-14 && gi < 0) gi = 0;
    }
    r = std::max(r, std::abs(gi));
  }
  return r;
}

inline double chain_action(const GeneratingFunction& h, const std::vector<double>& x) {
  double s = 0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) s += h(x[i], x[i + 1]);
  return s;
}

/// Minimize the chain action over non-fixed coordinates (optionally inside a
/// box).  Returns the final KKT residual; throws NonConvergence.
inline double solve_chain(const GeneratingFunction& h, std::vector<double>& x,
                          const std::vector<char>& fixed, const Box& box,
                          const Options& opt = {}) {
  const std::size_t L = x.size();
  std::vector<double> g, a(L), b(L), c(L), rhs(L);
  const double step = 1.0 / potential_curvature_bound(h);

  project(x, box);
  chain_gradient(h, x, fixed, g);
  for (int it = 0; it < opt.gd_iters; ++it) {
    if (kkt_residual(x, g, fixed, box) < 1e-6) break;
    for (std::size_t i = 0; i < L; ++i)
      if (!fixed[i]) x[i] -= step * g[i];
    project(x, box);
    chain_gradient(h, x, fixed, g);
  }

  double mu = 0.0;
  double res = kkt_residual(x, g, fixed, box);
  for (int it = 0; it < opt.max_iter; ++it) {
    if (res <= opt.tol) return res;
    // free set: not fixed, not pressed against an active bound
    std::vector<char> clamped(L, 0);
    for (std::size_t i = 0; i < L; ++i) {
      if (fixed[i]) {
        clamped[i] = 1;
        continue;
      }
      if (box.active()) {
        if (x[i] <= box.lo[i] + 1e-14 && g[i] > 0) clamped[i] = 1;
        if (x[i] >= box.hi[i] - 1e-14 && g[i] < 0) clamped[i] = 1;
      }
    }
    for (std::size_t i = 0; i < L; ++i) {
      a[i] = (i > 0) ? -1.0 : 0.0;
      c[i] = (i + 1 < L) ? -1.0 : 0.0;
      double diag = h.V.deriv(2, x[i]) + mu;
      if (i > 0) diag += 1.0;
      if (i + 1 < L) diag += 1.0;
      b[i] = diag;
      rhs[i] = -g[i];
    }
    for (std::size_t i = 0; i < L; ++i) {
      if (!clamped[i]) continue;
      a[i] = c[i] = 0.0;
      b[i] = 1.0;
      rhs[i] = 0.0;
      if (i > 0) c[i - 1] = 0.0;
      if (i + 1 < L) a[i + 1] = 0.0;
    }
    bool improved = false;
    std::vector<double> delta = solve_tridiagonal(a, b, c, rhs);
    double scale = 1.0;
    for (int bt = 0; bt < 10; ++bt) {
      std::vector<double> xn = x;
      for (std::size_t i = 0; i < L; ++i)
        if (!fixed[i]) xn[i] += scale * delta[i];
      project(xn, box);
      std::vector<double> gn;
      chain_gradient(h, xn, fixed, gn);
      const double rn = kkt_residual(xn, gn, fixed, box);
      if (rn < res || rn <= opt.tol) {
        x = std::move(xn);
        g = std::move(gn);
        res = rn;
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (improved) {
      mu *= 0.25;
      if (mu < 1e-14) mu = 0.0;
    } else {
      mu = (mu == 0.0) ? 1e-8 : mu * 16.0;
      if (mu > 1e8) throw NonConvergence(it, res);
    }
  }
  if (res <= 1e-10) return res;  // spec-level tolerance met even if not 1e-12
  throw NonConvergence(opt.max_iter, res);
}

// Periodic problem: variables x[0..q-1], wrap x_q = x_0 + p.
inline void periodic_gradient(const GeneratingFunction& h, const std::vector<double>& x, long p,
                              std::vector<double>& g) {
  const long q = static_cast<long>(x.size());
  g.assign(q, 0.0);
  auto at = [&](long i) {
    long m = i % q;
    if (m < 0) m += q;
    return x[m] + p * static_cast<double>((i - m) / q);
  };
  for (long i = 0; i < q; ++i) g[i] = 2.0 * x[i] - at(i - 1) - at(i + 1) + h.V.deriv(1, x[i]);
}

inline double solve_periodic(const GeneratingFunction& h, std::vector<double>& x, long p,
                             const Options& opt = {}) {
  const long q = static_cast<long>(x.size());
  std::vector<double> g;
  const double step = 1.0 / potential_curvature_bound(h);
  periodic_gradient(h, x, p, g);
  auto resid = [&] {
    double r = 0;
    for (double v : g) r = std::max(r, std::abs(v));
    return r;
  };
  for (int it = 0; it < opt.gd_iters; ++it) {
    if (resid() < 1e-6) break;
    for (long i = 0; i < q; ++i) x[i] -= step * g[i];
    periodic_gradient(h, x, p, g);
  }
  double mu = 0.0;
  double res = resid();
  std::vector<double> a(q), b(q), c(q), rhs(q);
  for (int it = 0; it < opt.max_iter; ++it) {
    if (res <= opt.tol) return res;
    for (long i = 0; i < q; ++i) {
      a[i] = -1.0;
      c[i] = -1.0;
      b[i] = 2.0 + h.V.deriv(2, x[i]) + mu;
      rhs[i] = -g[i];
    }
    std::vector<double> delta;
    bool solved = true;
    try {
      delta = solve_cyclic_tridiagonal(a, b, c, rhs);
      for (double v : delta) solved &= std::isfinite(v);
    } catch (...) {
      solved = false;
    }
    bool improved = false;
    if (solved) {
      double scale = 1.0;
      for (int bt = 0; bt < 10; ++bt) {
        std::vector<double> xn = x;
        for (long i = 0; i < q; ++i) xn[i] += scale * delta[i];
        std::vector<double> gn;
        periodic_gradient(h, xn, p, gn);
        double rn = 0;
        for (double v : gn) rn = std::max(rn, std::abs(v));
        if (rn < res || rn <= opt.tol) {
          x = std::move(xn);
          g = std::move(gn);
          res = rn;
          improved = true;
          break;
        }
        scale *= 0.5;
      }
    }
    if (improved) {
      mu *= 0.25;
      if (mu < 1e-14) mu = 0.0;
    } else {
      mu = (mu == 0.0) ? 1e-8 : mu * 16.0;
      if (mu > 1e8) throw NonConvergence(it, res);
    }
  }
  if (res <= 1e-10) return res;
  throw NonConvergence(opt.max_iter, res);
}

// smallest Hessian eigenvalue of the periodic minimizer (degeneracy probe)
inline double periodic_min_eigenvalue(const GeneratingFunction& h, const std::vector<double>& x) {
  const std::size_t q = x.size();
  std::vector<double> m(q * q, 0.0);
  for (std::size_t i = 0; i < q; ++i) {
    m[i * q + i] = 2.0 + h.V.deriv(2, x[i]);
    m[i * q + (i + 1) % q] += -1.0;
    m[((i + 1) % q) * q + i] += -1.0;
  }
  if (q == 1) m[0] = h.V.deriv(2, x[0]);  // wrap terms cancel the Laplacian
  return symmetric_min_eigenvalue(m, q);
}

}  // namespace engine

// ---------------------------------------------------------------------------
// minimal orbits
// ---------------------------------------------------------------------------

/// Minimal (p,q)-periodic configuration.  The default seed is the rotation
/// line through anchor_x0 (lexicographic determinism comes from the fixed
/// seed and the deterministic solve).
inline Configuration minimal_periodic_orbit(const GeneratingFunction& h, long p, long q,
                                            std::optional<Configuration> seed = std::nullopt,
                                            double anchor_x0 = 0.0) {
  if (q < 1) throw ValidationError("minimal_periodic_orbit: q >= 1");
  if (gcd_long(p, q) != 1 && !(p == 0 && q == 1))
    throw ValidationError("minimal_periodic_orbit: gcd(p,q) = 1");
  std::vector<double> x(q);
  if (seed) {
    if (static_cast<long>(seed->x.size()) != q) throw ValidationError("seed length != q");
    x = seed->x;
  } else {
    for (long i = 0; i < q; ++i)
      x[i] = anchor_x0 + static_cast<double>(p) * i / static_cast<double>(q);
  }
  engine::solve_periodic(h, x, p);
  Configuration c;
  c.x = std::move(x);
  c.closure = Closure::periodic;
  c.p = p;
  c.q = q;
  c.symbol = RotationSymbol::rational(p, q);
  return c;
}

namespace detail {

// lift value of the periodic orbit at arbitrary index
inline double orbit_at(const Configuration& o, long i) {
  long m = i % o.q;
  if (m < 0) m += o.q;
  return o.x[m] + o.p * static_cast<double>((i - m) / o.q);
}

// index shift (j0) and integer translate (m0) taking the orbit to its
// pointwise successor in the Aubry order: orbit_at(i + j0) + m0, the
// translate whose anchor is the next orbit point above x_0.
inline std::pair<long, long> successor_shift(const Configuration& o) {
  double best = 1e300;
  long bj = 0, bm = 1;
  for (long j = 0; j < o.q; ++j)
    for (long m = -std::abs(o.p) - 2; m <= std::abs(o.p) + 2; ++m) {
      const double v = orbit_at(o, j) + m;
      if (v > o.x[0] + 1e-9 && v < best) {
        best = v;
        bj = j;
        bm = m;
      }
    }
  return {bj, bm};
}

}  // namespace detail

enum class Side { plus, minus };

struct Heteroclinic {
  Configuration config;      // clamped chain, indices -W q .. +W q
  long i_lo = 0;             // lift index of config.x.front()
  double action_rel = 0;     // action relative to the lower asymptote
  long j0 = 0;               // successor shift of the upper asymptote
  long m0 = 0;
  Configuration orbit;       // the underlying periodic minimizer
  double lift_at(long i) const {  // lift value by global index
    return config.x[static_cast<std::size_t>(i - i_lo)];
  }
};

/// Minimal heteroclinic between neighboring translates of the (p,q)-minimal
/// orbit: asymptotic to the orbit on one end and to its Aubry successor on
/// the other (advancing for plus, retreating for minus).
inline Heteroclinic minimal_heteroclinic(const GeneratingFunction& h, long p, long q, Side side,
                                         long window) {
  if (window < 1) throw ValidationError("minimal_heteroclinic: window >= 1");
  Heteroclinic het;
  het.orbit = minimal_periodic_orbit(h, p, q);
  const double lam = engine::periodic_min_eigenvalue(h, het.orbit.x);
  if (lam < 1e-8)
    throw DegenerateProblem(
        "minimal_heteroclinic: periodic minimizer is degenerate (no isolated minimizers)");

  auto [j0, m0] = detail::successor_shift(het.orbit);
  het.j0 = j0;
  het.m0 = m0;
  auto lower = [&](long i) { return detail::orbit_at(het.orbit, i); };
  auto upper = [&](long i) { return detail::orbit_at(het.orbit, i + j0) + m0; };

  const long W = window * q;
  const long L = 2 * W + 1;
  std::vector<double> x(L);
  const double tau = std::max<double>(2.0, q);
  for (long i = -W; i <= W; ++i) {
    const double t = static_cast<double>(side == Side::plus ? i : -i) / tau;
    const double blend = 1.0 / (1.0 + std::exp(-t));
    x[i + W] = lower(i) + blend * (upper(i) - lower(i));
  }
  std::vector<char> fixed(L, 0);
  fixed[0] = 1;
  fixed[L - 1] = 1;
  x[0] = (side == Side::plus) ? lower(-W) : upper(-W);
  x[L - 1] = (side == Side::plus) ? upper(W) : lower(W);
  engine::solve_chain(h, x, fixed, engine::Box{});

  auto asym_lo_side = [&](long i) { return (side == Side::plus) ? lower(i) : upper(i); };
  auto asym_hi_side = [&](long i) { return (side == Side::plus) ? upper(i) : lower(i); };
  const double dev = std::max(std::abs(x[1] - asym_lo_side(-W + 1)),
                              std::abs(x[L - 2] - asym_hi_side(W - 1)));
  if (dev > 1e-8)
    throw WindowTooSmall("minimal_heteroclinic: clamp-point deviation " + std::to_string(dev));

  // strictly between the translates, ordered per the one-sided symbol
  for (long i = -W + 1; i < W; ++i) {
    const double lo = lower(i), hi = upper(i);
    if (x[i + W] < lo - 1e-9 || x[i + W] > hi + 1e-9)
      throw NonConvergence(0, std::abs(x[i + W]));
  }

  double rel = 0;
  for (long i = -W; i < W; ++i)
    rel += h(x[i + W], x[i + W + 1]) - h(lower(i), lower(i + 1));
  het.action_rel = rel;

  het.config.x = std::move(x);
  het.config.closure = Closure::clamped;
  het.config.p = p;
  het.config.q = q;
  het.config.symbol =
      (side == Side::plus) ? RotationSymbol::rational_plus(p, q) : RotationSymbol::rational_minus(p, q);
  het.i_lo = -W;
  return het;
}

// ---------------------------------------------------------------------------
// Peierls barrier
// ---------------------------------------------------------------------------

namespace detail {

// two-sided rational barrier: pinned constrained periodic problem minus the
// free minimal period action
inline double barrier_rational(const GeneratingFunction& h, long p, long q, double xi) {
  Configuration orbit = minimal_periodic_orbit(h, p, q);
  const double a_min = segment_action(h, orbit);

  // translate anchors bracketing xi
  double lo = -1e300, hi = 1e300;
  long lo_j = 0, lo_m = 0, hi_j = 0, hi_m = 0;
  for (long j = 0; j < q; ++j) {
    const double base = orbit_at(orbit, j);
    const double mlow = std::floor(xi - base);
    for (long dm = 0; dm <= 1; ++dm) {
      const double v = base + mlow + dm;
      if (v <= xi && v > lo) {
        lo = v;
        lo_j = j;
        lo_m = static_cast<long>(mlow) + dm;
      }
      if (v >= xi && v < hi) {
        hi = v;
        hi_j = j;
        hi_m = static_cast<long>(mlow) + dm;
      }
    }
  }
  if (xi - lo < 1e-9 || hi - xi < 1e-9) return 0.0;  // xi in the projected minimal set

  // chain of length q+1 with both ends pinned at xi, xi + p
  std::vector<double> x(q + 1);
  engine::Box box;
  box.lo.resize(q + 1);
  box.hi.resize(q + 1);
  for (long i = 0; i <= q; ++i) {
    box.lo[i] = orbit_at(orbit, i + lo_j) + lo_m;
    box.hi[i] = orbit_at(orbit, i + hi_j) + hi_m;
    x[i] = xi + (box.lo[i] - lo) * 0.5 + (box.hi[i] - hi) * 0.5;  // stay inside the box
  }
  std::vector<char> fixed(q + 1, 0);
  fixed[0] = 1;
  fixed[q] = 1;
  x[0] = xi;
  x[q] = xi + p;
  engine::solve_chain(h, x, fixed, box);
  double act = 0;
  for (long i = 0; i < q; ++i) act += h(x[i], x[i + 1]);
  return act - a_min;
}

// one-sided barrier at a fixed heteroclinic window
inline double barrier_one_sided_at_window(const GeneratingFunction& h, long p, long q, Side side,
                                          double xi, long window) {
  Heteroclinic het = minimal_heteroclinic(h, p, q, side, window);
  const long W = window * q;
  const long w_in = W / 2;

  // bracket xi among index-shift/translate anchors H_j + m (total Aubry order)
  long jm = 0, jp = 0;
  double dlo = 1e300, dhi = 1e300;
  long mlo = 0, mhi = 0;
  for (long j = -W + w_in + 2; j <= W - w_in - 2; ++j) {
    const double v = het.lift_at(j);
    const double up = wrap_positive(v - xi, 1.0);     // distance up to this anchor's translate
    const double down = wrap_positive(xi - v, 1.0);   // distance down
    if (down < dlo) {
      dlo = down;
      jm = j;
      mlo = static_cast<long>(std::llround((xi - down) - v));
    }
    if (up < dhi) {
      dhi = up;
      jp = j;
      mhi = static_cast<long>(std::llround((xi + up) - v));
    }
  }
  if (dlo < 1e-9 || dhi < 1e-9) return 0.0;  // xi lies in the projected minimal set

  // box between the bracketing shifts; outside the window both collapse
  const long lo_i = -w_in, hi_i = w_in;
  const long L = hi_i - lo_i + 1;
  std::vector<double> x(L + 2);
  engine::Box box;
  box.lo.resize(L + 2);
  box.hi.resize(L + 2);
  std::vector<char> fixed(L + 2, 0);
  auto lower_cfg = [&](long i) { return het.lift_at(i + jm) + mlo; };
  auto upper_cfg = [&](long i) { return het.lift_at(i + jp) + mhi; };
  for (long i = lo_i - 1; i <= hi_i + 1; ++i) {
    const std::size_t k = static_cast<std::size_t>(i - (lo_i - 1));
    box.lo[k] = std::min(lower_cfg(i), upper_cfg(i));
    box.hi[k] = std::max(lower_cfg(i), upper_cfg(i));
    x[k] = 0.5 * (box.lo[k] + box.hi[k]);
  }
  fixed[0] = 1;
  fixed[L + 1] = 1;
  x[0] = lower_cfg(lo_i - 1);
  x[L + 1] = lower_cfg(hi_i + 1);
  const std::size_t pin = static_cast<std::size_t>(0 - (lo_i - 1));
  fixed[pin] = 1;
  x[pin] = xi;
  engine::solve_chain(h, x, fixed, box);

  double val = 0;
  for (long i = lo_i - 1; i <= hi_i; ++i) {
    const std::size_t k = static_cast<std::size_t>(i - (lo_i - 1));
    val += h(x[k], x[k + 1]) - h(lower_cfg(i), lower_cfg(i + 1));
  }
  return val;
}

inline double barrier_one_sided(const GeneratingFunction& h, long p, long q, Side side, double xi,
                                long window) {
  // degenerate potentials: fall back on the two-sided value when it vanishes
  Configuration orbit = minimal_periodic_orbit(h, p, q);
  if (engine::periodic_min_eigenvalue(h, orbit.x) < 1e-8) {
    const double two_sided = barrier_rational(h, p, q, xi);
    if (two_sided < 1e-10) return 0.0;
    throw DegenerateProblem("peierls_barrier: degenerate minimizer with nonzero barrier");
  }
  long w = std::max<long>(window, (50 + q - 1) / q);  // w*q >= 50 steps per side
  double prev = barrier_one_sided_at_window(h, p, q, side, xi, w);
  for (int doublings = 0; doublings < 5; ++doublings) {
    const double next = barrier_one_sided_at_window(h, p, q, side, xi, 2 * w);
    if (std::abs(next - prev) < 1e-8) return next;
    prev = next;
    w *= 2;
  }
  throw NonConvergence(5, std::abs(prev));
}

}  // namespace detail

struct IrrationalBarrier {
  double value = 0;
  bool stabilized = false;
  std::vector<std::pair<long, long>> convergents_used;
  std::vector<double> values;  // one per convergent
};

/// Barrier for an irrational symbol through one-sided rational convergents
/// (side facing omega), with geometric stabilization of the tail.
inline IrrationalBarrier barrier_irrational(const GeneratingFunction& h, double omega, double xi,
                                            long window, long q_cap = 64, double stab_tol = 1e-9) {
  auto cs = rotation::convergents(omega, 24);
  IrrationalBarrier out;
  for (auto [p, q] : cs.pairs) {
    if (q > q_cap) break;
    if (q < 2 && out.values.empty() && cs.pairs.size() > 2) continue;  // skip the crude q=1 seeds
    const double pq = static_cast<double>(p) / static_cast<double>(q);
    if (std::abs(pq - omega) < 1e-15) break;
    const Side side = (pq < omega) ? Side::plus : Side::minus;
    out.convergents_used.push_back({p, q});
    out.values.push_back(detail::barrier_one_sided(h, p, q, side, xi, window));
    const std::size_t n = out.values.size();
    if (n >= 2 && std::abs(out.values[n - 1] - out.values[n - 2]) < stab_tol) {
      out.stabilized = true;
      out.value = out.values[n - 1];
      return out;
    }
  }
  if (out.values.empty()) throw UnresolvedGap("barrier_irrational: no usable convergents");
  const std::size_t n = out.values.size();
  if (n >= 3) {
    const double d1 = out.values[n - 1] - out.values[n - 2];
    const double d0 = out.values[n - 2] - out.values[n - 3];
    const double r = (d0 != 0) ? d1 / d0 : 0.0;
    if (std::abs(r) < 0.8) {
      out.value = out.values[n - 1] + d1 * r / (1.0 - r);
      out.stabilized = true;
      return out;
    }
  }
  out.value = out.values[n - 1];
  return out;
}

namespace detail {

// potentials with period != 1 are normalized onto the unit circle
inline GeneratingFunction unit_problem(const GeneratingFunction& h) {
  if (h.period() == 1.0) return h;
  return GeneratingFunction{twistmap::rescaled_potential(h.V, h.period())};
}

}  // namespace detail

/// Peierls barrier P_sigma(xi).  xi is a fraction of the circle; values are
/// in unit-period normalized action units when h.period() != 1.
inline double peierls_barrier(const GeneratingFunction& h_in, const RotationSymbol& s, double xi,
                              long window = 4) {
  const GeneratingFunction h = detail::unit_problem(h_in);
  switch (s.kind) {
    case RotationSymbol::Kind::rational:
      return detail::barrier_rational(h, s.p, s.q, xi);
    case RotationSymbol::Kind::rational_plus:
      return detail::barrier_one_sided(h, s.p, s.q, Side::plus, xi, window);
    case RotationSymbol::Kind::rational_minus:
      return detail::barrier_one_sided(h, s.p, s.q, Side::minus, xi, window);
    case RotationSymbol::Kind::irrational:
      return barrier_irrational(h, s.omega, xi, window).value;
  }
  throw Error("unreachable");
}

struct BarrierProfile {
  RotationSymbol symbol;
  std::vector<double> xi_grid;
  std::vector<double> values;
  long truncation_window = 0;
  double tolerance = 1e-8;
};

/// Barrier sampled on a uniform xi grid; independent xi values evaluate
/// concurrently (deterministic per point).
inline BarrierProfile barrier_profile(const GeneratingFunction& h, const RotationSymbol& s,
                                      int grid_size, long window = 4, int workers = 0) {
  if (grid_size < 1) throw ValidationError("barrier_profile: grid_size >= 1");
  if (workers <= 0)
    workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  BarrierProfile prof;
  prof.symbol = s;
  prof.truncation_window = window;
  prof.xi_grid.resize(grid_size);
  prof.values.assign(grid_size, 0.0);
  for (int i = 0; i < grid_size; ++i) prof.xi_grid[i] = static_cast<double>(i) / grid_size;

  std::vector<std::future<void>> futs;
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= grid_size) return;
      prof.values[i] = peierls_barrier(h, s, prof.xi_grid[i], window);
    }
  };
  for (int t = 0; t < workers; ++t) futs.push_back(std::async(std::launch::async, worker));
  for (auto& f : futs) f.get();
  return prof;
}

struct CircleTestVerdict {
  bool destroyed = false;
  double sup_barrier = 0;
  double witness_xi = 0;
  double witness_value = 0;
  double threshold = 0;
  std::vector<double> xi_grid;
  std::vector<double> values;
};

/// Mather-criterion test: the barrier of the irrational symbol (through
/// convergents) sampled on a xi grid.  Any value above the threshold
/// witnesses destruction; staying below is compatible with existence but
/// proves nothing (one-sided test).
inline CircleTestVerdict invariant_circle_test(const GeneratingFunction& h_in, double omega,
                                               int xi_grid_size, double threshold,
                                               long window = 4, long q_cap = 64, int workers = 0) {
  const GeneratingFunction h = detail::unit_problem(h_in);
  RotationSymbol::irrational(omega);  // validates
  if (workers <= 0)
    workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  CircleTestVerdict v;
  v.threshold = threshold;
  v.xi_grid.resize(xi_grid_size);
  v.values.assign(xi_grid_size, 0.0);
  for (int i = 0; i < xi_grid_size; ++i) v.xi_grid[i] = static_cast<double>(i) / xi_grid_size;

  std::vector<std::future<void>> futs;
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= xi_grid_size) return;
      v.values[i] = barrier_irrational(h, omega, v.xi_grid[i], window, q_cap).value;
    }
  };
  for (int t = 0; t < workers; ++t) futs.push_back(std::async(std::launch::async, worker));
  for (auto& f : futs) f.get();

  for (int i = 0; i < xi_grid_size; ++i) {
    if (v.values[i] > v.sup_barrier) {
      v.sup_barrier = v.values[i];
      v.witness_xi = v.xi_grid[i];
      v.witness_value = v.values[i];
    }
  }
  v.destroyed = v.sup_barrier > threshold;
  return v;
}

struct CensusResult {
  long count = 0;
  double min_gap = 0;
};

/// Entries of a monotone configuration in [lo, hi) and the smallest
/// consecutive gap among them.
inline CensusResult configuration_census(const Configuration& c, double lo, double hi) {
  for (std::size_t i = 0; i + 1 < c.x.size(); ++i)
    if (c.x[i + 1] <= c.x[i]) throw ValidationError("configuration_census: configuration not monotone");
  CensusResult r;
  double prev = 0;
  bool have_prev = false;
  r.min_gap = std::numeric_limits<double>::infinity();
  for (double v : c.x) {
    if (v >= lo && v < hi) {
      ++r.count;
      if (have_prev) r.min_gap = std::min(r.min_gap, v - prev);
      prev = v;
      have_prev = true;
    }
  }
  if (r.count < 2) r.min_gap = 0;
  return r;
}

}  // namespace ckam::aubry

#endif  // CKAM_AUBRY_HPP
