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

#ifndef CKAM_COMMON_HPP
#define CKAM_COMMON_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckam {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergence : Error {
  int iterations;
  double residual;
  NonConvergence(int it, double r)
      : Error("solver failed to converge: residual " + std::to_string(r) +
              " after " + std::to_string(it) + " iterations"),
        iterations(it), residual(r) {}
};

struct WindowTooSmall : Error {
  using Error::Error;
};
struct UnresolvedGap : Error {
  using Error::Error;
};
struct DegenerateProblem : Error {
  using Error::Error;
};
struct SupportTooWide : Error {
  using Error::Error;
};
struct DegreeOverflow : Error {
  using Error::Error;
};
struct GridTooCoarse : Error {
  using Error::Error;
};
struct BallDoesNotFit : Error {
  using Error::Error;
};
struct NonzeroMean : Error {
  using Error::Error;
};
struct NotMonotone : Error {
  using Error::Error;
};
struct Unsupported : Error {
  using Error::Error;
};
struct QuadratureFailure : Error {
  using Error::Error;
};
struct OutOfBracket : Error {
  using Error::Error;
};
struct LiftOverflow : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};

// Least-squares line y = slope*x + intercept.
struct LineFit {
  double slope = 0;
  double intercept = 0;
  double max_residual = 0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw ValidationError("fit_line: need >= 2 matched points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  LineFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  for (std::size_t i = 0; i < n; ++i)
    f.max_residual = std::max(f.max_residual, std::abs(y[i] - f.slope * x[i] - f.intercept));
  return f;
}

// Solves tridiagonal A x = d with diagonals (lower a, main b, upper c).
// a[0] and c[n-1] are ignored.  Thomas algorithm, no pivoting: callers
// supply diagonally dominant or SPD systems.
inline std::vector<double> solve_tridiagonal(std::vector<double> a, std::vector<double> b,
                                             std::vector<double> c, std::vector<double> d) {
  const std::size_t n = b.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = d[n - 1] / b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (d[i] - c[i] * x[i + 1]) / b[i];
  return x;
}

// Cyclic tridiagonal solve (wrap entries: a[0] couples x[0] to x[n-1],
// c[n-1] couples x[n-1] to x[0]) by Sherman-Morrison.  n == 1 and n == 2
// collapse to dense systems because the wrap and interior entries alias.
inline std::vector<double> solve_cyclic_tridiagonal(const std::vector<double>& a,
                                                    const std::vector<double>& b,
                                                    const std::vector<double>& c,
                                                    const std::vector<double>& d) {
  const std::size_t n = b.size();
  if (n == 1) return {d[0] / (b[0] + a[0] + c[0])};
  if (n == 2) {
    const double a00 = b[0], a01 = c[0] + a[0];
    const double a10 = a[1] + c[1], a11 = b[1];
    const double det = a00 * a11 - a01 * a10;
    return {(d[0] * a11 - a01 * d[1]) / det, (a00 * d[1] - d[0] * a10) / det};
  }
  const double alpha = c[n - 1], beta = a[0];
  const double gamma = -b[0];
  std::vector<double> bb = b;
  bb[0] -= gamma;
  bb[n - 1] -= alpha * beta / gamma;
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = alpha;
  std::vector<double> x = solve_tridiagonal(a, bb, c, d);
  std::vector<double> z = solve_tridiagonal(a, bb, c, u);
  const double fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
  for (std::size_t i = 0; i < n; ++i) x[i] -= fact * z[i];
  return x;
}

// Smallest eigenvalue of a small dense symmetric matrix (row-major n*n),
// cyclic Jacobi sweeps.  Used for minimizer nondegeneracy checks only.
inline double symmetric_min_eigenvalue(std::vector<double> m, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return m[i * n + j]; };
  if (n == 1) return m[0];
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-24) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(at(p, q)) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0), sn = t * cs;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = at(k, p), mkq = at(k, q);
          at(k, p) = cs * mkp - sn * mkq;
          at(k, q) = sn * mkp + cs * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = at(p, k), mqk = at(q, k);
          at(p, k) = cs * mpk - sn * mqk;
          at(q, k) = sn * mpk + cs * mqk;
        }
      }
  }
  double lo = at(0, 0);
  for (std::size_t i = 1; i < n; ++i) lo = std::min(lo, at(i, i));
  return lo;
}

inline long gcd_long(long a, long b) {
  a = std::abs(a);
  b = std::abs(b);
  while (b) {
    const long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// x reduced to [0, m).
inline double wrap_positive(double x, double m) {
  double r = std::fmod(x, m);
  if (r < 0) r += m;
  return r;
}

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace ckam

#endif  // CKAM_COMMON_HPP
