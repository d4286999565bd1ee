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
// Rotation-number arithmetic: continued-fraction convergents, Dirichlet
// resonance vectors, small orthogonal integer frames, and the q^{-2} P(q x)
// rescaling together with its configuration transport.

#ifndef CKAM_ROTATION_HPP
#define CKAM_ROTATION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ckam/common.hpp"
#include "ckam/twistmap.hpp"

namespace ckam::rotation {

struct ConvergentSequence {
  double omega = 0;
  std::vector<std::pair<long, long>> pairs;  // (p, q), q strictly increasing
  bool terminated = false;                   // omega rational at working precision
};

/// Continued-fraction convergents p_k/q_k of omega.  Every pair satisfies the
/// Dirichlet inequality |q w - p| < 1/q.  Terminates early (flag set) when the
/// remainder vanishes at working precision.
inline ConvergentSequence convergents(double omega, int count) {
  if (count < 1) throw ValidationError("convergents: count >= 1");
  ConvergentSequence s;
  s.omega = omega;
  long p_prev = 1, q_prev = 0;  // p_{-1}/q_{-1}
  long p_cur = 0, q_cur = 1;
  double x = omega;
  double a0 = std::floor(x);
  p_cur = static_cast<long>(a0);
  s.pairs.push_back({p_cur, 1});
  double frac = x - a0;
  for (int k = 1; k < count; ++k) {
    if (frac < 1e-12) {
      s.terminated = true;
      break;
    }
    x = 1.0 / frac;
    const double ak = std::floor(x);
    if (ak > 1e15) {
      s.terminated = true;
      break;
    }
    frac = x - ak;
    const long a = static_cast<long>(ak);
    const long p_next = a * p_cur + p_prev;
    const long q_next = a * q_cur + q_prev;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    s.pairs.push_back({p_cur, q_cur});
    if (std::abs(q_cur * omega - p_cur) < 1e-15 * std::max(1.0, std::abs(omega) * q_cur)) {
      s.terminated = true;
      break;
    }
  }
  return s;
}

/// |q w - p| <= threshold for some q <= qmax means "rational at precision".
inline bool is_rational_at_precision(double omega, double threshold = 1e-9, long qmax = 10000) {
  auto cs = convergents(omega, 64);
  for (auto [p, q] : cs.pairs)
    if (q <= qmax && std::abs(q * omega - p) <= threshold) return true;
  return false;
}

struct ResonanceFrame {
  int d = 2;
  std::vector<long> k;
  std::vector<long> k_prime;
  std::vector<std::vector<long>> l_rows;  // d-2 rows
  std::vector<double> omega;              // optional context
  double omega_dot_k = 0;                 // |<w,k>| when omega present

  std::vector<std::vector<long>> rows() const {
    std::vector<std::vector<long>> r{k, k_prime};
    for (const auto& l : l_rows) r.push_back(l);
    return r;
  }
};

struct ResonanceSeed {
  std::vector<long> k;
  double inner = 0;      // |<w,k>|
  double constant = 0;   // |<w,k>| * |k|^{d-1}
};

inline double vec_norm(const std::vector<long>& k) {
  double s = 0;
  for (long v : k) s += static_cast<double>(v) * v;
  return std::sqrt(s);
}

inline long dot_int(const std::vector<long>& a, const std::vector<long>& b) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Exhaustive search over the integer ball |k|_2 <= max_norm for the k
/// minimizing |<w,k>| |k|^{d-1}.  Ties break to smaller |k|, then to the
/// lexicographically greater vector; +-k duplicates are collapsed by
/// requiring the first nonzero entry positive.
inline ResonanceSeed resonance_vector(const std::vector<double>& omega, long max_norm) {
  const int d = static_cast<int>(omega.size());
  if (d < 2) throw ValidationError("resonance_vector: d >= 2");
  double wnorm = 0;
  for (double w : omega) wnorm += w * w;
  if (wnorm == 0) throw ValidationError("resonance_vector: omega must be nonzero");

  ResonanceSeed best;
  bool have = false;
  std::vector<long> k(d, 0);
  const double r2 = static_cast<double>(max_norm) * max_norm;

  std::function<void(int, double)> rec = [&](int j, double partial2) {
    if (j == d) {
      bool all_zero = true;
      for (long v : k) all_zero &= (v == 0);
      if (all_zero) return;
      // canonical sign: first nonzero entry positive
      for (long v : k) {
        if (v > 0) break;
        if (v < 0) return;
      }
      double inner = 0;
      for (int i = 0; i < d; ++i) inner += omega[i] * k[i];
      inner = std::abs(inner);
      const double nk = std::sqrt(partial2);
      const double c = inner * std::pow(nk, d - 1);
      auto better = [&]() {
        if (!have) return true;
        if (c < best.constant * (1.0 - 1e-15) - 1e-300) return true;
        if (c > best.constant * (1.0 + 1e-15) + 1e-300) return false;
        const double nb = vec_norm(best.k);
        if (nk < nb - 1e-12) return true;
        if (nk > nb + 1e-12) return false;
        return k > best.k;
      };
      if (better()) {
        best = {k, inner, c};
        have = true;
      }
      return;
    }
    const long lim = static_cast<long>(std::floor(std::sqrt(std::max(0.0, r2 - partial2))));
    for (long v = -lim; v <= lim; ++v) {
      k[j] = v;
      rec(j + 1, partial2 + static_cast<double>(v) * v);
    }
    k[j] = 0;
  };
  rec(0, 0.0);
  return best;
}

/// Pairwise-orthogonal integer frame through k.  d = 2 rotates k; d = 3 finds
/// a shortest integer vector orthogonal to k by exhaustive search and closes
/// the frame with the cross product.  Larger d is unsupported at desk scale.
inline ResonanceFrame orthogonal_frame(const std::vector<long>& k) {
  const int d = static_cast<int>(k.size());
  bool nonzero = false;
  for (long v : k) nonzero |= (v != 0);
  if (!nonzero) throw ValidationError("orthogonal_frame: k must be nonzero");

  ResonanceFrame f;
  f.d = d;
  f.k = k;
  if (d == 2) {
    f.k_prime = {-k[1], k[0]};
    return f;
  }
  if (d != 3) throw Unsupported("orthogonal_frame: only d in {2,3} supported");

  const long R = static_cast<long>(std::ceil(4.0 * vec_norm(k)));
  std::vector<long> bestv;
  double bestn = 0;
  std::vector<long> c(3);
  for (long x = -R; x <= R; ++x)
    for (long y = -R; y <= R; ++y)
      for (long z = -R; z <= R; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        c = {x, y, z};
        if (dot_int(c, k) != 0) continue;
        // canonical sign
        bool neg = false;
        for (long v : c) {
          if (v > 0) break;
          if (v < 0) {
            neg = true;
            break;
          }
        }
        if (neg) continue;
        const double n = vec_norm(c);
        if (bestv.empty() || n < bestn - 1e-12 || (std::abs(n - bestn) <= 1e-12 && c > bestv)) {
          bestv = c;
          bestn = n;
        }
      }
  if (bestv.empty()) throw Error("orthogonal_frame: no orthogonal vector found");
  f.k_prime = bestv;
  f.l_rows = {{k[1] * bestv[2] - k[2] * bestv[1], k[2] * bestv[0] - k[0] * bestv[2],
               k[0] * bestv[1] - k[1] * bestv[0]}};
  return f;
}

/// Lemma-Herm rescaling Q(x) = q^{-2} P(q x) for integer q, kept on the
/// ambient circle (the declared period does not change).
inline twistmap::PeriodicPotential rescale_problem(const twistmap::PeriodicPotential& P, long q) {
  if (q < 1) throw ValidationError("rescale_problem: q >= 1");
  twistmap::PeriodicPotential out = twistmap::rescaled_potential(P, static_cast<double>(q));
  out.period = P.period;  // Q is also P.period-periodic since q is integral
  out.family = "herm-rescaled(" + P.family + ")";
  return out;
}

/// Companion configuration map y_i = q x_i between h0+Q and h0+P problems.
inline std::vector<double> transport_configuration(const std::vector<double>& x, long q) {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = q * x[i];
  return y;
}

}  // namespace ckam::rotation

#endif  // CKAM_ROTATION_HPP
