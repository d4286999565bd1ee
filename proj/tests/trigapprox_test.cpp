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

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "ckam/trigapprox.hpp"
#include "oracles.hpp"

using namespace ckam;
using namespace ckam::trigapprox;

namespace {

TrigPolyND random_poly(std::mt19937& rng, const std::vector<int>& degrees) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TrigPolyND p(degrees);
  p.for_each([&](const std::vector<int>& k, std::size_t) {
    bool lead = false, zero = true;
    for (int kj : k) {
      if (kj > 0) { lead = true; zero = false; break; }
      if (kj < 0) { zero = false; break; }
    }
    if (zero) {
      p.set_coeff(k, u(rng));
    } else if (lead) {
      cplx c(u(rng), u(rng));
      p.set_coeff(k, c);
      std::vector<int> nk(k.size());
      for (std::size_t j = 0; j < k.size(); ++j) nk[j] = -k[j];
      p.set_coeff(nk, std::conj(c));
    }
  });
  return p;
}

double dense_sup_diff(const TrigPolyND& a, const TrigPolyND& b, int oversample = 8) {
  std::vector<int> shape(a.dim());
  for (int j = 0; j < a.dim(); ++j) {
    const int need = std::max(2 * a.degrees()[j] + 1, 2 * b.degrees()[j] + 1);
    shape[j] = static_cast<int>(next_pow2(std::max(32, oversample * need)));
  }
  auto va = a.sample(shape);
  auto vb = b.sample(shape);
  double m = 0;
  for (std::size_t i = 0; i < va.size(); ++i) m = std::max(m, std::abs(va[i] - vb[i]));
  return m;
}

}  // namespace

TEST_CASE("fejer: constants are reproduced (unit kernel mass)") {
  auto g = sample_callable([](const std::vector<double>&) { return 3.25; }, {64});
  auto p = fejer(g, 8, 0);
  CHECK(p.mean().real() == Catch::Approx(3.25).margin(1e-12));
  CHECK(dense_sup_diff(p, TrigPolyND({0})* 0.0 + [] {
          TrigPolyND c({0});
          c.set_mean(3.25);
          return c;
        }()) < 1e-12);
}

TEST_CASE("fejer: cos(kx) picks up the Cesaro factor, matches the kernel quadrature") {
  const int m = 8;
  for (int k : {1, 3, 5, 7}) {
    auto f = [k](const std::vector<double>& x) { return std::cos(k * x[0]); };
    auto p = fejer(sample_callable(f, {256}), m, 0);
    // coefficient check: (1 - k/m)/2 at +-k
    CHECK(p.coeff({k}).real() == Catch::Approx((1.0 - double(k) / m) / 2).margin(1e-12));
    CHECK(std::abs(p.coeff({k}).imag()) < 1e-12);
    // direct quadrature of the Fejer kernel integral at sample points
    for (double x : {0.0, 0.7, 2.1, 4.4}) {
      const double via_kernel = oracles::fejer_kernel_apply([&](double t) { return std::cos(k * t); }, m, x);
      CHECK(p.eval({x}) == Catch::Approx(via_kernel).margin(1e-10));
    }
  }
}

TEST_CASE("fejer: norm bound on random polynomials") {
  std::mt19937 rng(777);
  for (int rep = 0; rep < 50; ++rep) {
    auto f = random_poly(rng, {10});
    const int m = 1 + static_cast<int>(rng() % 16);
    auto Ff = fejer(f, m, 0);
    CHECK(Ff.sup_norm() <= f.sup_norm() + 1e-10);
  }
}

TEST_CASE("fejer: positive inputs stay positive") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    auto base = random_poly(rng, {6});
    const double lift = base.sup_norm() + 0.01;
    TrigPolyND f = base;
    f.set_mean(f.mean() + lift);  // now f >= 0.01
    auto Ff = fejer(f, 5, 0);
    auto vals = Ff.sample({512});
    for (double v : vals) CHECK(v >= -1e-10);
  }
}

TEST_CASE("vallee_poussin: reproduction of degree <= m polynomials") {
  std::mt19937 rng(31337);
  for (int rep = 0; rep < 20; ++rep) {
    const int m = 4 + static_cast<int>(rng() % 12);
    auto f = random_poly(rng, {m});
    auto Pf = vallee_poussin_nd(f, {m});
    CHECK(dense_sup_diff(f, Pf) < 1e-12);
  }
  // weight algebra: 2(1-k/2m) - (1-k/m) = 1 for k <= m
  for (int m : {4, 9, 16})
    for (int k = 0; k <= m; ++k)
      CHECK(vallee_poussin_weight(k, m) == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("vallee_poussin: linearity and the 3||f|| bound") {
  std::mt19937 rng(999);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int rep = 0; rep < 10; ++rep) {
    auto f = random_poly(rng, {14});
    auto g = random_poly(rng, {14});
    const double a = u(rng), b = u(rng);
    const int m = 4;
    auto lhs = vallee_poussin_nd(f * a + g * b, {m});
    auto rhs = vallee_poussin_nd(f, {m}) * a + vallee_poussin_nd(g, {m}) * b;
    CHECK(dense_sup_diff(lhs, rhs) < 1e-12);
    CHECK(vallee_poussin_nd(f, {m}).sup_norm() <= 3.0 * f.sup_norm() + 1e-10);
  }
}

TEST_CASE("vallee_poussin: axes commute and degrees obey 2m-1") {
  std::mt19937 rng(2024);
  auto f = random_poly(rng, {9, 9});
  const int m0 = 3, m1 = 5;
  auto ab = vallee_poussin_axis(vallee_poussin_axis(f, m0, 0), m1, 1);
  auto ba = vallee_poussin_axis(vallee_poussin_axis(f, m1, 1), m0, 0);
  CHECK(dense_sup_diff(ab, ba) < 1e-12);
  CHECK(ab.degrees()[0] <= 2 * m0 - 1);
  CHECK(ab.degrees()[1] <= 2 * m1 - 1);
}

TEST_CASE("grid preconditions") {
  auto g = sample_callable([](const std::vector<double>& x) { return std::cos(x[0]); }, {32});
  CHECK_THROWS_AS(fejer(g, 8, 0), GridTooCoarse);  // needs >= 64 samples
}

TEST_CASE("jackson_report: trig polynomials reproduce to 1e-12") {
  std::mt19937 rng(5150);
  auto f = random_poly(rng, {6});
  auto rep = jackson_report([&](const std::vector<double>& x) { return f.eval(x); },
                            {8}, {4});
  CHECK(rep.achieved_error < 1e-12);
}

TEST_CASE("jackson_report: exp(cos x) error is superpolynomial") {
  // entire function: the error reaches the roundoff floor by m ~ 12, so the
  // convex-decay window is m in {2,4,8}
  auto f = [](const std::vector<double>& x) { return std::exp(std::cos(x[0])); };
  std::vector<double> logm, logerr;
  for (int m : {2, 4, 8}) {
    auto rep = jackson_report(f, {m}, {4});
    logm.push_back(std::log(m));
    logerr.push_back(std::log(std::max(rep.achieved_error, 1e-300)));
  }
  for (std::size_t i = 1; i < logm.size(); ++i) CHECK(logerr[i] < logerr[i - 1]);
  const double s01 = (logerr[1] - logerr[0]) / (logm[1] - logm[0]);
  const double s12 = (logerr[2] - logerr[1]) / (logm[2] - logm[1]);
  CHECK(s12 < s01);  // convex decreasing: no fixed power fits
  CHECK(s12 < -7.0);
  auto deep = jackson_report(f, {16}, {4});
  CHECK(deep.achieved_error < 1e-12);
}

TEST_CASE("jackson_report: 2-d tensor function obeys the per-axis bound") {
  auto f = [](const std::vector<double>& x) {
    return std::exp(std::cos(x[0])) * std::exp(std::cos(x[1]));
  };
  const int r = 4;
  for (std::vector<int> m : {std::vector<int>{8, 8}, std::vector<int>{16, 8}}) {
    auto rep = jackson_report(f, m, {r, r});
    REQUIRE(rep.bound_terms.size() == 2);
    CHECK(rep.achieved_error <= 10.0 * rep.bound_sum);  // fitted C2 stays small
    CHECK(rep.fitted_constant <= 10.0);
  }
}
