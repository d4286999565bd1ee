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

#include "ckam/aubry.hpp"
#include "ckam/perturb.hpp"
#include "ckam/rotation.hpp"
#include "oracles.hpp"

using namespace ckam;

TEST_CASE("convergents: rational input terminates") {
  auto s = rotation::convergents(0.5, 16);
  REQUIRE_FALSE(s.pairs.empty());
  CHECK(s.pairs.back().first == 1);
  CHECK(s.pairs.back().second == 2);
  CHECK(s.terminated);
}

TEST_CASE("convergents: golden mean gives Fibonacci pairs") {
  const double w = (std::sqrt(5.0) - 1.0) / 2.0;
  auto s = rotation::convergents(w, 10);
  const std::vector<std::pair<long, long>> fib = {{0, 1}, {1, 1}, {1, 2}, {2, 3}, {3, 5},
                                                  {5, 8}, {8, 13}, {13, 21}, {21, 34}, {34, 55}};
  REQUIRE(s.pairs.size() == fib.size());
  for (std::size_t i = 0; i < fib.size(); ++i) {
    CHECK(s.pairs[i] == fib[i]);
    const auto [p, q] = s.pairs[i];
    CHECK(std::abs(q * w - p) < 1.0 / q);
  }
  // best-approximation sanity check (second kind) for q >= 2
  for (auto [p, q] : s.pairs) {
    if (q < 2) continue;
    long best_p = std::lround(q * w);
    CHECK(std::abs(q * w - p) <= std::abs(q * w - best_p) + 1e-15);
  }
}

TEST_CASE("convergents: pi - 3") {
  auto s = rotation::convergents(pi - 3.0, 4);
  const std::vector<std::pair<long, long>> expect = {{0, 1}, {1, 7}, {15, 106}, {16, 113}};
  REQUIRE(s.pairs.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(s.pairs[i] == expect[i]);
}

TEST_CASE("convergents: q nondecreasing (strict past the start), Dirichlet holds") {
  // q0 = q1 = 1 whenever the first partial quotient is 1 (the golden example
  // (0,1),(1,1),... forces this reading of the increasing-q invariant)
  for (double w : {0.7548776662466927, std::sqrt(2.0) - 1.0, 0.123456789}) {
    auto s = rotation::convergents(w, 12);
    for (std::size_t i = 1; i < s.pairs.size(); ++i) {
      CHECK(s.pairs[i].second >= s.pairs[i - 1].second);
      if (i >= 2) CHECK(s.pairs[i].second > s.pairs[i - 1].second);
    }
    for (auto [p, q] : s.pairs) CHECK(std::abs(q * w - p) < 1.0 / q + 1e-300);
  }
}

TEST_CASE("resonance_vector: exact resonance") {
  auto seed = rotation::resonance_vector({1.0, 2.0}, 10);
  CHECK(seed.inner == Catch::Approx(0.0).margin(1e-15));
  // canonical sign makes it (2, -1)
  CHECK(seed.k == std::vector<long>{2, -1});
}

TEST_CASE("resonance_vector: golden vector picks Fibonacci pairs") {
  const double w = (std::sqrt(5.0) - 1.0) / 2.0;
  auto seed = rotation::resonance_vector({1.0, w}, 60);
  // best k = +-(p, -q) for a Fibonacci convergent p/q
  const long p = std::abs(seed.k[0]), q = std::abs(seed.k[1]);
  CHECK(std::abs(q * w - p) < 1.0 / q);
  auto fibpair = [&](long a, long b) {
    return (a == 13 && b == 21) || (a == 21 && b == 34) || (a == 34 && b == 55);
  };
  CHECK(fibpair(p, q));
  CHECK(seed.constant < 1.0);  // |<w,k>| |k| stays bounded for the golden mean
}

TEST_CASE("resonance_vector: cubic vector in d = 3, exhaustive search") {
  const std::vector<double> w = {1.0, std::cbrt(2.0), std::cbrt(4.0)};
  auto seed = rotation::resonance_vector(w, 30);
  // independent brute-force over the same ball
  double best_c = 1e300;
  std::vector<long> best_k;
  for (long a = -30; a <= 30; ++a)
    for (long b = -30; b <= 30; ++b)
      for (long c = -30; c <= 30; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        const double n2 = double(a) * a + double(b) * b + double(c) * c;
        if (n2 > 900.0) continue;
        const double inner = std::abs(a * w[0] + b * w[1] + c * w[2]);
        const double cc = inner * n2;  // |k|^{d-1} = |k|^2
        if (cc < best_c) best_c = cc;
      }
  CHECK(seed.constant == Catch::Approx(best_c).epsilon(1e-12));
  CHECK(seed.inner * std::pow(rotation::vec_norm(seed.k), 2.0) ==
        Catch::Approx(seed.constant).epsilon(1e-12));
}

TEST_CASE("resonance_vector: quality is monotone in the search radius") {
  const std::vector<double> w = {1.0, std::sqrt(2.0) - 1.0};
  double prev = 1e300;
  for (long R : {5, 10, 20, 40}) {
    auto seed = rotation::resonance_vector(w, R);
    CHECK(seed.constant <= prev + 1e-15);
    prev = seed.constant;
  }
}

TEST_CASE("orthogonal_frame: canonical basis") {
  auto f = rotation::orthogonal_frame(std::vector<long>{1, 0, 0});
  CHECK(f.k_prime == std::vector<long>{0, 1, 0});
  REQUIRE(f.l_rows.size() == 1);
  CHECK(f.l_rows[0] == std::vector<long>{0, 0, 1});
}

TEST_CASE("orthogonal_frame: (1,1,0) by the shortest-vector rule") {
  auto f = rotation::orthogonal_frame(std::vector<long>{1, 1, 0});
  // shortest integer vector orthogonal to (1,1,0) is (0,0,1); the frame
  // closes with the cross product (1,-1,0)
  CHECK(f.k_prime == std::vector<long>{0, 0, 1});
  REQUIRE(f.l_rows.size() == 1);
  CHECK(f.l_rows[0] == std::vector<long>{1, -1, 0});
  auto rows = f.rows();
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      CHECK(rotation::dot_int(rows[i], rows[j]) == 0);
}

TEST_CASE("orthogonal_frame: d = 2 rotation") {
  auto f = rotation::orthogonal_frame(std::vector<long>{2, 1});
  CHECK(f.k_prime == std::vector<long>{-1, 2});
  CHECK(rotation::dot_int(f.k, f.k_prime) == 0);
}

TEST_CASE("orthogonal_frame: exact zero dot products, d > 3 unsupported") {
  for (auto k : std::vector<std::vector<long>>{{3, -2, 5}, {1, 4, 2}, {7, 0, -3}}) {
    auto f = rotation::orthogonal_frame(k);
    auto rows = f.rows();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rotation::dot_int(rows[i], rows[i]) > 0);
      for (std::size_t j = i + 1; j < rows.size(); ++j)
        CHECK(rotation::dot_int(rows[i], rows[j]) == 0);
    }
  }
  CHECK_THROWS_AS(rotation::orthogonal_frame(std::vector<long>{1, 2, 3, 4}), Unsupported);
}

TEST_CASE("rescale_problem: identity at q = 1") {
  auto P = perturb::make_u(1, 1.0);
  auto Q = rotation::rescale_problem(P, 1);
  for (int i = 0; i < 32; ++i) {
    const double x = i / 32.0;
    CHECK(Q(x) == Catch::Approx(P(x)).margin(1e-15));
  }
}

TEST_CASE("rescale_problem: u_1 at q = 3 in closed form") {
  auto P = perturb::make_u(1, 1.0);
  auto Q = rotation::rescale_problem(P, 3);
  for (int i = 0; i < 64; ++i) {
    const double x = i / 64.0;
    CHECK(Q(x) == Catch::Approx((1.0 - std::cos(6.0 * pi * x)) / 9.0).margin(1e-14));
  }
  double mx = 0;
  for (int i = 0; i < 4096; ++i) mx = std::max(mx, Q(i / 4096.0));
  CHECK(mx == Catch::Approx(2.0 / 9.0).epsilon(1e-9));
  CHECK(Q.period == 1.0);
}

TEST_CASE("rescale_problem: stationarity transport") {
  // (x_i) stationary for h0+Q iff (q x_i) stationary for h0+P
  auto P = perturb::make_u(2, 1.0);
  const long q = 3;
  auto Q = rotation::rescale_problem(P, q);
  twistmap::GeneratingFunction hQ{Q}, hP{P};
  auto orbQ = aubry::minimal_periodic_orbit(hQ, 1, 4);
  CHECK(aubry::stationarity_residual(hQ, orbQ) < 1e-10);

  aubry::Configuration orbP;
  orbP.x = rotation::transport_configuration(orbQ.x, q);
  orbP.closure = aubry::Closure::periodic;
  orbP.p = q * orbQ.p;  // lift translation scales with the coordinates
  orbP.q = orbQ.q;
  CHECK(aubry::stationarity_residual(hP, orbP) < 1e-10);
}

TEST_CASE("rescaling conjugacy: rotation numbers transform as q w - p") {
  // sub-critical potential so rotation numbers are well defined
  auto P = perturb::make_u(2, 6.0);
  const long q = 2;
  auto Q = rotation::rescale_problem(P, q);
  twistmap::GeneratingFunction hQ{Q}, hP{P};
  const double w = 0.225903614457831;
  const double rQ = twistmap::orbit_rotation_number(hQ, {0.0, w}, 200000);
  const double rP = twistmap::orbit_rotation_number(hP, {0.0, q * w}, 200000);
  CHECK(rP == Catch::Approx(q * rQ).margin(5e-5));
}

TEST_CASE("is_rational_at_precision") {
  CHECK(rotation::is_rational_at_precision(0.5));
  CHECK(rotation::is_rational_at_precision(3.0 / 7.0));
  CHECK_FALSE(rotation::is_rational_at_precision((std::sqrt(5.0) - 1.0) / 2.0));
}
