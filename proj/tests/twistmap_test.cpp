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

#include "ckam/herman.hpp"
#include "ckam/perturb.hpp"
#include "ckam/twistmap.hpp"
#include "oracles.hpp"

using namespace ckam;
using twistmap::GeneratingFunction;
using twistmap::map_step;
using twistmap::PhasePoint;

TEST_CASE("map_step: integrable shear") {
  GeneratingFunction h{twistmap::zero_potential()};
  auto p = map_step(h, {0.3, 0.5});
  CHECK(p.x == Catch::Approx(0.8).margin(0));
  CHECK(p.y == Catch::Approx(0.5).margin(0));
}

TEST_CASE("map_step: toy potential at the origin") {
  // phi_1(0) = -5/4, so (0,0) -> (0, -1.25)
  GeneratingFunction h{herman::toy_potential(1)};
  auto p = map_step(h, {0.0, 0.0});
  CHECK(p.x == Catch::Approx(0.0).margin(1e-15));
  CHECK(p.y == Catch::Approx(-1.25).margin(1e-12));
}

TEST_CASE("map_step: u_n kick matches the independent derivative") {
  // V' independently: u_n'(x) = (2 pi / n^a) sin(2 pi x)
  GeneratingFunction h{perturb::make_u(2, 1.0)};
  auto p = map_step(h, {0.0, 0.25});
  const double expected_kick = (two_pi / 2.0) * std::sin(two_pi * 0.25);
  CHECK(p.x == Catch::Approx(0.25).margin(0));
  CHECK(p.y == Catch::Approx(0.25 + expected_kick).margin(1e-13));
}

TEST_CASE("map_step: area preservation at random points") {
  GeneratingFunction h{twistmap::sum_potential(perturb::make_u(3, 1.0),
                                               perturb::make_bump_v({3, 1.0, 2}))};
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double det = oracles::map_jacobian_det(h, u(rng), u(rng));
    CHECK(std::abs(det - 1.0) < 1e-8);
  }
}

TEST_CASE("map_step: lift equivariance") {
  GeneratingFunction h{perturb::make_u(2, 1.5)};
  for (double x : {0.1, 0.7, 2.3}) {
    for (double y : {-0.4, 0.25}) {
      auto a = map_step(h, {x + 1.0, y});
      auto b = map_step(h, {x, y});
      CHECK(a.x == Catch::Approx(b.x + 1.0).margin(1e-12));
      CHECK(a.y == Catch::Approx(b.y).margin(1e-12));
    }
  }
}

TEST_CASE("exactness surrogate: momenta telescope over a period") {
  GeneratingFunction h{perturb::make_u(2, 1.0)};
  // any (p,q)-periodic configuration, not necessarily stationary
  const long p = 1, q = 5;
  std::vector<double> x = {0.05, 0.31, 0.44, 0.62, 0.83};
  auto lift = [&](long i) {
    long m = i % q;
    if (m < 0) m += q;
    return x[m] + p * static_cast<double>((i - m) / q);
  };
  double sum = 0;
  for (long i = 0; i < q; ++i) {
    const double yi = lift(i + 1) - lift(i);
    const double yn = lift(i + 2) - lift(i + 1);
    sum += yn - yi;
  }
  CHECK(std::abs(sum) < 1e-10);
}

TEST_CASE("orbit_rotation_number: shear is exact") {
  GeneratingFunction h{twistmap::zero_potential()};
  for (long N : {1L, 7L, 100L})
    CHECK(twistmap::orbit_rotation_number(h, {0.0, 0.37}, N) == Catch::Approx(0.37).margin(1e-15));
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(twistmap::orbit_rotation_number(h, {0.0, golden}, 10000) ==
        Catch::Approx(golden).margin(1e-12));
}

TEST_CASE("orbit_rotation_number: Cauchy consistency of the estimator") {
  // Sub-critical kick (max V'' = (2pi)^2/3^3.5 ~ 0.84): the orbit stays on an
  // invariant curve, so the N and 2N estimates agree within 2/N.
  GeneratingFunction h{perturb::make_u(3, 3.5)};
  const long N = 100000;
  const double r1 = twistmap::orbit_rotation_number(h, {0.0, 0.3}, N);
  const double r2 = twistmap::orbit_rotation_number(h, {0.0, 0.3}, 2 * N);
  CHECK(std::abs(r1 - r2) < 2.0 / static_cast<double>(N));

  // At (n=3, a=1) the kick is ~13x supercritical and the orbit diffuses;
  // the estimator still returns finite values but no Cauchy property holds.
  GeneratingFunction hc{perturb::make_u(3, 1.0)};
  CHECK(std::isfinite(twistmap::orbit_rotation_number(hc, {0.0, 0.3}, 10000)));
}

TEST_CASE("stationarity residual: arithmetic progressions solve the shear") {
  GeneratingFunction h0{twistmap::zero_potential()};
  const double w = 0.3819660112501051;
  std::vector<double> x(50);
  for (int i = 0; i < 50; ++i) x[i] = i * w;
  CHECK(twistmap::stationarity_residual_segment(h0, x) == Catch::Approx(0.0).margin(1e-14));

  GeneratingFunction hu{perturb::make_u(2, 1.0)};
  double expected = 0;
  for (int i = 1; i < 49; ++i) expected = std::max(expected, std::abs(hu.V.deriv(1, x[i])));
  CHECK(twistmap::stationarity_residual_segment(hu, x) == Catch::Approx(expected).margin(1e-12));
  CHECK(twistmap::stationarity_residual_segment(hu, x) > 0);
}

TEST_CASE("potential invariants: periodicity and derivative consistency") {
  // relative error is measured against the derivative's sup over the grid
  auto check_potential = [](const twistmap::PeriodicPotential& V) {
    for (int order = 1; order <= 2; ++order) {
      double scale = 0, worst = 0;
      for (int i = 0; i < 64; ++i) {
        const double x = V.period * (i + 0.21) / 64.0;
        if (order == 1) CHECK(std::abs(V(x + V.period) - V(x)) < 1e-12);
        const double fd = oracles::fd_derivative([&](double t) { return V(t); }, x, order, 1e-5);
        const double cf = V.deriv(order, x);
        scale = std::max(scale, std::abs(cf));
        worst = std::max(worst, std::abs(fd - cf));
      }
      CHECK(worst / std::max(scale, 1e-30) < 1e-6);
    }
  };
  check_potential(perturb::make_u(2, 1.0));
  check_potential(perturb::make_bump_v({2, 1.0, 2}));
  check_potential(herman::toy_potential(3));
}

TEST_CASE("twist condition is built in") {
  GeneratingFunction h{perturb::make_u(5, 2.0)};
  CHECK(GeneratingFunction::d12() == -1.0);
  CHECK(h(0.4 + 1.0, 0.9 + 1.0) == Catch::Approx(h(0.4, 0.9)).margin(1e-14));
}

TEST_CASE("orbit escape raises LiftOverflow") {
  GeneratingFunction h{twistmap::zero_potential()};
  CHECK_THROWS_AS(twistmap::orbit_rotation_number(h, {0.0, 2e11}, 100), LiftOverflow);
}
