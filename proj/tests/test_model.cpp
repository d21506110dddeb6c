// Copyright 2026 The kfou Authors.
//
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

#include <catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "kfou/errors.hpp"
#include "kfou/model.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using kfou::ModelParams;

TEST_CASE("alpha is lambda over two beta") {
  CHECK(kfou::alpha(ModelParams(0, 1, 0, 2, 1)) == 1.0);
  CHECK(kfou::alpha(ModelParams(0, 3, 0, 0, 1)) == 0.0);
  CHECK(kfou::alpha(ModelParams(0, 1, 0, 3, 1)) == 1.5);
}

TEST_CASE("constructor rejects invalid constants") {
  CHECK_THROWS_AS(ModelParams(0, 0, 0, 1, 1), kfou::ConfigError);
  CHECK_THROWS_AS(ModelParams(0, -1, 0, 1, 1), kfou::ConfigError);
  CHECK_THROWS_AS(ModelParams(0, 1, -0.1, 1, 1), kfou::ConfigError);
  CHECK_THROWS_AS(ModelParams(0, 1, 0, -1, 1), kfou::ConfigError);
  CHECK_THROWS_AS(ModelParams(0, 1, 0, 1, 0), kfou::ConfigError);
  CHECK_THROWS_AS(ModelParams(NAN, 1, 0, 1, 1), kfou::ConfigError);
  CHECK_THROWS_AS(ModelParams(0, 1, 0, INFINITY, 1), kfou::ConfigError);
}

TEST_CASE("resonance classification") {
  using Kind = kfou::ResonanceClass::Kind;
  CHECK(kfou::resonance(ModelParams(0, 1, 0, 0, 1)).kind == Kind::Zero);
  const auto r2 = kfou::resonance(ModelParams(0, 0.5, 0, 2, 1));
  CHECK(r2.kind == Kind::Integer);
  CHECK(r2.n == 2);
  CHECK(kfou::resonance(ModelParams(0, 1, 0, 3, 1)).kind == Kind::General);
  CHECK(kfou::resonance(ModelParams(0, 1, 0, 1, 1)).kind == Kind::General);
  // Within the tolerance of an integer.
  CHECK(kfou::resonance(ModelParams(0, 1, 0, 2.0 * (1.0 + 1e-14), 1)).kind == Kind::Integer);
  CHECK(kfou::resonance(ModelParams(0, 1, 0, 2.0 * (1.0 + 1e-9), 1)).kind == Kind::General);
  CHECK(kfou::resonance_tolerance(0.3) == 1e-12);
  CHECK(kfou::resonance_tolerance(5.0) == 5e-12);
}

TEST_CASE("time coefficients") {
  const ModelParams p0(0.0, 2.0, 1.0, 1.0, 1.0);
  CHECK(kfou::time_coeffs(p0, 0.7).a1 == 0.0);
  const ModelParams p1(1.5, 2.0, 0.0, 1.0, 1.0);
  CHECK(kfou::time_coeffs(p1, 0.7).a2 == 0.0);

  const ModelParams p(1.0, 1.0, 2.0, 1.0, 1.0);
  const auto far = kfou::time_coeffs(p, 60.0);
  CHECK_THAT(far.a1, WithinAbs(-1.0, 1e-15));
  CHECK_THAT(far.a2, WithinAbs(-1.0, 1e-15));

  const auto tc = kfou::time_coeffs(p, 0.3);
  CHECK_THAT(tc.a1, WithinRel(-(1.0 - std::exp(-0.3)), 1e-15));
  CHECK_THAT(tc.a2, WithinRel(-(4.0 / 4.0) * (1.0 - std::exp(-0.6)), 1e-15));
  CHECK(kfou::time_coeffs(p, 0.0).a2 == 0.0);
  CHECK_THROWS_AS(kfou::time_coeffs(p, -1e-9), kfou::DomainError);
}

TEST_CASE("a2 is nonincreasing and bounded below") {
  const ModelParams p(0.3, 0.7, 1.3, 1.0, 1.0);
  const double floor = -p.sigma() * p.sigma() / (4.0 * p.beta());
  double prev = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double a2 = kfou::time_coeffs(p, 0.05 * i).a2;
    CHECK(a2 <= prev);
    CHECK(a2 > floor);
    prev = a2;
  }
}

TEST_CASE("shifted coordinate") {
  const ModelParams p(1.0, 1.0, 0.0, 2.0, 1.0);
  CHECK(kfou::shifted_coord(p, 0.0, 1.25, 0.5) == 0.75);
  CHECK_THAT(kfou::shifted_coord(p, std::log(2.0), 0.0, 0.0), WithinAbs(-0.5, 1e-15));
  const ModelParams p0(0.0, 1.0, 0.0, 2.0, 1.0);
  CHECK_THAT(kfou::shifted_coord(p0, 50.0, 0.4, 3.0), WithinAbs(0.4, 1e-20));
}

TEST_CASE("shifted coordinate vanishes at the singular location") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const ModelParams p(u(rng), 0.1 + std::abs(u(rng)), 0.0, 1.0, 1.0);
    const double t = std::abs(u(rng));
    const double y = u(rng);
    const double c = kfou::singular_location(p, t, y);
    CHECK(std::abs(kfou::shifted_coord(p, t, c, y)) <= 1e-14 * (1.0 + std::abs(c)));
  }
}

TEST_CASE("singular amplitude and location") {
  const ModelParams p(0.0, 1.0, 0.0, 2.0, 1.0);
  CHECK(kfou::singular_amplitude(p, 0.0) == 1.0);
  CHECK(kfou::singular_amplitude(ModelParams(0, 1, 0.5, 0, 1), 3.0) == 1.0);
  CHECK_THAT(kfou::singular_amplitude(p, 0.5), WithinRel(std::exp(-1.0), 1e-15));
  for (double t : {0.0, 0.1, 1.0, 7.5})
    for (double lambda : {0.0, 0.4, 3.0})
      CHECK_THAT(kfou::singular_amplitude(ModelParams(0, 0.8, 0, lambda, 1), t),
                 WithinRel(std::exp(-lambda * t), 1e-15));

  CHECK(kfou::singular_location(p, 0.0, 1.7) == 1.7);
  CHECK_THAT(kfou::singular_location(p, 60.0, 1.7), WithinAbs(0.0, 1e-20));
  CHECK_THAT(kfou::singular_location(ModelParams(2, 1, 0, 2, 1), 60.0, 0.0), WithinAbs(2.0, 1e-14));
}

TEST_CASE("diffusion variance is minus twice a2") {
  const ModelParams p(0.0, 0.5, 0.9, 1.0, 1.0);
  for (double t : {0.0, 0.2, 3.0})
    CHECK(kfou::diffusion_variance(p, t) == -2.0 * kfou::time_coeffs(p, t).a2);
}
