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

#include "kfou/density.hpp"
#include "kfou/errors.hpp"
#include "kfou/kernel.hpp"
#include "oracles.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using kfou::Expr;
using kfou::ModelParams;

namespace {

ModelParams resonant(int n, double beta = 1.0, double sigma = 0.0, double k = 1.0, double B = 0.0) {
  return ModelParams(B, beta, sigma, 2.0 * n * beta, k);
}

oracle::Model model_of(const ModelParams& p) {
  return {p.B(), p.beta(), p.sigma(), p.lambda(), p.k()};
}

double jump_at(const std::vector<kfou::Discontinuity>& rep, double loc, int order) {
  for (const auto& d : rep)
    if (d.order == order && std::abs(d.location - loc) <= 1e-12) return d.jump;
  return 0.0;
}

}  // namespace

TEST_CASE("first screened profile") {
  for (double k : {0.5, 1.0, 2.0}) {
    const Expr f = kfou::fn_plain(k, 1);
    CHECK_THAT(kfou::evaluate_regular(f, 0.0), WithinRel(0.5 / k, 1e-15));
    CHECK(kfou::fn(resonant(1, 1.0, 0.0, k), 0.5, 1) == kfou::f1(resonant(1, 1.0, 0.0, k), 0.5));
  }
  CHECK(kfou::evaluate_regular(kfou::f1(resonant(1), 0.3), 0.0) == 0.5);
}

TEST_CASE("second profile is twice differentiable with a third-derivative jump") {
  const auto rep = kfou::weak_discontinuity_report(kfou::fn_plain(1.0, 2));
  for (int order : {0, 1, 2}) CHECK(jump_at(rep, 0.0, order) == 0.0);
  CHECK_THAT(jump_at(rep, 0.0, 3), WithinRel(1.0, 1e-13));
}

TEST_CASE("third profile matches its inverse Fourier transform") {
  const Expr f = kfou::fn_plain(1.0, 3);
  for (const auto& row : oracle::golden()["fn3"]) {
    const double x = row[0].get<double>();
    INFO("x = " << x);
    CHECK_THAT(kfou::evaluate_regular(f, x), WithinAbs(row[1].get<double>(), 1e-9));
    const double ax = std::abs(x);
    CHECK_THAT(kfou::evaluate_regular(f, x),
               WithinRel(std::exp(-ax) * (3.0 + 3.0 * ax + ax * ax) / 16.0, 1e-14));
  }
}

TEST_CASE("smoothed first profile") {
  const ModelParams p(0.0, 1.0, 1.0, 2.0, 1.0);
  const Expr f = kfou::f1(p, 1.0);
  CHECK_THAT(kfou::integrate_line(f), WithinRel(1.0, 1e-13));
  const double a2 = kfou::time_coeffs(p, 1.0).a2;
  for (double x : {0.0, 0.4, 1.0, 2.5, 6.0}) {
    const double want = oracle::inverse_cos([&](double w) { return std::exp(a2 * w * w) / (1.0 + w * w); }, x);
    INFO("x = " << x);
    CHECK_THAT(kfou::evaluate_regular(f, x), WithinAbs(want, 1e-8));
  }
  const ModelParams p2(0.0, 1.0, 0.7, 2.0, 2.5);
  CHECK_THAT(kfou::integrate_line(kfou::f1(p2, 0.4)), WithinRel(1.0 / (2.5 * 2.5), 1e-13));
}

TEST_CASE("single-jump resonance at the reference point") {
  const ModelParams p = resonant(1);
  const auto kr = kfou::fundamental_finite_sum(p, 0.5, 0.0);
  CHECK_THAT(kfou::evaluate_regular(kr.regular, 0.0), WithinAbs(0.316060, 1e-6));
  CHECK_THAT(kfou::evaluate_regular(kr.regular, 0.0), WithinRel(0.5 * (1.0 - std::exp(-1.0)), 1e-15));
  CHECK_THAT(kr.atom_weight, WithinRel(std::exp(-1.0), 1e-15));
  CHECK(kr.atom_center == 0.0);
  for (double x : {-3.0, -0.5, 0.7, 4.0})
    CHECK_THAT(kfou::evaluate_regular(kr.regular, x),
               WithinRel(oracle::laplace_kernel(1.0, 1.0, 0.5, x), 1e-15));
}

TEST_CASE("kernel at time zero is the initial delta") {
  for (int n : {1, 2, 3}) {
    const auto kr = kfou::fundamental_finite_sum(resonant(n, 1.0, 0.5), 0.0, 1.25);
    CHECK(kr.regular.empty());
    CHECK(kr.atom_weight == 1.0);
    CHECK(kr.atom_center == 1.25);
  }
}

TEST_CASE("finite sum agrees with Fourier inversion") {
  for (int n : {1, 2, 3})
    for (double sigma : {0.0, 0.5})
      for (double t : {0.3, 1.0}) {
        const ModelParams p = resonant(n, 1.0, sigma, 1.0, 0.2);
        const auto kr = kfou::fundamental_finite_sum(p, t, 0.4);
        const oracle::Model m = model_of(p);
        for (double xbar = -10.0; xbar <= 10.0; xbar += 2.5) {
          const double x = kr.atom_center + xbar + 0.01;
          INFO("n=" << n << " sigma=" << sigma << " t=" << t << " x=" << x);
          CHECK_THAT(kfou::evaluate_regular(kr.regular, x),
                     WithinAbs(oracle::kernel_frame(m, t, xbar + 0.01), 1e-8));
        }
      }
}

TEST_CASE("atom weight and mass identities") {
  for (int n = 1; n <= 8; ++n)
    for (double beta : {0.5, 1.0, 2.0})
      for (double t : {0.1, 1.0, 5.0}) {
        const auto kr = kfou::fundamental_finite_sum(resonant(n, beta), t, 0.3);
        const double want = std::exp(-2.0 * beta * n * t);
        INFO("n=" << n << " beta=" << beta << " t=" << t);
        CHECK_THAT(kr.meta.delta_weight, WithinRel(want, 1e-10));
        CHECK_THAT(kr.atom_weight, WithinRel(want, 1e-10));
        CHECK_THAT(kfou::integrate_line(kr.regular) + kr.atom_weight, WithinAbs(1.0, 1e-10));
        CHECK(std::abs(kr.meta.dropped_residue) <= 1e-12);
      }
}

TEST_CASE("mean and variance identities") {
  for (int n : {1, 2, 3})
    for (double sigma : {0.0, 0.5})
      for (double t : {0.3, 1.0, 5.0}) {
        const ModelParams p = resonant(n, 0.8, sigma, 1.4, 0.3);
        const double y = -0.6;
        const auto kr = kfou::fundamental_finite_sum(p, t, y);
        const oracle::Model m = model_of(p);
        const auto [mean, var] = oracle::char_moments(m, t, y);
        INFO("n=" << n << " sigma=" << sigma << " t=" << t);
        CHECK_THAT(kfou::kernel_mean(kr), WithinAbs(m.mean(t, y), 1e-12));
        CHECK_THAT(kfou::kernel_variance(kr), WithinAbs(m.variance(t), 1e-12));
        CHECK_THAT(kfou::kernel_mean(kr), WithinAbs(mean, 1e-8));
        CHECK_THAT(kfou::kernel_variance(kr), WithinAbs(var, 1e-8));
      }
}

TEST_CASE("first-derivative jump of the jump-carrying part") {
  // Regular transform (q + c u)^n - q^n with q = e^{-2 beta t}, u = k^2/(k^2+w^2);
  // its 1/w^2 tail gives a first-derivative jump of -n q^{n-1} c k^2.
  for (int n : {1, 2, 3})
    for (double k : {1.0, 2.0})
      for (double t : {0.5, 1.0, 5.0}) {
        const auto kr = kfou::fundamental_finite_sum(resonant(n, 1.0, 0.0, k), t, 0.0);
        const auto rep = kfou::weak_discontinuity_report(kr.regular);
        const double q = std::exp(-2.0 * t);
        const double c = 1.0 - q;
        INFO("n=" << n << " k=" << k << " t=" << t);
        CHECK(jump_at(rep, 0.0, 0) == 0.0);
        CHECK_THAT(jump_at(rep, 0.0, 1), WithinAbs(-n * std::pow(q, n - 1) * c * k * k, 1e-12));
      }
}

TEST_CASE("long-time regular part approaches the smooth profile") {
  // As t grows the order-1 jump of the n = 2 kernel dies out, leaving the
  // third-derivative jump of the second profile.
  const auto kr = kfou::fundamental_finite_sum(resonant(2), 25.0, 0.0);
  const auto rep = kfou::weak_discontinuity_report(kr.regular);
  CHECK(std::abs(jump_at(rep, 0.0, 1)) < 1e-20);
  CHECK_THAT(jump_at(rep, 0.0, 3), WithinRel(1.0, 1e-12));
}

TEST_CASE("tails") {
  for (int n : {1, 2, 3})
    for (double k : {1.0, 2.0}) {
      const auto kr = kfou::fundamental_finite_sum(resonant(n, 1.0, 0.0, k), 1.0, 0.0);
      double lo = INFINITY;
      double hi = -INFINITY;
      for (double x = 20.0 / k; x <= 40.0 / k; x += 0.5 / k)
        for (double s : {-1.0, 1.0}) {
          const double g = std::log(std::abs(kfou::evaluate_regular(kr.regular, s * x))) + k * x -
                           n * std::log(x);
          lo = std::min(lo, g);
          hi = std::max(hi, g);
        }
      INFO("n=" << n << " k=" << k);
      CHECK(std::isfinite(lo));
      CHECK(hi - lo <= (n + 1) * std::log(2.0));
    }
  // With diffusion the tail stays exponential with rate k.
  const auto kr = kfou::fundamental_finite_sum(resonant(1, 1.0, 0.5, 1.5), 1.0, 0.0);
  for (double x : {30.0, 60.0}) {
    const double rate = std::log(kfou::evaluate_regular(kr.regular, x)) / x;
    CHECK_THAT(rate, WithinAbs(-1.5, 0.05));
  }
}

TEST_CASE("series truncates itself at integer alpha") {
  for (int n : {1, 2, 3})
    for (double sigma : {0.0, 0.5}) {
      const ModelParams p = resonant(n, 1.0, sigma);
      const auto s = kfou::fundamental_series(p, 0.7, 0.2);
      const auto f = kfou::fundamental_finite_sum(p, 0.7, 0.2);
      CHECK(s.meta.terms_used == n + 1);
      REQUIRE(s.regular.size() == f.regular.size());
      for (std::size_t i = 0; i < s.regular.size(); ++i) {
        CHECK(kfou::with_coeff(s.regular.terms()[i], 1.0) == kfou::with_coeff(f.regular.terms()[i], 1.0));
        CHECK_THAT(kfou::term_coeff(s.regular.terms()[i]),
                   WithinRel(kfou::term_coeff(f.regular.terms()[i]), 1e-12));
      }
      CHECK_THAT(s.atom_weight, WithinRel(f.atom_weight, 1e-14));
    }
}

TEST_CASE("series without jumps is the pure atom") {
  const auto kr = kfou::fundamental_series(ModelParams(0.5, 1.0, 0.0, 0.0, 1.0), 2.0, 1.0);
  CHECK(kr.regular.empty());
  CHECK(kr.atom_weight == 1.0);
}

TEST_CASE("series at non-integer alpha matches Fourier inversion") {
  const ModelParams p(0.0, 1.0, 0.0, 3.0, 1.0);
  const auto kr = kfou::fundamental_series(p, 1.0, 0.0);
  CHECK(kr.meta.truncation_error < 1e-5);
  const oracle::Model m = model_of(p);
  for (double x = -10.0; x <= 10.0; x += 1.37) {
    INFO("x = " << x);
    CHECK_THAT(kfou::evaluate_regular(kr.regular, x), WithinAbs(oracle::kernel_frame(m, 1.0, x), 1e-5));
  }
  // The running atom weight is the partial binomial sum, so it only reaches
  // e^{-lambda t} up to the truncation error.
  double partial = 0.0;
  double gb = 1.0;
  const double c = -std::expm1(-2.0);
  for (int j = 0; j < kr.meta.terms_used; ++j) {
    partial += gb * std::pow(-c, j);
    gb *= (1.5 - j) / (j + 1);
  }
  CHECK_THAT(kr.atom_weight, WithinRel(partial, 1e-12));
  CHECK_THAT(kr.atom_weight, WithinAbs(std::exp(-3.0), kr.meta.truncation_error));
  CHECK_THAT(kfou::kernel_mass(kr), WithinAbs(1.0, kr.meta.truncation_error));
}

TEST_CASE("series flags the center for small alpha without diffusion") {
  const auto kr = kfou::fundamental_series(ModelParams(0.0, 1.0, 0.0, 0.8, 1.0), 1.0, 0.0);
  CHECK(kr.meta.singular_at_center);
  CHECK_THROWS_AS(kfou::kernel_value(kr, kr.atom_center), kfou::SingularityError);
  CHECK(std::isfinite(kfou::kernel_value(kr, 0.5)));
}

TEST_CASE("stationary densities") {
  const auto lap = kfou::stationary_density(resonant(1));
  CHECK(lap(0.0) == 0.5);
  CHECK_THAT(kfou::integrate_line(lap.expr()), WithinRel(1.0, 1e-15));
  const auto shifted = kfou::stationary_density(resonant(1, 2.0, 0.0, 1.0, 1.0));
  CHECK(shifted(0.5) == 0.5);

  const auto bessel = kfou::stationary_density(ModelParams(0.0, 1.0, 0.0, 1.0, 1.0));
  CHECK(bessel.kind() == kfou::StationaryDensity::Kind::Bessel);
  CHECK_THAT(bessel(1.0), WithinRel(oracle::k0(1.0) / M_PI, 1e-13));
  CHECK_THAT(bessel(1.0), WithinAbs(0.134016, 1e-6));
  CHECK_THROWS_AS(bessel(0.0), kfou::SingularityError);

  const ModelParams ps = resonant(1, 1.0, 0.5);
  const auto smooth = kfou::stationary_density(ps);
  for (const auto& row : oracle::golden()["stationary_sigma"]) {
    const double x = row[0].get<double>();
    CHECK_THAT(smooth(x), WithinRel(row[1].get<double>(), 1e-12));
  }
  const ModelParams pb = resonant(1, 1.3, 0.8, 1.2, 0.4);
  for (double x : {-2.0, 0.0, 0.3, 1.7}) {
    CHECK_THAT(kfou::stationary_density(pb)(x), WithinRel(oracle::stationary_erfc(model_of(pb), x), 1e-12));
  }
  CHECK_THROWS_AS(kfou::stationary_density(ModelParams(0.0, 1.0, 0.0, 3.0, 1.0)), kfou::UnsupportedError);
}

TEST_CASE("regular part converges to the stationary density") {
  for (double sigma : {0.0, 0.5}) {
    const ModelParams p = resonant(1, 1.0, sigma, 1.0, 0.3);
    const auto st = kfou::stationary_density(p);
    const auto kr = kfou::fundamental_finite_sum(p, 20.0, 1.0);
    for (double x = -10.0; x <= 10.0; x += 0.05)
      CHECK_THAT(kfou::evaluate_regular(kr.regular, x), WithinAbs(st(x), 1e-6));
  }
}

TEST_CASE("kernel results survive a JSON round trip") {
  const auto kr = kfou::fundamental_series(ModelParams(0.1, 1.0, 0.3, 3.0, 1.0), 0.6, 0.2);
  const auto back = kfou::kernel_from_json(nlohmann::json::parse(kfou::to_json(kr).dump()));
  CHECK(back.regular == kr.regular);
  CHECK(back.atom_weight == kr.atom_weight);
  CHECK(back.atom_center == kr.atom_center);
  CHECK(back.meta.terms_used == kr.meta.terms_used);
  CHECK(back.meta.method == kr.meta.method);
}

TEST_CASE("finite sum needs integer alpha") {
  CHECK_THROWS_AS(kfou::fundamental_finite_sum(ModelParams(0, 1, 0, 3, 1), 1.0, 0.0), kfou::DomainError);
  CHECK_THROWS_AS(kfou::fundamental_finite_sum(resonant(1), -1.0, 0.0), kfou::DomainError);
}
