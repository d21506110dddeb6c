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
#include <filesystem>
#include <fstream>

#include "kfou/density.hpp"
#include "kfou/errors.hpp"
#include "kfou/io.hpp"
#include "kfou/kernel.hpp"
#include "oracles.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using kfou::ModelParams;

namespace {

ModelParams resonant(int n, double sigma = 0.0, double k = 1.0, double B = 0.0, double beta = 1.0) {
  return ModelParams(B, beta, sigma, 2.0 * n * beta, k);
}

kfou::SampledData sampled_gaussian(double center, double variance, const kfou::UniformGrid& g) {
  std::vector<double> x;
  std::vector<double> v;
  for (int i = 0; i < g.count; ++i) {
    x.push_back(g.at(i));
    v.push_back(kfou::initial_value(kfou::GaussianData{center, variance}, g.at(i)));
  }
  return kfou::SampledData::ingest(x, v);
}

}  // namespace

TEST_CASE("evolution at time zero returns the data") {
  const kfou::GaussianData g{0.7, 0.3};
  const auto e = kfou::evolve(resonant(1), g, 0.0);
  CHECK(e.branch == kfou::Branch::ClosedForm);
  for (double x : {-1.0, 0.0, 0.7, 2.0})
    CHECK_THAT(kfou::evaluate_regular(e.expr, x), WithinRel(kfou::initial_value(g, x), 1e-14));
  const auto s = kfou::evolve(resonant(1), kfou::StepData{2.0}, 0.0);
  for (double x : {-2.7, -2.2, -1.6, -1.2})
    CHECK(kfou::evaluate_regular(s.expr, x) == kfou::initial_value(kfou::StepData{2.0}, x));
}

TEST_CASE("Gaussian data against high-precision references") {
  const auto e = kfou::evolve(resonant(1), kfou::GaussianData{2.0, 0.5}, 1.0);
  for (const auto& row : oracle::golden()["gaussian_t1"]) {
    const double x = row[0].get<double>();
    INFO("x = " << x);
    CHECK_THAT(kfou::evaluate_regular(e.expr, x), WithinAbs(row[1].get<double>(), 1e-13));
  }
}

TEST_CASE("step data against high-precision references") {
  const auto e = kfou::evolve(resonant(1), kfou::StepData{2.0}, 1.0);
  for (const auto& row : oracle::golden()["step_t1"]) {
    const double x = row[0].get<double>();
    INFO("x = " << x);
    CHECK_THAT(kfou::evaluate_regular(e.expr, x), WithinAbs(row[1].get<double>(), 1e-13));
  }
}

TEST_CASE("closed forms agree with quadrature convolution") {
  struct Case {
    ModelParams p;
    kfou::InitialData init;
    double t;
  };
  const std::vector<Case> cases = {
      {resonant(1), kfou::GaussianData{2.0, 0.5}, 1.0},
      {resonant(1, 0.0, 1.5, 0.4), kfou::GaussianData{-0.5, 0.2}, 0.3},
      {resonant(2, 0.5), kfou::GaussianData{1.0, 0.5}, 0.7},
      {resonant(3), kfou::GaussianData{0.0, 1.0}, 2.0},
      {resonant(1), kfou::StepData{2.0}, 1.0},
      {resonant(1, 0.0, 2.0, -0.3), kfou::StepData{-0.5}, 0.4},
      {ModelParams(0.2, 1.0, 0.0, 0.0, 1.0), kfou::StepData{1.0}, 0.5},
  };
  for (const auto& c : cases) {
    const auto e = kfou::evolve(c.p, c.init, c.t);
    for (double x = -6.0; x <= 6.0; x += 0.23) {
      INFO("alpha=" << c.p.alpha() << " t=" << c.t << " x=" << x);
      CHECK_THAT(kfou::evaluate_regular(e.expr, x),
                 WithinAbs(kfou::evolve_point(c.p, c.init, c.t, x), 1e-8));
    }
    CHECK_THAT(kfou::integrate_line(e.expr), WithinAbs(1.0, 1e-8));
  }
}

TEST_CASE("evolution approaches the stationary density") {
  for (double sigma : {0.0, 0.5}) {
    const ModelParams p = resonant(1, sigma, 1.0, 0.5);
    const auto st = kfou::stationary_density(p);
    std::vector<kfou::InitialData> inits = {kfou::GaussianData{2.0, 0.5}};
    if (sigma == 0.0) inits.push_back(kfou::StepData{2.0});
    for (const auto& init : inits) {
      const auto e = kfou::evolve(p, init, 20.0);
      double worst = 0.0;
      for (double x = -10.0; x <= 10.0; x += 0.01)
        worst = std::max(worst, std::abs(kfou::evaluate_regular(e.expr, x) - st(x)));
      CHECK(worst <= 1e-6);
      const auto early = kfou::evolve(p, init, 2.0);
      double gap = 0.0;
      for (double x = -10.0; x <= 10.0; x += 0.01)
        gap = std::max(gap, std::abs(kfou::evaluate_regular(early.expr, x) - st(x)));
      CHECK(gap > worst);
    }
  }
}

TEST_CASE("semigroup on densities") {
  for (double sigma : {0.0, 0.5}) {
    const ModelParams p = resonant(1, sigma);
    const kfou::GaussianData g{1.0, 0.5};
    const auto half = kfou::evolve(p, g, 0.5);
    const kfou::UniformGrid fine = kfou::UniformGrid::parse("-12:12:4801");
    const Eigen::ArrayXd x = fine.points();
    const Eigen::ArrayXd v = kfou::evaluate_regular(half.expr, x);
    const auto mid = kfou::SampledData::ingest(std::vector<double>(x.begin(), x.end()),
                                               std::vector<double>(v.begin(), v.end()));
    kfou::EvolveOptions opts;
    opts.grid = kfou::UniformGrid::parse("-6:6:61");
    const auto composed = kfou::evolve(p, mid, 0.5, opts);
    CHECK(composed.branch == kfou::Branch::Quadrature);
    const auto direct = kfou::evolve(p, g, 1.0);
    for (int i = 0; i < opts.grid.count; ++i) {
      INFO("sigma=" << sigma << " x=" << opts.grid.at(i));
      CHECK_THAT(composed.values(i), WithinAbs(kfou::evaluate_regular(direct.expr, opts.grid.at(i)), 1e-4));
    }
  }
}

TEST_CASE("sampled data keeps its mass") {
  const ModelParams p = resonant(2, 0.5);
  const auto data = sampled_gaussian(0.5, 0.4, kfou::UniformGrid::parse("-6:6:1201"));
  kfou::EvolveOptions opts;
  opts.grid = kfou::UniformGrid::parse("-40:40:1601");
  const auto e = kfou::evolve(p, data, 0.6, opts);
  kfou::SpectralGrid as_grid;
  as_grid.grid = opts.grid;
  as_grid.values = e.values;
  CHECK_THAT(as_grid.trapezoid_mass(), WithinAbs(1.0, 1e-8));
}

TEST_CASE("sampled data is renormalized on ingest") {
  const auto s = kfou::SampledData::ingest({0.0, 1.0, 2.0}, {0.0, 4.0, 0.0});
  CHECK(s.ingest_mass == 4.0);
  CHECK(s(1.0) == 1.0);
  CHECK(s(0.5) == 0.5);
  CHECK(s(-1.0) == 0.0);
  CHECK(s(3.0) == 0.0);
  CHECK_THROWS_AS(kfou::SampledData::ingest({0.0, 1.0}, {1.0}), kfou::ConfigError);
  CHECK_THROWS_AS(kfou::SampledData::ingest({1.0, 0.0}, {1.0, 1.0}), kfou::ConfigError);
  CHECK_THROWS_AS(kfou::SampledData::ingest({0.0, 1.0}, {-1.0, 1.0}), kfou::ConfigError);
  CHECK_THROWS_AS(kfou::SampledData::ingest({0.0, 1.0}, {0.0, 0.0}), kfou::ConfigError);
}

TEST_CASE("sampled data from CSV") {
  const auto path = std::filesystem::temp_directory_path() / "kfou_test_density.csv";
  {
    std::ofstream out(path);
    out << "# comment\nx,density\n-1,0\n0,2\n1,0\n";
  }
  auto [x, v] = kfou::read_two_column_csv(path.string());
  const auto s = kfou::SampledData::ingest(x, v);
  CHECK(s.ingest_mass == 2.0);
  CHECK(s(0.0) == 1.0);
  std::filesystem::remove(path);
}

TEST_CASE("discontinuity reports") {
  const ModelParams p = resonant(1);
  for (double t : {0.5, 1.0, 10.0}) {
    const auto g = kfou::evolve(p, kfou::GaussianData{2.0, 0.5}, t);
    CHECK(kfou::weak_discontinuity_report(g.expr).empty());

    const auto s = kfou::evolve(p, kfou::StepData{2.0}, t);
    const auto rep = kfou::weak_discontinuity_report(s.expr, 2);
    const double E = std::exp(-t);
    const double xi_minus = -2.5 * E;
    const double xi_plus = -1.5 * E;
    int found = 0;
    for (const auto& d : rep) {
      INFO("t=" << t << " loc=" << d.location << " order=" << d.order);
      const bool at_minus = std::abs(d.location - xi_minus) < 1e-12;
      const bool at_plus = std::abs(d.location - xi_plus) < 1e-12;
      CHECK((at_minus || at_plus));
      if (d.order == 0) {
        ++found;
        CHECK_THAT(std::abs(d.jump), WithinAbs(E, 1e-10));
        CHECK((at_minus ? d.jump > 0.0 : d.jump < 0.0));
      }
    }
    CHECK(found == 2);
  }
  const auto smooth = kfou::evolve(resonant(1, 0.5), kfou::GaussianData{2.0, 0.5}, 1.0);
  CHECK(kfou::weak_discontinuity_report(smooth.expr).empty());
}

TEST_CASE("evolution errors") {
  const ModelParams general(0.0, 1.0, 0.0, 3.0, 1.0);
  kfou::EvolveOptions opts;
  opts.branch = kfou::Branch::ClosedForm;
  CHECK_THROWS_AS(kfou::evolve(general, kfou::GaussianData{}, 1.0, opts), kfou::DomainError);
  CHECK_THROWS_AS(kfou::evolve(resonant(1), kfou::GaussianData{}, -1.0), kfou::DomainError);
  CHECK_THROWS_AS(kfou::evolve(resonant(2), kfou::StepData{1.0}, 1.0, opts), kfou::UnsupportedError);
  CHECK_THROWS_AS(kfou::evolve(resonant(1), kfou::GaussianData{0.0, 0.0}, 1.0), kfou::ConfigError);
  CHECK(kfou::parse_branch("closed") == kfou::Branch::ClosedForm);
  CHECK_THROWS_AS(kfou::parse_branch("nope"), kfou::ConfigError);
}
