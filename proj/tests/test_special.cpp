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

#include "kfou/special.hpp"
#include "oracles.hpp"

using Catch::Matchers::WithinRel;

TEST_CASE("erfcx matches high-precision references") {
  for (const auto& row : oracle::golden()["erfcx"]) {
    const double z = row[0].get<double>();
    INFO("z = " << z);
    CHECK_THAT(kfou::erfcx(z), WithinRel(row[1].get<double>(), 1e-14));
  }
}

TEST_CASE("erfcx agrees with exp times erfc where both are representable") {
  for (double z = -5.0; z <= 5.0; z += 0.137) {
    INFO("z = " << z);
    CHECK_THAT(kfou::erfcx(z), WithinRel(std::exp(z * z) * std::erfc(z), 2e-13));
  }
}

TEST_CASE("erfcx extreme arguments") {
  CHECK(std::isinf(kfou::erfcx(-30.0)));
  CHECK_THAT(kfou::erfcx(1e8), WithinRel(1.0 / (1e8 * std::sqrt(M_PI)), 1e-14));
}

TEST_CASE("K0 matches high-precision references") {
  for (const auto& row : oracle::golden()["bessel_k0"]) {
    const double x = row[0].get<double>();
    INFO("x = " << x);
    CHECK_THAT(kfou::bessel_k0(x), WithinRel(row[1].get<double>(), 1e-14));
  }
}

TEST_CASE("K0 agrees with an independent implementation") {
  for (double x = 0.01; x < 40.0; x *= 1.17) {
    INFO("x = " << x);
    CHECK_THAT(kfou::bessel_k0(x), WithinRel(oracle::k0(x), 1e-13));
  }
}
