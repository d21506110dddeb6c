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

#include "kfou/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "kfou/errors.hpp"

namespace kfou {

double erfcx(double z) {
  if (std::isnan(z)) return z;
  if (z < 26.0) {
    if (z < -26.0) return std::numeric_limits<double>::infinity();
    // Split z^2 into hi + lo so exp(z^2) keeps full relative precision.
    const double hi = z * z;
    const double lo = std::fma(z, z, -hi);
    return std::exp(hi) * (1.0 + lo) * std::erfc(z);
  }
  // erfcx(z) ~ 1/(z sqrt(pi)) * sum (-1)^n (2n-1)!! / (2 z^2)^n
  const double inv2z2 = 1.0 / (2.0 * z * z);
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 40; ++n) {
    term *= -(2.0 * n - 1.0) * inv2z2;
    sum += term;
    if (std::abs(term) < 1e-17) break;
  }
  return sum / (z * std::sqrt(std::numbers::pi));
}

namespace {

double k0_series(double x) {
  const double y = 0.25 * x * x;
  const double lead = std::log(0.5 * x) + std::numbers::egamma;
  double term = 1.0;
  double harmonic = 0.0;
  double i0 = 1.0;
  double tail = 0.0;
  for (int j = 1; j < 60; ++j) {
    term *= y / (static_cast<double>(j) * j);
    harmonic += 1.0 / j;
    i0 += term;
    tail += term * harmonic;
    if (term < 1e-18 * i0) break;
  }
  return -lead * i0 + tail;
}

// Steed's method on the second continued fraction (Temme), order zero.
double k0_continued_fraction(double x) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 10000; ++i) {
    a -= 2.0 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < 1e-17) break;
  }
  return std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
}

}  // namespace

double bessel_k0(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k0 requires x > 0");
  if (x <= 2.0) return k0_series(x);
  return k0_continued_fraction(x);
}

}  // namespace kfou
