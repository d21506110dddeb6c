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

// Reference computations shared by the tests. Nothing here calls into the
// library's spectral or special-function code.

#ifndef KFOU_TESTS_ORACLES_HPP_
#define KFOU_TESTS_ORACLES_HPP_

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <string>
#include <vector>

namespace oracle {

inline nlohmann::json golden() {
  std::ifstream in(std::string(KFOU_TEST_DATA) + "/golden.json");
  return nlohmann::json::parse(in);
}

inline double k0(double x) { return boost::math::cyl_bessel_k(0, x); }

// (1/pi) int_0^inf f(w) cos(w x) dw for an even real transform f.
inline double inverse_cos(const std::function<double(double)>& f, double x) {
  if (x == 0.0) {
    boost::math::quadrature::exp_sinh<double> es;
    return es.integrate(f, 0.0, std::numeric_limits<double>::infinity()) / M_PI;
  }
  static boost::math::quadrature::ooura_fourier_cos<double> ooura(1e-13, 12);
  return ooura.integrate(f, std::abs(x)).first / M_PI;
}

// Parameters of the jump-diffusion, kept separate from the library type.
struct Model {
  double B = 0.0;
  double beta = 1.0;
  double sigma = 0.0;
  double lambda = 2.0;
  double k = 1.0;
  double alpha() const { return lambda / (2.0 * beta); }
  double c(double t) const { return 1.0 - std::exp(-2.0 * beta * t); }
  double mean(double t, double y) const {
    return y * std::exp(-beta * t) + B / beta * (1.0 - std::exp(-beta * t));
  }
  double ou_variance(double t) const { return sigma * sigma * c(t) / (2.0 * beta); }
  double variance(double t) const { return ou_variance(t) + 2.0 * alpha() * c(t) / (k * k); }
};

// Characteristic function int P e^{-iwx} dx of the transition density.
inline std::complex<double> char_fn(const Model& m, double t, double y, double w) {
  const double base = 1.0 - m.c(t) * w * w / (m.k * m.k + w * w);
  const double a2 = -m.sigma * m.sigma * m.c(t) / (4.0 * m.beta);
  const double logmod = m.alpha() * std::log(base) + a2 * w * w;
  return std::exp(std::complex<double>(logmod, -w * m.mean(t, y)));
}

// Mean and variance from central differences of log char_fn at w = 0.
inline std::pair<double, double> char_moments(const Model& m, double t, double y) {
  const double h = 1e-3;
  auto lg = [&](double w) { return std::log(char_fn(m, t, y, w)); };
  const std::complex<double> d1 = (lg(-2 * h) - 8.0 * lg(-h) + 8.0 * lg(h) - lg(2 * h)) / (12.0 * h);
  const std::complex<double> d2 =
      (-lg(-2 * h) + 16.0 * lg(-h) - 30.0 * lg(0.0) + 16.0 * lg(h) - lg(2 * h)) / (12.0 * h * h);
  // log phi = -i w mu - w^2 var / 2 + ...
  return {-d1.imag(), -d2.real()};
}

// Regular-part transform in the shifted frame for sigma = 0, and the full
// transform otherwise.
inline double frame_transform(const Model& m, double t, double w) {
  const double q = std::exp(-m.lambda * t);
  const double u = m.k * m.k / (m.k * m.k + w * w);
  const double a2 = -m.sigma * m.sigma * m.c(t) / (4.0 * m.beta);
  const double r = std::expm1(2.0 * m.beta * t);
  if (m.sigma == 0.0) return q * std::expm1(m.alpha() * std::log1p(r * u));
  return std::exp(m.alpha() * std::log1p(-m.c(t) * (1.0 - u)) + a2 * w * w);
}

// Regular part of the kernel at shifted coordinate xbar by Fourier inversion.
inline double kernel_frame(const Model& m, double t, double xbar) {
  return inverse_cos([&](double w) { return frame_transform(m, t, w); }, xbar);
}

// Unit-rate alpha = 1, sigma = 0 regular part, shifted frame.
inline double laplace_kernel(double k, double beta, double t, double xbar) {
  return 0.5 * k * (1.0 - std::exp(-2.0 * beta * t)) * std::exp(-k * std::abs(xbar));
}

// Laplace density convolved with a centered Gaussian of variance v.
inline double laplace_gauss(double k, double v, double x) {
  const double s = std::sqrt(v);
  const double e = std::exp(0.5 * k * k * v);
  const double a = std::erfc((k * s - x / s) / std::sqrt(2.0)) * std::exp(-k * x);
  const double b = std::erfc((k * s + x / s) / std::sqrt(2.0)) * std::exp(k * x);
  return 0.25 * k * e * (a + b);
}

// Stationary density for n = 1, sigma > 0, in the erfc form with sqrt(beta)
// restored.
inline double stationary_erfc(const Model& m, double x) {
  const double x1 = x - m.B / m.beta;
  const double sb = std::sqrt(m.beta);
  const double s = m.sigma;
  const double k = m.k;
  const double e = std::exp(s * s * k * k / (4.0 * m.beta));
  return 0.25 * k * e *
         (std::erfc(s * k / (2.0 * sb) - sb * x1 / s) * std::exp(-k * x1) +
          std::erfc(s * k / (2.0 * sb) + sb * x1 / s) * std::exp(k * x1));
}

// F1 for sigma > 0 in the cosh/Erf grouping, with the exponent signs and the
// 1/(2k) weight fixed: Gaussian (variance v) smoothing of e^{-k|x|}/(2k).
inline double f1_sigma(double k, double v, double x) {
  const double s = std::sqrt(2.0 * v);
  const double e = std::exp(k * k * v / 2.0);
  const double erf_minus = std::erf((x - k * v) / s);
  const double erf_plus = std::erf((x + k * v) / s);
  return e / (4.0 * k) *
         (2.0 * std::cosh(k * x) - erf_plus * std::exp(k * x) + erf_minus * std::exp(-k * x));
}

// Adaptive Gauss-Kronrod over consecutive breakpoints.
inline double integrate(const std::function<double(double)>& f, std::vector<double> breaks,
                        double tol = 1e-12) {
  std::sort(breaks.begin(), breaks.end());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (breaks[i + 1] > breaks[i])
      s += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, breaks[i], breaks[i + 1],
                                                                         15, tol);
  return s;
}

// Sup norm over a vector of differences.
inline double sup(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace oracle

#endif  // KFOU_TESTS_ORACLES_HPP_
