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

#include "kfou/kernel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "kfou/errors.hpp"
#include "kfou/expr_json.hpp"
#include "kfou/special.hpp"
#include "poly.hpp"

namespace kfou {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Removes delta terms, returning the largest removed weight.
double strip_atoms(Expr& e) {
  double largest = 0.0;
  for (const auto& d : e.atoms()) largest = std::max(largest, std::abs(d.weight));
  if (largest > 0.0) e = e.regular_part();
  return largest;
}

double generalized_binomial(double a, int j) {
  double r = 1.0;
  for (int i = 0; i < j; ++i) r *= (a - i) / (i + 1);
  return r;
}

// Fourier L1 bound on the regular part of D^{2j}[F_j]:
// (k/2) sum_{i<j} C(2i,i)/4^i.
double derivative_sup_bound(double k, int j) {
  double total = 0.0;
  double central = 1.0;
  for (int i = 0; i < j; ++i) {
    total += central;
    central *= (2.0 * i + 1.0) / (2.0 * i + 2.0);
  }
  return 0.5 * k * total;
}

KernelResult initial_delta(const ModelParams& params, double y, const std::string& method) {
  KernelResult kr;
  kr.t = 0.0;
  kr.y = y;
  kr.atom_weight = 1.0;
  kr.atom_center = y;
  kr.meta.alpha = params.alpha();
  kr.meta.resonance = resonance(params);
  kr.meta.method = method;
  kr.meta.delta_weight = 1.0;
  return kr;
}

// Places the x-bar-frame expression at the singular location and applies the
// Gaussian factor when sigma > 0.
void finish(KernelResult& kr, const ModelParams& params, Expr sum) {
  const double xs = singular_location(params, kr.t, kr.y);
  double delta = 0.0;
  for (const auto& d : sum.atoms()) delta += d.weight;
  kr.meta.delta_weight = delta;
  kr.atom_center = xs;
  const double v = diffusion_variance(params, kr.t);
  if (v > 0.0) {
    kr.regular = shift(convolve_gaussian(sum, v), xs);
    kr.atom_weight = 0.0;
  } else {
    kr.regular = shift(sum.regular_part(), xs);
    kr.atom_weight = delta;
  }
}

}  // namespace

Expr fn_plain(double k, int n) {
  if (n < 1) throw DomainError("F_n is defined for n >= 1");
  Expr f{Delta{1.0, 0.0}};
  for (int i = 0; i < n; ++i) f = screened_inverse(f, k);
  return f;
}

Expr fn(const ModelParams& params, double t, int n) {
  Expr plain = fn_plain(params.k(), n);
  const double v = diffusion_variance(params, t);
  if (v > 0.0) return convolve_gaussian(plain, v);
  return plain;
}

Expr f1(const ModelParams& params, double t) { return fn(params, t, 1); }

Expr plain_kernel_sum(const ModelParams& params, double t, double* dropped_out) {
  const ResonanceClass rc = resonance(params);
  if (rc.kind == ResonanceClass::Kind::General) {
    throw DomainError("finite sum requires integer alpha, got " + rc.describe());
  }
  time_coeffs(params, t);
  if (t == 0.0 || rc.kind == ResonanceClass::Kind::Zero) return Expr{Delta{1.0, 0.0}};

  const int n = rc.n;
  const double k = params.k();
  const double decay = std::exp(-2.0 * params.beta() * t);
  Expr derivative = fn_plain(k, n);
  Expr sum;
  double dropped = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double c = ((j % 2) ? -1.0 : 1.0) * detail::binomial(n, j) *
                     std::pow(k, 2.0 * (n - j)) * std::pow(decay, j);
    sum += c * derivative;
    if (j == n) break;
    derivative = differentiate(derivative);
    dropped = std::max(dropped, strip_atoms(derivative));
    derivative = differentiate(derivative);
    if (j + 1 < n) dropped = std::max(dropped, strip_atoms(derivative));
  }
  if (dropped_out) *dropped_out = dropped;

  double delta = 0.0;
  for (const auto& d : sum.atoms()) delta += d.weight;
  const double expected = std::pow(decay, n);
  if (std::abs(delta - expected) > 1e-8 * expected + 1e-300) {
    throw Error("finite sum produced delta weight " + std::to_string(delta) + ", expected " +
                std::to_string(expected));
  }
  return sum;
}

KernelResult fundamental_finite_sum(const ModelParams& params, double t, double y) {
  const ResonanceClass rc = resonance(params);
  if (!rc.is_integer()) {
    throw DomainError("finite sum requires alpha to be a positive integer, got " +
                      rc.describe());
  }
  time_coeffs(params, t);
  if (t == 0.0) return initial_delta(params, y, "finite_sum");

  KernelResult kr;
  kr.t = t;
  kr.y = y;
  kr.meta.alpha = rc.alpha;
  kr.meta.resonance = rc;
  kr.meta.method = "finite_sum";
  kr.meta.terms_used = rc.n + 1;
  const Expr sum = plain_kernel_sum(params, t, &kr.meta.dropped_residue);
  finish(kr, params, sum);
  return kr;
}

KernelResult fundamental_series(const ModelParams& params, double t, double y, double tol,
                                int max_terms) {
  if (!(tol > 0.0)) throw ConfigError("series tolerance must be positive");
  if (max_terms < 1) throw ConfigError("max_terms must be at least 1");
  time_coeffs(params, t);
  const ResonanceClass rc = resonance(params);
  if (t == 0.0 || rc.kind == ResonanceClass::Kind::Zero) {
    KernelResult kr = initial_delta(params, y, "series");
    kr.t = t;
    kr.meta.terms_used = 1;
    finish(kr, params, Expr{Delta{1.0, 0.0}});
    return kr;
  }

  const double a = rc.is_integer() ? static_cast<double>(rc.n) : rc.alpha;
  const double k = params.k();
  const double c = -std::expm1(-2.0 * params.beta() * t);

  KernelResult kr;
  kr.t = t;
  kr.y = y;
  kr.meta.alpha = rc.alpha;
  kr.meta.resonance = rc;
  kr.meta.method = "series";
  kr.meta.singular_at_center = params.sigma() == 0.0 && rc.alpha <= 0.5;

  // D^{2j}[F_j] = (-1)^j [delta + sum_{i=1}^j C(j,i) (-k^2)^i F_i]
  std::vector<Expr> f_cache{Expr{Delta{1.0, 0.0}}};
  Expr sum{Delta{1.0, 0.0}};
  double rounding = 0.0;
  double tail = 0.0;
  int used = 1;
  const int limit = rc.is_integer() ? std::min(rc.n, max_terms - 1) : max_terms - 1;
  for (int j = 1; j <= limit; ++j) {
    const double coeff = generalized_binomial(a, j) * std::pow(c, j);
    f_cache.push_back(screened_inverse(f_cache.back(), k));
    Expr dj;
    double k2i = 1.0;
    for (int i = 0; i <= j; ++i) {
      dj += (detail::binomial(j, i) * k2i) * f_cache[i];
      k2i *= -k * k;
    }
    const double signed_coeff = ((j % 2) ? -1.0 : 1.0) * coeff;
    sum += signed_coeff * dj;
    used = j + 1;
    rounding += 8.0 * kEps * std::abs(coeff) * std::pow(2.0, j) * k;

    if (rc.is_integer()) continue;
    // Tail bound over the remaining terms, built incrementally.
    tail = 0.0;
    bool converged = false;
    double gb = generalized_binomial(a, j);
    double cp = std::pow(c, j);
    double bound = derivative_sup_bound(k, j);
    double central = 1.0;
    for (int i = 0; i < j; ++i) central *= (2.0 * i + 1.0) / (2.0 * i + 2.0);
    for (int i = j + 1; i < j + 200000; ++i) {
      gb *= (a - (i - 1)) / i;
      cp *= c;
      bound += 0.5 * k * central;
      central *= (2.0 * (i - 1) + 1.0) / (2.0 * (i - 1) + 2.0);
      const double b = std::abs(gb) * cp * bound;
      tail += b;
      if (b == 0.0 || b < 1e-9 * tail) {
        converged = true;
        break;
      }
    }
    if (!converged) tail = std::numeric_limits<double>::infinity();
    const double next_rounding =
        8.0 * kEps * std::abs(generalized_binomial(a, j + 1)) * std::pow(c, j + 1) *
        std::pow(2.0, j + 1) * k;
    if (tail < tol || next_rounding > tail) break;
  }
  if (rc.is_integer()) tail = 0.0;
  kr.meta.terms_used = used;
  kr.meta.truncation_error = tail + rounding;
  finish(kr, params, sum);
  return kr;
}

KernelResult fundamental_auto(const ModelParams& params, double t, double y, double tol,
                              int max_terms) {
  if (resonance(params).is_integer()) return fundamental_finite_sum(params, t, y);
  return fundamental_series(params, t, y, tol, max_terms);
}

double kernel_value(const KernelResult& kr, double x) {
  if (kr.meta.singular_at_center && x == kr.atom_center) {
    throw SingularityError("regular part is unbounded at the singular location x = " +
                           std::to_string(x));
  }
  return evaluate_regular(kr.regular, x);
}

double kernel_mass(const KernelResult& kr) {
  return integrate_line(kr.regular) + kr.atom_weight;
}

double kernel_mean(const KernelResult& kr) {
  return moment(kr.regular, 1) + kr.atom_weight * kr.atom_center;
}

double kernel_variance(const KernelResult& kr) {
  const double m = kernel_mean(kr);
  const double second = moment(kr.regular, 2) + kr.atom_weight * kr.atom_center * kr.atom_center;
  return second - m * m;
}

StationaryDensity StationaryDensity::closed(Expr e) {
  StationaryDensity s;
  s.kind_ = Kind::Closed;
  s.expr_ = std::move(e);
  return s;
}

StationaryDensity StationaryDensity::bessel(double k, double center) {
  StationaryDensity s;
  s.kind_ = Kind::Bessel;
  s.k_ = k;
  s.center_ = center;
  return s;
}

double StationaryDensity::operator()(double x) const {
  if (kind_ == Kind::Closed) return evaluate_regular(expr_, x);
  const double r = std::abs(x - center_);
  if (r == 0.0) throw SingularityError("stationary density is unbounded at its center");
  return k_ / std::numbers::pi * bessel_k0(k_ * r);
}

StationaryDensity stationary_density(const ModelParams& params) {
  const ResonanceClass rc = resonance(params);
  const double k = params.k();
  if (rc.is_integer() && rc.n == 1) {
    Expr laplace{ExpAbs{0.5 * k, 0, false, k, 0.0}};
    if (params.sigma() > 0.0) {
      const double v = params.sigma() * params.sigma() / (2.0 * params.beta());
      laplace = convolve_gaussian(laplace, v);
    }
    return StationaryDensity::closed(shift(laplace, params.level()));
  }
  if (std::abs(rc.alpha - 0.5) <= resonance_tolerance(rc.alpha) && params.B() == 0.0 &&
      params.sigma() == 0.0) {
    return StationaryDensity::bessel(k, 0.0);
  }
  throw UnsupportedError("no printed closed form for the stationary density at alpha = " +
                         std::to_string(rc.alpha) + ", sigma = " +
                         std::to_string(params.sigma()) +
                         "; evaluate the spectral inversion at large t instead");
}

nlohmann::json to_json(const KernelResult& kr) {
  nlohmann::json meta{{"alpha", kr.meta.alpha},
                      {"resonance", kr.meta.resonance.describe()},
                      {"method", kr.meta.method},
                      {"terms_used", kr.meta.terms_used},
                      {"truncation_error", kr.meta.truncation_error},
                      {"delta_weight", kr.meta.delta_weight},
                      {"dropped_residue", kr.meta.dropped_residue},
                      {"singular_at_center", kr.meta.singular_at_center}};
  return {{"regular", to_json(kr.regular)}, {"atom_weight", kr.atom_weight},
          {"atom_center", kr.atom_center},  {"t", kr.t},
          {"y", kr.y},                      {"meta", meta}};
}

KernelResult kernel_from_json(const nlohmann::json& j) {
  try {
    KernelResult kr;
    kr.regular = expr_from_json(j.at("regular"));
    kr.atom_weight = j.at("atom_weight").get<double>();
    kr.atom_center = j.at("atom_center").get<double>();
    kr.t = j.at("t").get<double>();
    kr.y = j.at("y").get<double>();
    const auto& m = j.at("meta");
    kr.meta.alpha = m.at("alpha").get<double>();
    kr.meta.method = m.at("method").get<std::string>();
    kr.meta.terms_used = m.at("terms_used").get<int>();
    kr.meta.truncation_error = m.at("truncation_error").get<double>();
    kr.meta.delta_weight = m.at("delta_weight").get<double>();
    kr.meta.dropped_residue = m.at("dropped_residue").get<double>();
    kr.meta.singular_at_center = m.at("singular_at_center").get<bool>();
    kr.meta.resonance.alpha = kr.meta.alpha;
    const double nearest = std::round(kr.meta.alpha);
    if (kr.meta.alpha == 0.0) {
      kr.meta.resonance.kind = ResonanceClass::Kind::Zero;
    } else if (nearest >= 1.0 &&
               std::abs(kr.meta.alpha - nearest) <= resonance_tolerance(kr.meta.alpha)) {
      kr.meta.resonance.kind = ResonanceClass::Kind::Integer;
      kr.meta.resonance.n = static_cast<int>(nearest);
    } else {
      kr.meta.resonance.kind = ResonanceClass::Kind::General;
    }
    return kr;
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("malformed kernel JSON: ") + ex.what());
  }
}

}  // namespace kfou
