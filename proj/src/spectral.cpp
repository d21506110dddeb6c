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

#include "kfou/spectral.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "kfou/errors.hpp"

namespace kfou {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr long kMaxNodes = 1L << 21;

using Panel = boost::math::quadrature::gauss<double, 20>;

// Even real part of the subtracted transform in the x-bar frame, sigma == 0:
// psi(w) = q ((1 + r u)^alpha - 1), u = k^2/(k^2 + w^2), r = e^{2 beta t} - 1.
struct Profile {
  double k = 1.0;
  double alpha = 0.0;
  double q = 1.0;
  double logq = 0.0;
  double r = 0.0;
  double logr = 0.0;

  Profile(const ModelParams& p, double t)
      : k(p.k()),
        alpha(p.alpha()),
        q(singular_amplitude(p, t)),
        logq(-p.lambda() * t),
        r(std::expm1(2.0 * p.beta() * t)),
        logr(std::log(std::expm1(2.0 * p.beta() * t))) {}

  double u(double w) const { return k * k / (k * k + w * w); }

  double psi(double w) const {
    const double L = alpha * std::log1p(r * u(w));
    if (L < 1.0) return q * std::expm1(L);
    return std::exp(logq + L) - q;
  }

  void derivatives(double w, double& d1, double& d2) const {
    const double k2 = k * k;
    const double uu = u(w);
    const double lp = std::log1p(r * uu);
    const double g1 = alpha * std::exp(logq + logr + (alpha - 1.0) * lp);
    const double g2 = alpha * (alpha - 1.0) * std::exp(logq + 2.0 * logr + (alpha - 2.0) * lp);
    const double u1 = -2.0 * w * uu * uu / k2;
    const double u2 = -2.0 * uu * uu / k2 + 8.0 * w * w * uu * uu * uu / (k2 * k2);
    d1 = g1 * u1;
    d2 = g2 * u1 * u1 + g1 * u2;
  }

  // Coefficients of w^-2, w^-4, w^-6 in the large-w expansion of psi.
  void asymptotics(double& a1, double& a2, double& a3) const {
    const double c2 = alpha * (alpha - 1.0) / 2.0;
    const double c3 = c2 * (alpha - 2.0) / 3.0;
    const double k2 = k * k;
    // q r^j computed in log space; r may be astronomically large.
    auto qr = [&](int j) { return std::exp(logq + j * logr); };
    a1 = alpha * qr(1) * k2;
    a2 = (-alpha * qr(1) + c2 * qr(2)) * k2 * k2;
    a3 = (alpha * qr(1) - 2.0 * c2 * qr(2) + c3 * qr(3)) * k2 * k2 * k2;
  }
};

// Rational subtraction S(w) = c U + d U^2 with U = g^2/(g^2 + w^2), g = 2k,
// matching psi to O(w^-6). Its inverse transform is known in closed form.
struct Subtraction {
  double g = 2.0;
  double c = 0.0;
  double d = 0.0;
  double a3_rest = 0.0;

  explicit Subtraction(const Profile& p) : g(2.0 * p.k) {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    p.asymptotics(a1, a2, a3);
    const double g2 = g * g;
    c = a1 / g2;
    d = (a2 + a1 * g2) / (g2 * g2);
    a3_rest = a3 - c * g2 * g2 * g2 + 2.0 * d * g2 * g2 * g2;
  }

  double operator()(double w) const {
    const double U = g * g / (g * g + w * w);
    return c * U + d * U * U;
  }

  double inverse(double x) const {
    const double ax = std::abs(x);
    const double e = std::exp(-g * ax);
    return c * 0.5 * g * e + d * 0.25 * g * (1.0 + g * ax) * e;
  }
};

// Integral of f over [a, b] on panels that grow geometrically with w and
// never exceed max_width.
template <class F>
double panel_integral(F&& f, double a, double b, double scale, double max_width) {
  double total = 0.0;
  double lo = a;
  while (lo < b) {
    const double width = std::min(max_width, 0.25 * std::max(scale, lo));
    const double hi = std::min(b, lo + width);
    total += Panel::integrate(f, lo, hi);
    lo = hi;
  }
  return total;
}

struct TrapezoidPlan {
  double W = 0.0;
  double h = 0.0;
  long nodes = 0;
  double tail = 0.0;
};

// Frequency cutoff for the subtracted sigma == 0 integrand, or nothing when
// the node count would exceed the budget.
std::optional<TrapezoidPlan> plan_subtracted(const Profile& p, const Subtraction& s,
                                             double span, double tol) {
  TrapezoidPlan plan;
  const double L = 2.0 * span + 80.0 / p.k;
  plan.h = 2.0 * kPi / L;
  double W = 8.0 * p.k * std::sqrt(1.0 + p.r);
  auto remainder = [&](double w) { return std::abs(p.psi(w) - s(w)); };
  for (int iter = 0; iter < 60; ++iter) {
    const double far = 64.0 * W;
    double tail = panel_integral(remainder, W, far, W, std::numeric_limits<double>::max());
    tail += std::abs(s.a3_rest) / (5.0 * std::pow(far, 5));
    if (W / plan.h > static_cast<double>(kMaxNodes)) return std::nullopt;
    if (tail / kPi <= 0.1 * tol) {
      plan.W = W;
      plan.tail = tail / kPi;
      plan.nodes = static_cast<long>(std::ceil(W / plan.h));
      return plan;
    }
    W *= 2.0;
  }
  return std::nullopt;
}

// h/pi [f_0/2 + sum_j f_j cos(j h x)] with a rotation recurrence.
double cosine_sum(const std::vector<double>& f, double h, double x) {
  double total = 0.5 * f[0];
  const double ch = std::cos(h * x);
  const double sh = std::sin(h * x);
  double c = 1.0;
  double s = 0.0;
  for (std::size_t j = 1; j < f.size(); ++j) {
    if (j % 1024 == 0) {
      c = std::cos(j * h * x);
      s = std::sin(j * h * x);
    } else {
      const double cn = c * ch - s * sh;
      s = s * ch + c * sh;
      c = cn;
    }
    total += f[j] * c;
  }
  return h / kPi * total;
}

// -1/(pi x^2) times the integral of psi'' cos(w x) over [0, inf).
double invert_by_parts(const Profile& p, double x, double tol, double& err) {
  const double ax = std::abs(x);
  double W = 4.0 * p.k;
  double d1 = 0.0;
  double d2 = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    p.derivatives(W, d1, d2);
    if (std::abs(d1) / (kPi * ax * ax) <= 0.1 * tol) break;
    W *= 1.5;
  }
  err = std::abs(d1) / (kPi * ax * ax);
  auto integrand = [&](double w) {
    double a = 0.0;
    double b = 0.0;
    p.derivatives(w, a, b);
    return b * std::cos(w * ax);
  };
  const double integral = panel_integral(integrand, 0.0, W, p.k, kPi / ax);
  return -integral / (kPi * ax * ax);
}

// (1/pi) integral of psi over [0, inf), for the point x-bar = 0.
double invert_at_center(const Profile& p, double tol, double& err) {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  p.asymptotics(a1, a2, a3);
  const double bound_coeff = 2.0 * std::max(1.0, p.alpha) * a1;
  double W = std::max(100.0 * p.k * std::sqrt(1.0 + p.r), bound_coeff / (0.1 * kPi * tol));
  err = bound_coeff / (W * kPi);
  auto integrand = [&](double w) { return p.psi(w); };
  return panel_integral(integrand, 0.0, W, p.k, std::numeric_limits<double>::max()) / kPi;
}

bool at_center(double xbar, double x, double xs) {
  return std::abs(xbar) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(xs)});
}

}  // namespace

std::complex<double> log_char_value(const CharFn& cf, double w) {
  const TimeCoeffs tc = time_coeffs(cf.params, cf.t);
  const double k = cf.params.k();
  const double c = -std::expm1(-2.0 * cf.params.beta() * cf.t);
  // base = 1 - c w^2/(k^2 + w^2), in (0, 1]
  const double drop = c * w * w / (k * k + w * w);
  const double log_base = std::log1p(-drop);
  const double xs = singular_location(cf.params, cf.t, cf.y);
  return {cf.params.alpha() * log_base + tc.a2 * w * w, -w * xs};
}

std::complex<double> char_value(const CharFn& cf, double w) {
  const std::complex<double> l = log_char_value(cf, w);
  return std::exp(l.real()) * std::complex<double>(std::cos(l.imag()), std::sin(l.imag()));
}

double singular_weight(const CharFn& cf) {
  if (cf.params.sigma() == 0.0 || cf.t == 0.0) return singular_amplitude(cf.params, cf.t);
  return 0.0;
}

std::complex<double> subtract_singular(const CharFn& cf, double w) {
  const double q = singular_weight(cf);
  if (q == 0.0) return char_value(cf, w);
  const std::complex<double> l = log_char_value(cf, w);
  // q e^{-i w x_s} (base^alpha e^{A2 w^2} / q - 1), evaluated without cancellation
  // when the ratio is close to one.
  const double ratio_log = l.real() + cf.params.lambda() * cf.t;
  const double mag = q * std::expm1(ratio_log);
  return mag * std::complex<double>(std::cos(l.imag()), std::sin(l.imag()));
}

Eigen::ArrayXd UniformGrid::points() const {
  Eigen::ArrayXd x(count);
  for (int i = 0; i < count; ++i) x(i) = at(i);
  return x;
}

UniformGrid UniformGrid::parse(const std::string& spec) {
  std::istringstream is(spec);
  UniformGrid g;
  char c1 = 0;
  char c2 = 0;
  if (!(is >> g.min >> c1 >> g.max >> c2 >> g.count) || c1 != ':' || c2 != ':' ||
      !is.eof()) {
    throw ConfigError("grid must be given as min:max:count, got '" + spec + "'");
  }
  if (g.count < 2 || !(g.max > g.min)) {
    throw ConfigError("grid needs max > min and at least two points, got '" + spec + "'");
  }
  return g;
}

double SpectralGrid::trapezoid_mass() const {
  const double dx = grid.spacing();
  double total = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values(i))) continue;
    const double w = (i == 0 || i + 1 == values.size()) ? 0.5 : 1.0;
    total += w * values(i);
  }
  return total * dx;
}

SpectralGrid invert_grid(const CharFn& cf, const UniformGrid& grid, bool subtract,
                         double quad_tol) {
  if (grid.count < 1) throw ConfigError("grid must contain at least one point");
  if (!(quad_tol > 0.0)) throw ConfigError("quad_tol must be positive");
  const ModelParams& p = cf.params;
  time_coeffs(p, cf.t);
  const double xs = singular_location(p, cf.t, cf.y);
  const Eigen::ArrayXd x = grid.points();
  const Eigen::ArrayXd xbar = x - xs;

  SpectralGrid out;
  out.grid = grid;
  out.values = Eigen::ArrayXd::Zero(grid.count);
  out.singular_subtracted = subtract;
  out.atom_center = xs;

  const bool pure_atom = (p.sigma() == 0.0 || cf.t == 0.0) && (cf.t == 0.0 || p.alpha() == 0.0);
  if (pure_atom) {
    if (subtract) {
      out.atom_weight = 1.0;
      out.method = "atom";
      return out;
    }
    // Band-limited delta: W = pi/dx reproduces 1/dx on the atom's grid node.
    const double dx = grid.spacing() > 0.0 ? grid.spacing() : 1.0;
    const double W = kPi / dx;
    for (int i = 0; i < grid.count; ++i) {
      const double z = xbar(i);
      out.values(i) = std::abs(z) < 1e-12 * dx ? W / kPi : std::sin(W * z) / (kPi * z);
    }
    out.method = "band_limited_delta";
    return out;
  }

  double W_used = 0.0;
  if (p.sigma() == 0.0) {
    if (!subtract) {
      throw DomainError(
          "transform does not decay for sigma = 0 and lambda > 0; subtract the singular part");
    }
    out.atom_weight = singular_weight(cf);
    const Profile prof(p, cf.t);
    const bool singular = prof.alpha <= 0.5;
    std::vector<int> regular_idx;
    double span = 0.0;
    for (int i = 0; i < grid.count; ++i) {
      if (singular && at_center(xbar(i), x(i), xs)) {
        out.flagged.push_back(i);
        out.values(i) = std::numeric_limits<double>::quiet_NaN();
      } else {
        regular_idx.push_back(i);
        span = std::max(span, std::abs(xbar(i)));
      }
    }
    const Subtraction sub(prof);
    const auto plan = plan_subtracted(prof, sub, span, quad_tol);
    if (plan) {
      std::vector<double> f(plan->nodes + 1);
      for (long j = 0; j <= plan->nodes; ++j) {
        const double w = j * plan->h;
        f[j] = prof.psi(w) - sub(w);
      }
      double fmax = 0.0;
      for (double v : f) fmax = std::max(fmax, std::abs(v));
      for (int i : regular_idx) {
        out.values(i) = cosine_sum(f, plan->h, xbar(i)) + sub.inverse(xbar(i));
      }
      const double L = 2.0 * kPi / plan->h;
      const double alias = prof.k * std::exp(-prof.k * (L - span)) *
                           std::pow(std::max(1.0, prof.k * L), std::max(prof.alpha, 1.0));
      out.err_estimate = plan->tail + alias + 4.0 * kEps * fmax * plan->W / kPi;
      out.method = "trapezoid_subtracted";
      W_used = plan->W;
    } else {
      double worst = 0.0;
      for (int i : regular_idx) {
        double err = 0.0;
        if (at_center(xbar(i), x(i), xs)) {
          out.values(i) = invert_at_center(prof, quad_tol, err);
        } else {
          out.values(i) = invert_by_parts(prof, xbar(i), quad_tol, err);
        }
        worst = std::max(worst, err);
      }
      out.err_estimate = worst;
      out.method = "integration_by_parts";
      W_used = 4.0 * prof.k * std::sqrt(1.0 + prof.r);
    }
  } else {
    const TimeCoeffs tc = time_coeffs(p, cf.t);
    const double a2 = -tc.a2;
    const double v = 2.0 * a2;
    const double k = p.k();
    const double c = -std::expm1(-2.0 * p.beta() * cf.t);
    const double alpha = p.alpha();
    double span = 0.0;
    for (int i = 0; i < grid.count; ++i) span = std::max(span, std::abs(xbar(i)));
    const double L = 2.0 * span + 80.0 / k + 16.0 * std::sqrt(v);
    const double h = 2.0 * kPi / L;
    double W = std::sqrt(1.0 / a2);
    while (std::exp(-a2 * W * W) / (2.0 * a2 * W) / kPi > 0.1 * quad_tol) W *= 1.25;
    const long nodes = static_cast<long>(std::ceil(W / h));
    if (nodes > 2 * kMaxNodes) {
      throw SingularityError("requested quad_tol needs too many frequency nodes at this t");
    }
    std::vector<double> f(nodes + 1);
    for (long j = 0; j <= nodes; ++j) {
      const double w = j * h;
      const double drop = c * w * w / (k * k + w * w);
      f[j] = std::exp(alpha * std::log1p(-drop) - a2 * w * w);
    }
    for (int i = 0; i < grid.count; ++i) out.values(i) = cosine_sum(f, h, xbar(i));
    const double alias = k * std::exp(-k * (L - span - 8.0 * std::sqrt(v)));
    out.err_estimate = std::exp(-a2 * W * W) / (2.0 * a2 * W) / kPi + alias +
                       4.0 * kEps * W / kPi;
    out.method = "trapezoid_gaussian";
    W_used = W;
  }

  // Hermitian defect of the complex transform over the frequencies used.
  double defect = 0.0;
  for (int j = 1; j <= 64; ++j) {
    const double w = W_used * j / 64.0;
    defect = std::max(defect, std::abs(char_value(cf, -w) - std::conj(char_value(cf, w))));
  }
  out.imag_residue = defect * W_used / kPi;
  return out;
}

double invert_point(const CharFn& cf, double x, double quad_tol) {
  const double xs = singular_location(cf.params, cf.t, cf.y);
  if (cf.params.sigma() == 0.0 && cf.t > 0.0 && cf.params.alpha() > 0.0 &&
      cf.params.alpha() <= 0.5 && at_center(x - xs, x, xs)) {
    throw SingularityError("regular part has an integrable singularity at x-bar = 0");
  }
  const SpectralGrid g = invert_grid(cf, UniformGrid{x, x, 1}, true, quad_tol);
  return g.values(0);
}

CharMoments moments_from_char(const CharFn& cf) {
  const double k = cf.params.k();
  const double xs = singular_location(cf.params, cf.t, cf.y);
  const double scale = 0.5 * std::min(k, 1.0 / std::max(1.0, std::abs(xs)));
  constexpr int kLevels = 6;
  double mean_tab[kLevels][kLevels];
  double var_tab[kLevels][kLevels];
  double h = scale;
  for (int i = 0; i < kLevels; ++i) {
    const std::complex<double> lp = log_char_value(cf, h);
    const std::complex<double> lm = log_char_value(cf, -h);
    mean_tab[i][0] = -(lp.imag() - lm.imag()) / (2.0 * h);
    var_tab[i][0] = -(lp.real() + lm.real()) / (h * h);
    double factor = 4.0;
    for (int j = 1; j <= i; ++j) {
      mean_tab[i][j] = mean_tab[i][j - 1] + (mean_tab[i][j - 1] - mean_tab[i - 1][j - 1]) / (factor - 1.0);
      var_tab[i][j] = var_tab[i][j - 1] + (var_tab[i][j - 1] - var_tab[i - 1][j - 1]) / (factor - 1.0);
      factor *= 4.0;
    }
    h *= 0.5;
  }
  return {mean_tab[kLevels - 1][kLevels - 1], var_tab[kLevels - 1][kLevels - 1]};
}

}  // namespace kfou
