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

#include "kfou/density.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "kfou/errors.hpp"
#include "kfou/kernel.hpp"

namespace kfou {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
using Legendre = boost::math::quadrature::gauss<double, 10>;

// Convolution of the fundamental solution with data, for one t.
class QuadratureEvaluator {
 public:
  QuadratureEvaluator(const ModelParams& params, const InitialData& init, double t, double tol)
      : init_(init),
        kernel_(fundamental_auto(params, t, 0.0)),
        decay_(std::exp(-params.beta() * t)),
        drift_(singular_location(params, t, 0.0)),
        tol_(tol) {}

  double operator()(double x) const {
    const double kink = (x - drift_) / decay_;
    auto integrand = [&](double y) {
      return evaluate_regular(kernel_.regular, x - y * decay_) * initial_value(init_, y);
    };
    double total = 0.0;
    if (!kernel_.regular.empty()) {
      std::vector<double> cuts = support_breaks();
      cuts.push_back(kink);
      std::sort(cuts.begin(), cuts.end());
      const double lo = cuts.front() == kink ? cuts[1] : cuts.front();
      const double hi = cuts.back() == kink ? cuts[cuts.size() - 2] : cuts.back();
      std::vector<double> pts;
      for (double c : cuts)
        if (c >= lo && c <= hi) pts.push_back(c);
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      const bool sampled = std::holds_alternative<SampledData>(init_);
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (sampled) {
          total += Legendre::integrate(integrand, pts[i], pts[i + 1]);
        } else {
          total += Kronrod::integrate(integrand, pts[i], pts[i + 1], 15, tol_);
        }
      }
    }
    if (kernel_.atom_weight > 0.0) {
      total += kernel_.atom_weight / decay_ * initial_value(init_, kink);
    }
    return total;
  }

 private:
  std::vector<double> support_breaks() const {
    if (const auto* g = std::get_if<GaussianData>(&init_)) {
      const double s = std::sqrt(g->variance);
      std::vector<double> b;
      for (int i = -40; i <= 40; i += 4) b.push_back(g->center + i * s);
      return b;
    }
    if (const auto* st = std::get_if<StepData>(&init_)) {
      return {-st->a - 0.5, -st->a + 0.5};
    }
    return std::get<SampledData>(init_).x;
  }

  const InitialData& init_;
  KernelResult kernel_;
  double decay_;
  double drift_;
  double tol_;
};

Expr initial_expr_step(const StepData& s, const ModelParams& params, double t) {
  const double E = std::exp(-params.beta() * t);
  const double drift = singular_location(params, t, 0.0);
  const double left = (-s.a - 0.5) * E + drift;
  const double right = (-s.a + 0.5) * E + drift;
  const double q = singular_amplitude(params, t);
  const double growth = 1.0 / E;
  if (params.alpha() == 0.0) {
    return Expr{Step{growth, left, 1}, Step{-growth, right, 1}};
  }
  // alpha == 1: regular kernel (k/2)(1 - e^{-2 beta t}) e^{-k|s|} integrated
  // against the stretched indicator, plus the pushforward of the data.
  const double amp = growth * -std::expm1(-2.0 * params.beta() * t);
  const double k = params.k();
  const double jump = amp + q * growth;
  return Expr{Step{jump, left, 1}, Step{-jump, right, 1},
              ExpAbs{-0.5 * amp, 0, true, k, left}, ExpAbs{0.5 * amp, 0, true, k, right}};
}

bool same_location(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

void add_jump(std::vector<Discontinuity>& out, double location, int order, double jump) {
  for (auto& d : out) {
    if (d.order == order && same_location(d.location, location)) {
      d.jump += jump;
      return;
    }
  }
  out.push_back({location, order, jump});
}

}  // namespace

SampledData SampledData::ingest(std::vector<double> x, std::vector<double> values) {
  if (x.size() != values.size() || x.size() < 2) {
    throw ConfigError("sampled data needs matching x and value columns with at least 2 rows");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw ConfigError("sampled data x column must be strictly increasing");
  }
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError("sampled density values must be finite and nonnegative");
    }
  }
  double mass = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    mass += 0.5 * (values[i] + values[i - 1]) * (x[i] - x[i - 1]);
  }
  if (!(mass > 0.0)) throw ConfigError("sampled density has zero mass");
  for (double& v : values) v /= mass;
  SampledData s;
  s.x = std::move(x);
  s.values = std::move(values);
  s.ingest_mass = mass;
  return s;
}

double SampledData::operator()(double at) const {
  if (at < x.front() || at > x.back()) return 0.0;
  auto it = std::upper_bound(x.begin(), x.end(), at);
  if (it == x.end()) return values.back();
  const std::size_t i = static_cast<std::size_t>(it - x.begin());
  const double w = (at - x[i - 1]) / (x[i] - x[i - 1]);
  return (1.0 - w) * values[i - 1] + w * values[i];
}

double initial_value(const InitialData& init, double x) {
  if (const auto* g = std::get_if<GaussianData>(&init)) {
    const double d = x - g->center;
    return std::exp(-d * d / (2.0 * g->variance)) /
           std::sqrt(2.0 * std::numbers::pi * g->variance);
  }
  if (const auto* s = std::get_if<StepData>(&init)) {
    const double lo = -s->a - 0.5;
    const double hi = -s->a + 0.5;
    if (x > lo && x < hi) return 1.0;
    if (x == lo || x == hi) return 0.5;
    return 0.0;
  }
  return std::get<SampledData>(init)(x);
}

Branch parse_branch(const std::string& name) {
  if (name == "auto") return Branch::Auto;
  if (name == "closed" || name == "closed_form") return Branch::ClosedForm;
  if (name == "quadrature") return Branch::Quadrature;
  throw ConfigError("unknown branch '" + name + "' (expected auto, closed or quadrature)");
}

std::string to_string(Branch b) {
  switch (b) {
    case Branch::Auto:
      return "auto";
    case Branch::ClosedForm:
      return "closed_form";
    case Branch::Quadrature:
      return "quadrature";
  }
  return "auto";
}

double EvolvedDensity::value_at(int i) const {
  if (branch == Branch::ClosedForm) return evaluate_regular(expr, grid.at(i));
  return values(i);
}

Eigen::ArrayXd EvolvedDensity::sample(const UniformGrid& g) const {
  if (branch == Branch::ClosedForm) return evaluate_regular(expr, g.points());
  if (g.min != grid.min || g.max != grid.max || g.count != grid.count) {
    throw ConfigError("quadrature output exists only on its own grid");
  }
  return values;
}

bool closed_form_available(const ModelParams& params, const InitialData& init) {
  const ResonanceClass rc = resonance(params);
  if (std::holds_alternative<GaussianData>(init)) return rc.kind != ResonanceClass::Kind::General;
  if (std::holds_alternative<StepData>(init)) {
    return params.sigma() == 0.0 &&
           (rc.kind == ResonanceClass::Kind::Zero || (rc.is_integer() && rc.n == 1));
  }
  return false;
}

EvolvedDensity evolve(const ModelParams& params, const InitialData& init, double t,
                      const EvolveOptions& opts) {
  time_coeffs(params, t);
  if (const auto* g = std::get_if<GaussianData>(&init)) {
    if (!(g->variance > 0.0)) throw ConfigError("Gaussian data needs a positive variance");
  }
  Branch branch = opts.branch;
  if (branch == Branch::Auto) {
    branch = closed_form_available(params, init) ? Branch::ClosedForm : Branch::Quadrature;
  }
  EvolvedDensity out;
  out.t = t;
  out.branch = branch;
  out.grid = opts.grid;

  if (branch == Branch::ClosedForm) {
    if (!closed_form_available(params, init)) {
      if (resonance(params).kind == ResonanceClass::Kind::General) {
        throw DomainError("closed-form evolution needs integer alpha, got " +
                          resonance(params).describe());
      }
      throw UnsupportedError("no closed form for this initial data at these parameters");
    }
    if (const auto* g = std::get_if<GaussianData>(&init)) {
      const double E = std::exp(-params.beta() * t);
      const double v = diffusion_variance(params, t) + g->variance * E * E;
      const Expr kernel = plain_kernel_sum(params, t);
      out.expr = shift(convolve_gaussian(kernel, v),
                       g->center * E + singular_location(params, t, 0.0));
    } else {
      out.expr = initial_expr_step(std::get<StepData>(init), params, t);
    }
    return out;
  }

  const QuadratureEvaluator eval(params, init, t, opts.quad_tol);
  out.values.resize(opts.grid.count);
  for (int i = 0; i < opts.grid.count; ++i) out.values(i) = eval(opts.grid.at(i));
  return out;
}

double evolve_point(const ModelParams& params, const InitialData& init, double t, double x,
                    double quad_tol) {
  time_coeffs(params, t);
  return QuadratureEvaluator(params, init, t, quad_tol)(x);
}

std::vector<Discontinuity> weak_discontinuity_report(const Expr& e, int max_order) {
  std::vector<Discontinuity> out;
  double scale = 0.0;
  std::vector<BasisTerm> smooth_terms;
  const Expr regular = e.regular_part();
  for (const auto& term : regular.terms()) {
    scale = std::max(scale, std::abs(term_coeff(term)));
    if (const auto* s = std::get_if<Step>(&term)) {
      add_jump(out, s->threshold, 0, s->orientation * s->coeff);
    } else {
      smooth_terms.push_back(term);
    }
  }
  Expr current(std::move(smooth_terms));
  for (int order = 0; order <= max_order && !current.empty(); ++order) {
    current = differentiate(current);
    for (const auto& d : current.atoms()) add_jump(out, d.center, order, d.weight);
    current = current.regular_part();
  }
  const double floor = 1e-12 * std::max(1.0, scale);
  std::erase_if(out, [floor](const Discontinuity& d) { return std::abs(d.jump) <= floor; });
  std::sort(out.begin(), out.end(), [](const Discontinuity& a, const Discontinuity& b) {
    return a.location != b.location ? a.location < b.location : a.order < b.order;
  });
  return out;
}

nlohmann::json to_json(const std::vector<Discontinuity>& report) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : report) {
    arr.push_back({{"location", d.location}, {"order", d.order}, {"jump", d.jump}});
  }
  return arr;
}

}  // namespace kfou
