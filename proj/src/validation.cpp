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

#include "kfou/validation.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "kfou/density.hpp"
#include "kfou/errors.hpp"
#include "kfou/figures.hpp"
#include "kfou/io.hpp"
#include "kfou/kernel.hpp"
#include "kfou/mc.hpp"
#include "kfou/spectral.hpp"

namespace kfou {

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double v) { return format_double(v); }

CheckResult finish(std::string name, double measured, double tol, std::string detail) {
  CheckResult c;
  c.name = std::move(name);
  c.measured = measured;
  c.tolerance = tol;
  c.passed = std::isfinite(measured) && measured <= tol;
  c.detail = std::move(detail);
  return c;
}

double sup_diff(const Expr& e, const SpectralGrid& g) {
  const Eigen::ArrayXd v = evaluate_regular(e, g.grid.points());
  return (v - g.values).abs().maxCoeff();
}

// Max relative coefficient difference between two expressions with the same
// term structure; infinity when the structures differ.
double termwise_difference(const Expr& a, const Expr& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& ta = a.terms()[i];
    const auto& tb = b.terms()[i];
    if (!(with_coeff(ta, 1.0) == with_coeff(tb, 1.0))) return std::numeric_limits<double>::infinity();
    const double ca = term_coeff(ta);
    const double cb = term_coeff(tb);
    worst = std::max(worst, std::abs(ca - cb) / std::max(std::abs(ca), std::abs(cb)));
  }
  return worst;
}

ModelParams resonant(int n, double beta, double sigma, double k = 1.0, double B = 0.0) {
  return ModelParams(B, beta, sigma, 2.0 * n * beta, k);
}

CheckResult check_atom_weight(Suite suite) {
  const int n_max = suite == Suite::Full ? 8 : 4;
  double worst = 0.0;
  std::string where;
  for (int n = 1; n <= n_max; ++n)
    for (double beta : {0.5, 1.0, 2.0})
      for (double t : {0.1, 0.5, 1.0, 5.0}) {
        const KernelResult kr = fundamental_finite_sum(resonant(n, beta, 0.0), t, 0.0);
        const double want = std::exp(-2.0 * n * beta * t);
        const double rel = std::abs(kr.meta.delta_weight - want) / want;
        if (rel >= worst) {
          worst = rel;
          where = "n=" + std::to_string(n) + " beta=" + num(beta) + " t=" + num(t);
        }
      }
  return finish("atom-weight", worst, 1e-10,
                "max relative error of the extracted delta weight, worst at " + where);
}

CheckResult check_e10() {
  double worst = 0.0;
  bool structural = true;
  for (double k : {0.5, 1.0, 2.0})
    for (double beta : {0.5, 1.0, 2.0})
      for (double t : {0.1, 0.5, 2.0}) {
        const ModelParams p = resonant(1, beta, 0.0, k);
        const KernelResult kr = fundamental_finite_sum(p, t, 0.0);
        const double c = -std::expm1(-2.0 * beta * t);
        const Expr want{ExpAbs{0.5 * k * c, 0, false, k, kr.atom_center}};
        const double d = termwise_difference(kr.regular, want);
        structural = structural && std::isfinite(d);
        worst = std::max(worst, d);
        for (int i = -40; i <= 40; ++i) {
          const double x = kr.atom_center + 0.25 * i / k;
          const double v = evaluate_regular(kr.regular, x);
          worst = std::max(worst, std::abs(v - evaluate_regular(want, x)) / (0.5 * k * c));
        }
      }
  const KernelResult kr = fundamental_finite_sum(resonant(1, 1.0, 0.0), 0.5, 0.0);
  const double v0 = evaluate_regular(kr.regular, 0.0);
  const double want0 = 0.5 * (1.0 - std::exp(-1.0));
  worst = std::max(worst, std::abs(v0 - want0) / want0);
  if (!structural) worst = std::numeric_limits<double>::infinity();
  return finish("e10-closed-form", worst, 1e-14,
                "single Laplace term, max relative deviation; value at 0 for k=beta=1, t=0.5 is " +
                    num(v0));
}

CheckResult check_cross_oracle() {
  const UniformGrid grid{-10.0, 10.0, 401};
  double worst = 0.0;
  std::string where;
  for (int n : {1, 2, 3})
    for (double sigma : {0.0, 0.5})
      for (double t : {0.3, 1.0, 5.0}) {
        const ModelParams p = resonant(n, 1.0, sigma);
        const KernelResult kr = fundamental_finite_sum(p, t, 0.0);
        const SpectralGrid g = invert_grid({p, t, 0.0}, grid, true);
        const double d = sup_diff(kr.regular, g);
        if (d >= worst) {
          worst = d;
          where = "n=" + std::to_string(n) + " sigma=" + num(sigma) + " t=" + num(t);
        }
      }
  return finish("cross-oracle", worst, 1e-6,
                "sup |finite sum - spectral inversion| on 401 points of [-10,10], worst at " + where);
}

CheckResult check_mass_moments() {
  double mass = 0.0;
  double moments = 0.0;
  for (int n : {1, 2, 3})
    for (double sigma : {0.0, 0.5})
      for (double t : {0.3, 1.0, 5.0}) {
        const ModelParams p = resonant(n, 1.0, sigma, 1.0, 0.3);
        const double y = 0.7;
        const KernelResult kr = fundamental_finite_sum(p, t, y);
        const CharMoments cm = moments_from_char({p, t, y});
        mass = std::max(mass, std::abs(kernel_mass(kr) - 1.0));
        moments = std::max({moments, std::abs(kernel_mean(kr) - cm.mean),
                            std::abs(kernel_variance(kr) - cm.variance)});
      }
  CheckResult c = finish("mass-moments", std::max(mass / 1e-10, moments / 1e-8), 1.0,
                         "mass error " + num(mass) + " (tol 1e-10), moment error " + num(moments) +
                             " (tol 1e-8); measured is the larger error/tolerance ratio");
  return c;
}

CheckResult check_monte_carlo(std::uint64_t seed, int threads) {
  const ModelParams p = resonant(1, 1.0, 0.0);
  const double t = 1.0;
  const long paths = 100000;
  SimOptions so;
  so.threads = threads;
  const auto samples = simulate(p, 0.0, t, paths, seed, so);
  const KernelResult kr = fundamental_finite_sum(p, t, 0.0);
  const SimReport r = ks_against(samples, kr, seed);
  const double q = std::exp(-p.lambda() * t);
  const double se = std::sqrt(q * (1.0 - q) / paths);
  const double z = std::abs(r.atom_fraction - q) / se;
  return finish("monte-carlo", std::max(r.ks_distance / 0.01, z / 3.0), 1.0,
                "conditioned KS " + num(r.ks_distance) + " (tol 0.01) over " +
                    std::to_string(r.ks_count) + " paths; zero-jump fraction " +
                    num(r.atom_fraction) + " vs " + num(q) + ", " + num(z) +
                    " binomial stderr (tol 3)");
}

CheckResult check_mc_moments(std::uint64_t seed, int threads) {
  const ModelParams p = resonant(1, 1.0, 0.5, 1.0, 0.3);
  const double t = 1.0;
  const double y = 0.7;
  SimOptions so;
  so.threads = threads;
  const auto samples = simulate(p, y, t, 1000000, seed, so);
  const SimReport r = summarize(samples, seed);
  const CharMoments cm = moments_from_char({p, t, y});
  const double zm = std::abs(r.sample_mean - cm.mean) / r.mean_stderr;
  const double zv = std::abs(r.sample_variance - cm.variance) / r.variance_stderr;
  return finish("mc-moments", std::max(zm, zv), 4.0,
                "10^6 paths: mean " + num(r.sample_mean) + " vs " + num(cm.mean) + ", variance " +
                    num(r.sample_variance) + " vs " + num(cm.variance) +
                    "; measured in standard errors");
}

CheckResult check_mc_spectral(std::uint64_t seed, int threads) {
  const ModelParams p = resonant(2, 1.0, 0.5);
  const double t = 1.0;
  SimOptions so;
  so.threads = threads;
  const auto samples = simulate(p, 0.0, t, 100000, seed, so);
  const SpectralGrid g = invert_grid({p, t, 0.0}, {-12.0, 12.0, 2401}, true);
  const SimReport r = ks_against(samples, g, seed);
  return finish("mc-spectral", r.ks_distance, 0.01, "n=2, sigma=0.5: KS vs spectral grid CDF");
}

CheckResult check_atom_consistency(std::uint64_t seed, int threads) {
  const ModelParams p = resonant(1, 1.0, 0.0);
  const double t = 0.5;
  const long paths = 10000;
  const double q = std::exp(-p.lambda() * t);
  const double se = std::sqrt(q * (1.0 - q) / paths);
  SimOptions so;
  so.threads = threads;
  int inside = 0;
  for (int s = 0; s < 100; ++s) {
    const auto r = summarize(simulate(p, 0.0, t, paths, seed + s, so));
    inside += std::abs(r.atom_fraction - q) <= 3.0 * se;
  }
  return finish("atom-consistency", 1.0 - inside / 100.0, 0.01,
                std::to_string(inside) + " of 100 seeds within 3 binomial stderr");
}

CheckResult check_ks_convergence(std::uint64_t seed, int threads) {
  const ModelParams p = resonant(1, 1.0, 0.0);
  const double t = 1.0;
  const KernelResult kr = fundamental_finite_sum(p, t, 0.0);
  SimOptions so;
  so.threads = threads;
  std::vector<double> lx;
  std::vector<double> ly;
  std::ostringstream detail;
  for (long n : {1000L, 10000L, 100000L}) {
    double mean = 0.0;
    const int reps = 8;
    for (int r = 0; r < reps; ++r)
      mean += ks_against(simulate(p, 0.0, t, n, seed + 1000 * r, so), kr).ks_distance / reps;
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(mean));
    detail << "n=" << n << " mean KS " << num(mean) << "; ";
  }
  const double mx = (lx[0] + lx[1] + lx[2]) / 3.0;
  const double my = (ly[0] + ly[1] + ly[2]) / 3.0;
  double sxy = 0.0;
  double sxx = 0.0;
  for (int i = 0; i < 3; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = sxy / sxx;
  detail << "slope " << num(slope);
  return finish("ks-convergence", std::abs(slope + 0.5), 0.15, detail.str());
}

CheckResult check_stationary() {
  const Eigen::ArrayXd xs = UniformGrid{-10.0, 10.0, 401}.points();
  double worst = 0.0;
  std::ostringstream detail;
  for (double sigma : {0.0, 0.5}) {
    const ModelParams p = resonant(1, 1.0, sigma, 1.0, 0.3);
    const KernelResult kr = fundamental_finite_sum(p, 20.0, 1.0);
    const StationaryDensity st = stationary_density(p);
    double d = 0.0;
    for (Eigen::Index i = 0; i < xs.size(); ++i)
      d = std::max(d, std::abs(evaluate_regular(kr.regular, xs(i)) - st(xs(i))));
    detail << "sigma=" << num(sigma) << ": " << num(d) << "; ";
    worst = std::max(worst, d);
  }
  return finish("stationary", worst, 1e-6, "sup diff at beta*t=20: " + detail.str());
}

CheckResult check_bessel() {
  const ModelParams p(0.0, 1.0, 0.0, 1.0, 1.0);
  const StationaryDensity st = stationary_density(p);
  double worst = 0.0;
  std::ostringstream detail;
  for (double x : {0.5, 1.0, 2.0}) {
    const double v = invert_point({p, 20.0, 0.0}, x);
    worst = std::max(worst, std::abs(v - st(x)));
    detail << "x=" << num(x) << ": " << num(v) << " vs " << num(st(x)) << "; ";
  }
  return finish("bessel", worst, 1e-4, detail.str());
}

// Order-1 jump at x = 0 in the report, or 0 when absent.
double jump_at_origin(const std::vector<Discontinuity>& rep, int order, bool* found = nullptr) {
  for (const auto& d : rep)
    if (d.order == order && std::abs(d.location) <= 1e-12) {
      if (found) *found = true;
      return d.jump;
    }
  if (found) *found = false;
  return 0.0;
}

CheckResult check_smoothness() {
  double err1 = 0.0;
  double jump2 = 0.0;
  bool higher = true;
  std::ostringstream detail;
  for (double k : {1.0, 2.0})
    for (double t : {0.5, 1.0, 5.0}) {
      const double c = -std::expm1(-2.0 * t);
      const auto r1 = weak_discontinuity_report(fundamental_finite_sum(resonant(1, 1.0, 0.0, k), t, 0.0).regular);
      bool f1 = false;
      const double j1 = jump_at_origin(r1, 1, &f1);
      err1 = std::max(err1, f1 ? std::abs(j1 + k * k * c) : std::numeric_limits<double>::infinity());
      const auto r2 = weak_discontinuity_report(fundamental_finite_sum(resonant(2, 1.0, 0.0, k), t, 0.0).regular);
      const double j2 = jump_at_origin(r2, 1);
      bool f3 = false;
      jump_at_origin(r2, 3, &f3);
      higher = higher && f3;
      if (std::abs(j2) >= std::abs(jump2)) {
        jump2 = j2;
      }
      if (k == 1.0)
        detail << "t=" << num(t) << ": n=1 jump " << num(j1) << ", n=2 first-derivative jump "
               << num(j2) << "; ";
    }
  detail << "n=2 first-derivative jump predicted -2k^2 e^{-2 beta t}(1-e^{-2 beta t})";
  double measured = std::max(err1, std::abs(jump2));
  if (!higher) measured = std::numeric_limits<double>::infinity();
  return finish("smoothness", measured, 1e-8, detail.str());
}

CheckResult check_series() {
  double termwise = 0.0;
  bool stops = true;
  for (int n : {1, 2, 3})
    for (double sigma : {0.0, 0.5})
      for (double t : {0.3, 1.0}) {
        const ModelParams p = resonant(n, 1.0, sigma);
        const KernelResult s = fundamental_series(p, t, 0.0);
        const KernelResult f = fundamental_finite_sum(p, t, 0.0);
        // Terms j = 0..n; only the rounding estimate remains in the error.
        stops = stops && s.meta.terms_used == n + 1 && s.meta.truncation_error < 1e-12;
        termwise = std::max(termwise, termwise_difference(s.regular, f.regular));
      }
  const ModelParams p(0.0, 1.0, 0.0, 3.0, 1.0);
  const KernelResult s = fundamental_series(p, 1.0, 0.0);
  const SpectralGrid g = invert_grid({p, 1.0, 0.0}, {-10.0, 10.0, 401}, true);
  const double sup = sup_diff(s.regular, g);
  double measured = sup;
  if (!stops || termwise > 1e-12) measured = std::numeric_limits<double>::infinity();
  return finish("series", measured, 1e-5,
                std::string("integer alpha: ") + (stops ? "stops at j=n" : "does not stop at j=n") +
                    ", termwise difference " + num(termwise) + "; alpha=1.5 sup vs spectral " +
                    num(sup) + " with " + std::to_string(s.meta.terms_used) + " terms");
}

CheckResult check_figures() {
  int failed = 0;
  std::ostringstream detail;
  for (int id : {1, 2}) {
    for (const auto& sc : check_figure(make_figure(id))) {
      if (!sc.passed) {
        ++failed;
        detail << sc.name << " failed: " << sc.detail << "; ";
      }
    }
  }
  if (failed == 0) detail << "all structural assertions hold";
  return finish("figures", failed, 0.0, detail.str());
}

double convolve_line(const std::function<double(double)>& f, std::vector<double> breaks) {
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] <= breaks[i]) continue;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, breaks[i],
                                                                            breaks[i + 1], 12, 1e-13);
  }
  return total;
}

CheckResult check_semigroup() {
  const double t1 = 0.5;
  const double t2 = 0.5;
  double worst = 0.0;
  std::ostringstream detail;
  for (double sigma : {0.0, 0.5}) {
    const ModelParams p = resonant(1, 1.0, sigma, 1.0, 0.3);
    const KernelResult k1 = fundamental_finite_sum(p, t1, 0.0);
    const KernelResult k2 = fundamental_finite_sum(p, t2, 0.0);
    const KernelResult k12 = fundamental_finite_sum(p, t1 + t2, 0.0);
    const double E2 = std::exp(-p.beta() * t2);
    auto r1 = [&](double z) { return evaluate_regular(k1.regular, z); };
    auto r2 = [&](double x, double z) { return evaluate_regular(k2.regular, x - z * E2); };
    double d = 0.0;
    for (int i = 0; i <= 40; ++i) {
      const double x = -5.0 + 0.25 * i + 0.0123;
      double v = convolve_line([&](double z) { return r2(x, z) * r1(z); },
                               {-40.0, 40.0, k1.atom_center, (x - k2.atom_center) / E2});
      v += k1.atom_weight * r2(x, k1.atom_center);
      v += k2.atom_weight * r1((x - k2.atom_center) / E2) / E2;
      d = std::max(d, std::abs(v - evaluate_regular(k12.regular, x)));
    }
    const double atom = k1.atom_weight * k2.atom_weight;
    d = std::max(d, std::abs(atom - k12.atom_weight));
    detail << "sigma=" << num(sigma) << ": " << num(d) << "; ";
    worst = std::max(worst, d);
  }
  return finish("semigroup", worst, 1e-4, "sup |K(0.5)*K(0.5) - K(1)|: " + detail.str());
}

CheckResult check_master_equation() {
  const double y = 0.7;
  const double h = 1e-3;
  double worst = 0.0;
  std::ostringstream detail;
  for (double sigma : {0.0, 0.5}) {
    const ModelParams p = resonant(1, 1.0, sigma, 1.0, 0.3);
    const double k = p.k();
    double d = 0.0;
    for (int it = 0; it < 20; ++it) {
      const double t = 0.2 + 0.1 * it;
      const KernelResult kr = fundamental_finite_sum(p, t, y);
      const Expr& P = kr.regular;
      const Expr dP = differentiate(P);
      const Expr d2P = sigma > 0.0 ? differentiate(dP) : Expr{};
      // p * P, with the Laplace convolution done before the Gaussian one.
      const Expr jumpP =
          sigma > 0.0
              ? shift(convolve_gaussian(convolve_laplace(plain_kernel_sum(p, t), k),
                                        diffusion_variance(p, t)),
                      singular_location(p, t, y))
              : convolve_laplace(P, k);
      Expr near[4];
      const double offs[4] = {-2.0, -1.0, 1.0, 2.0};
      for (int j = 0; j < 4; ++j) near[j] = fundamental_finite_sum(p, t + offs[j] * h, y).regular;
      const double c = kr.atom_center;
      for (int ix = 0; ix < 200; ++ix) {
        const double x = -6.0 + 12.0 * ix / 199.0 + 1e-3;
        if (sigma == 0.0 && std::abs(x - c) < 0.02) continue;
        const double dt = (evaluate_regular(near[0], x) - 8.0 * evaluate_regular(near[1], x) +
                           8.0 * evaluate_regular(near[2], x) - evaluate_regular(near[3], x)) /
                          (12.0 * h);
        const double v = evaluate_regular(P, x);
        double rhs = p.beta() * v + (p.beta() * x - p.B()) * evaluate_regular(dP, x) +
                     p.lambda() * (evaluate_regular(jumpP, x) - v);
        if (sigma > 0.0) rhs += 0.5 * sigma * sigma * evaluate_regular(d2P, x);
        if (kr.atom_weight > 0.0)
          rhs += p.lambda() * kr.atom_weight * 0.5 * k * std::exp(-k * std::abs(x - c));
        d = std::max(d, std::abs(dt - rhs));
      }
    }
    detail << "sigma=" << num(sigma) << ": " << num(d) << "; ";
    worst = std::max(worst, d);
  }
  return finish("master-equation", worst, 1e-6,
                "max residual on a 20x200 (t, x) grid: " + detail.str());
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

Suite parse_suite(const std::string& name) {
  if (name == "quick") return Suite::Quick;
  if (name == "full") return Suite::Full;
  throw ConfigError("unknown suite '" + name + "' (expected quick or full)");
}

std::string to_string(Suite s) { return s == Suite::Quick ? "quick" : "full"; }

std::vector<std::string> check_names(Suite suite) {
  std::vector<std::string> names = {"atom-weight", "e10-closed-form", "cross-oracle",
                                    "mass-moments", "monte-carlo",     "stationary",
                                    "bessel",       "smoothness",      "series",
                                    "figures",      "semigroup",       "master-equation"};
  if (suite == Suite::Full) {
    for (const char* extra : {"mc-moments", "mc-spectral", "atom-consistency", "ks-convergence"})
      names.emplace_back(extra);
  }
  return names;
}

ValidationReport run_validation(const ValidationOptions& opts) {
  ValidationReport report;
  report.suite = to_string(opts.suite);
  report.seed = opts.seed;
  const auto all = check_names(Suite::Full);
  for (const auto& name : opts.only)
    if (std::find(all.begin(), all.end(), name) == all.end())
      throw ConfigError("unknown check '" + name + "'");
  for (const auto& name : check_names(opts.only.empty() ? opts.suite : Suite::Full)) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), name) == opts.only.end())
      continue;
    const auto start = Clock::now();
    CheckResult c;
    try {
      if (name == "atom-weight") c = check_atom_weight(opts.suite);
      else if (name == "e10-closed-form") c = check_e10();
      else if (name == "cross-oracle") c = check_cross_oracle();
      else if (name == "mass-moments") c = check_mass_moments();
      else if (name == "monte-carlo") c = check_monte_carlo(opts.seed, opts.threads);
      else if (name == "stationary") c = check_stationary();
      else if (name == "bessel") c = check_bessel();
      else if (name == "smoothness") c = check_smoothness();
      else if (name == "series") c = check_series();
      else if (name == "figures") c = check_figures();
      else if (name == "semigroup") c = check_semigroup();
      else if (name == "master-equation") c = check_master_equation();
      else if (name == "mc-moments") c = check_mc_moments(opts.seed, opts.threads);
      else if (name == "mc-spectral") c = check_mc_spectral(opts.seed, opts.threads);
      else if (name == "atom-consistency") c = check_atom_consistency(opts.seed, opts.threads);
      else c = check_ks_convergence(opts.seed, opts.threads);
    } catch (const std::exception& e) {
      c = finish(name, std::numeric_limits<double>::infinity(), 0.0,
                 std::string("threw: ") + e.what());
    }
    c.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    report.checks.push_back(std::move(c));
  }
  return report;
}

nlohmann::json to_json(const CheckResult& c) {
  nlohmann::json j = {{"name", c.name},
                      {"passed", c.passed},
                      {"tolerance", c.tolerance},
                      {"seconds", c.seconds},
                      {"detail", c.detail}};
  if (std::isfinite(c.measured)) j["measured"] = c.measured;
  else j["measured"] = nullptr;
  return j;
}

nlohmann::json to_json(const ValidationReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"suite", r.suite}, {"seed", r.seed}, {"passed", r.passed()}, {"checks", checks}};
}

}  // namespace kfou
