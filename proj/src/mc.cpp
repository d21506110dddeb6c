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

#include "kfou/mc.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "kfou/errors.hpp"

namespace kfou {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t path_key(std::uint64_t seed, std::uint64_t path) {
  return splitmix64(splitmix64(seed) ^ (path * 0xd1342543de82ef95ULL + 1));
}

class PathSimulator {
 public:
  PathSimulator(const ModelParams& params, double y, double t, const SimOptions& opts)
      : p_(params), y_(y), t_(t), opts_(opts) {}

  PathSample run(std::uint64_t key) const {
    std::mt19937_64 rng(key);
    return opts_.scheme == Scheme::Exact ? exact(rng) : euler(rng);
  }

 private:
  double laplace(std::mt19937_64& rng) const {
    std::exponential_distribution<double> expo(1.0);
    const double e1 = expo(rng);
    const double e2 = expo(rng);
    return (e1 - e2) / p_.k();
  }

  // Exact OU transition over dt.
  double flow(std::mt19937_64& rng, double x, double dt) const {
    double next = singular_location(p_, dt, x);
    if (p_.sigma() > 0.0 && dt > 0.0) {
      std::normal_distribution<double> normal(0.0, 1.0);
      next += std::sqrt(diffusion_variance(p_, dt)) * normal(rng);
    }
    return next;
  }

  PathSample exact(std::mt19937_64& rng) const {
    PathSample s;
    const double mean_jumps = p_.lambda() * t_;
    if (mean_jumps > 0.0) {
      std::poisson_distribution<int> poisson(mean_jumps);
      s.jump_count = poisson(rng);
    }
    std::vector<double> times(s.jump_count);
    std::uniform_real_distribution<double> unif(0.0, t_);
    for (double& tau : times) tau = unif(rng);
    std::sort(times.begin(), times.end());
    double x = y_;
    double prev = 0.0;
    for (double tau : times) {
      x = flow(rng, x, tau - prev);
      x += laplace(rng);
      prev = tau;
    }
    s.terminal = flow(rng, x, t_ - prev);
    return s;
  }

  PathSample euler(std::mt19937_64& rng) const {
    PathSample s;
    const int steps = std::max(1, opts_.euler_steps);
    const double dt = t_ / steps;
    const double sqdt = std::sqrt(dt);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::bernoulli_distribution jump(-std::expm1(-p_.lambda() * dt));
    double x = y_;
    for (int i = 0; i < steps; ++i) {
      x += (p_.B() - p_.beta() * x) * dt;
      if (p_.sigma() > 0.0) x += p_.sigma() * sqdt * normal(rng);
      if (p_.lambda() > 0.0 && jump(rng)) {
        x += laplace(rng);
        ++s.jump_count;
      }
    }
    s.terminal = x;
    return s;
  }

  ModelParams p_;
  double y_;
  double t_;
  SimOptions opts_;
};

double pairwise_sum_rec(const double* d, std::size_t n) {
  if (n <= 64) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += d[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum_rec(d, h) + pairwise_sum_rec(d + h, n - h);
}

SimReport ks_report(const std::vector<PathSample>& samples, std::uint64_t seed, bool condition,
                    const std::function<double(double)>& cdf) {
  SimReport r = summarize(samples, seed);
  std::vector<double> values;
  values.reserve(samples.size());
  for (const auto& s : samples)
    if (!condition || s.jump_count > 0) values.push_back(s.terminal);
  if (values.empty()) throw DomainError("no samples left after conditioning on jumps");
  r.ks_count = static_cast<long>(values.size());
  r.ks_distance = ks_distance(std::move(values), cdf);
  r.ks_pvalue = ks_pvalue(r.ks_distance, r.ks_count);
  return r;
}

}  // namespace

double pairwise_sum(const double* data, std::size_t n) { return pairwise_sum_rec(data, n); }

std::vector<PathSample> simulate(const ModelParams& params, double y, double t, long n_paths,
                                 std::uint64_t seed, const SimOptions& opts) {
  if (n_paths < 1) throw ConfigError("n_paths must be at least 1");
  time_coeffs(params, t);
  const PathSimulator sim(params, y, t, opts);
  std::vector<PathSample> out(n_paths);
  const int threads = std::max(1, std::min<int>(opts.threads, static_cast<int>(n_paths)));
  auto work = [&](long begin, long end) {
    for (long i = begin; i < end; ++i) out[i] = sim.run(path_key(seed, i));
  };
  if (threads == 1) {
    work(0, n_paths);
    return out;
  }
  std::vector<std::thread> pool;
  const long chunk = (n_paths + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const long begin = w * chunk;
    const long end = std::min(n_paths, begin + chunk);
    if (begin < end) pool.emplace_back(work, begin, end);
  }
  for (auto& th : pool) th.join();
  return out;
}

SimReport summarize(const std::vector<PathSample>& samples, std::uint64_t seed) {
  SimReport r;
  r.n_paths = static_cast<long>(samples.size());
  r.seed = seed;
  if (samples.empty()) return r;
  const double n = static_cast<double>(samples.size());
  std::vector<double> v(samples.size());
  long zero = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    v[i] = samples[i].terminal;
    zero += samples[i].jump_count == 0;
  }
  r.sample_mean = pairwise_sum(v.data(), v.size()) / n;
  std::vector<double> d2(v.size());
  std::vector<double> d4(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = v[i] - r.sample_mean;
    d2[i] = d * d;
    d4[i] = d2[i] * d2[i];
  }
  const double m2 = pairwise_sum(d2.data(), d2.size()) / n;
  const double m4 = pairwise_sum(d4.data(), d4.size()) / n;
  r.sample_variance = samples.size() > 1 ? m2 * n / (n - 1.0) : 0.0;
  r.mean_stderr = std::sqrt(r.sample_variance / n);
  r.variance_stderr = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
  r.atom_fraction = zero / n;
  r.atom_stderr = std::sqrt(r.atom_fraction * (1.0 - r.atom_fraction) / n);
  return r;
}

SimReport ks_against(const std::vector<PathSample>& samples, const KernelResult& kernel,
                     std::uint64_t seed) {
  const bool condition = kernel.atom_weight > 0.0;
  const double norm = condition ? 1.0 - kernel.atom_weight : 1.0;
  if (!(norm > 0.0)) throw DomainError("kernel has no regular part to compare against");
  return ks_report(samples, seed, condition,
                   [&](double x) { return cumulative(kernel.regular, x) / norm; });
}

SimReport ks_against(const std::vector<PathSample>& samples, const SpectralGrid& grid,
                     std::uint64_t seed) {
  const int n = grid.grid.count;
  const double dx = grid.grid.spacing();
  std::vector<double> cdf(n, 0.0);
  for (int i = 1; i < n; ++i) {
    const double a = std::isfinite(grid.values(i - 1)) ? grid.values(i - 1) : 0.0;
    const double b = std::isfinite(grid.values(i)) ? grid.values(i) : 0.0;
    cdf[i] = cdf[i - 1] + 0.5 * (a + b) * dx;
  }
  const double total = cdf.back();
  if (!(total > 0.0)) throw DomainError("grid carries no mass");
  const bool condition = grid.singular_subtracted && grid.atom_weight > 0.0;
  auto f = [&](double x) {
    if (x <= grid.grid.min) return 0.0;
    if (x >= grid.grid.max) return 1.0;
    const double pos = (x - grid.grid.min) / dx;
    const int i = std::min(n - 2, static_cast<int>(pos));
    const double w = pos - i;
    return ((1.0 - w) * cdf[i] + w * cdf[i + 1]) / total;
  };
  return ks_report(samples, seed, condition, f);
}

SimReport ks_against(const std::vector<PathSample>& samples, const Expr& density,
                     std::uint64_t seed) {
  return ks_report(samples, seed, false, [&](double x) { return cumulative(density, x); });
}

double ks_distance(std::vector<double> values, const std::function<double(double)>& cdf) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = cdf(values[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  return std::clamp(d, 0.0, 1.0);
}

double ks_pvalue(double d, long n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lam = (sn + 0.12 + 0.11 / sn) * d;
  if (lam < 0.2) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lam * lam);
    sum += (j % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

std::vector<double> sample_inverse_cdf(const std::function<double(double)>& cdf, long n,
                                       std::uint64_t seed, double lo, double hi) {
  std::vector<double> out(n);
  for (long i = 0; i < n; ++i) {
    std::mt19937_64 rng(path_key(seed, i));
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double a = lo;
    double b = hi;
    for (int it = 0; it < 100 && b - a > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
      const double m = 0.5 * (a + b);
      (cdf(m) < u ? a : b) = m;
    }
    out[i] = 0.5 * (a + b);
  }
  return out;
}

nlohmann::json to_json(const SimReport& r) {
  return {{"n_paths", r.n_paths},
          {"seed", r.seed},
          {"ks_count", r.ks_count},
          {"ks_distance", r.ks_distance},
          {"ks_pvalue", r.ks_pvalue},
          {"atom_fraction", r.atom_fraction},
          {"atom_stderr", r.atom_stderr},
          {"sample_mean", r.sample_mean},
          {"mean_stderr", r.mean_stderr},
          {"sample_variance", r.sample_variance},
          {"variance_stderr", r.variance_stderr}};
}

}  // namespace kfou
