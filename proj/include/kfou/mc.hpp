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

#ifndef KFOU_MC_HPP_
#define KFOU_MC_HPP_

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <vector>

#include "kfou/kernel.hpp"
#include "kfou/model.hpp"
#include "kfou/spectral.hpp"

namespace kfou {

struct PathSample {
  double terminal = 0.0;
  int jump_count = 0;
};

enum class Scheme { Exact, Euler };

struct SimOptions {
  int threads = 1;
  Scheme scheme = Scheme::Exact;
  // Time steps for the Euler scheme.
  int euler_steps = 1000;
};

// Paths of the jump-diffusion from y over [0, t]. Path i draws from its own
// generator keyed by (seed, i), so results do not depend on threads.
std::vector<PathSample> simulate(const ModelParams& params, double y, double t, long n_paths,
                                 std::uint64_t seed, const SimOptions& opts = {});

struct SimReport {
  long n_paths = 0;
  std::uint64_t seed = 0;
  // Samples entering the KS statistic (jump-carrying paths when conditioned).
  long ks_count = 0;
  double ks_distance = 0.0;
  double ks_pvalue = 1.0;
  double atom_fraction = 0.0;
  double atom_stderr = 0.0;
  double sample_mean = 0.0;
  double mean_stderr = 0.0;
  double sample_variance = 0.0;
  double variance_stderr = 0.0;
};

// Moments and atom fraction only.
SimReport summarize(const std::vector<PathSample>& samples, std::uint64_t seed = 0);

// KS against a kernel. With an atom present the zero-jump paths are dropped
// and the regular part is renormalized by 1 - atom_weight.
SimReport ks_against(const std::vector<PathSample>& samples, const KernelResult& kernel,
                     std::uint64_t seed = 0);

// KS against an inverted grid, conditioned the same way when the grid had its
// atom subtracted.
SimReport ks_against(const std::vector<PathSample>& samples, const SpectralGrid& grid,
                     std::uint64_t seed = 0);

// KS of all samples against the distribution of a unit-mass expression.
SimReport ks_against(const std::vector<PathSample>& samples, const Expr& density,
                     std::uint64_t seed = 0);

// Two-sided KS distance of the values against a continuous CDF.
double ks_distance(std::vector<double> values, const std::function<double(double)>& cdf);

// Asymptotic Kolmogorov tail probability P(D_n > d).
double ks_pvalue(double d, long n);

// Inverse-transform draws from a continuous CDF supported inside [lo, hi].
std::vector<double> sample_inverse_cdf(const std::function<double(double)>& cdf, long n,
                                       std::uint64_t seed, double lo, double hi);

// Sum with pairwise (cascade) reduction.
double pairwise_sum(const double* data, std::size_t n);

nlohmann::json to_json(const SimReport& report);

}  // namespace kfou

#endif  // KFOU_MC_HPP_
