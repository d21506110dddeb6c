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

#ifndef KFOU_KERNEL_HPP_
#define KFOU_KERNEL_HPP_

#include <json.hpp>
#include <string>

#include "kfou/model.hpp"
#include "kfou/term_algebra.hpp"

namespace kfou {

struct KernelMeta {
  double alpha = 0.0;
  ResonanceClass resonance;
  std::string method;
  int terms_used = 0;
  // Estimated sup-norm error of the regular part (truncation plus rounding).
  double truncation_error = 0.0;
  // Weight of the delta component before any Gaussian smoothing. Equals
  // atom_weight when sigma == 0.
  double delta_weight = 0.0;
  // Largest delta residue discarded from intermediate derivatives.
  double dropped_residue = 0.0;
  // True when the regular part is unbounded at the atom center
  // (sigma == 0, 0 < alpha <= 1/2).
  bool singular_at_center = false;
};

// Fundamental solution at fixed (t, y): regular part plus a delta of weight
// atom_weight at atom_center.
struct KernelResult {
  Expr regular;
  double atom_weight = 1.0;
  double atom_center = 0.0;
  double t = 0.0;
  double y = 0.0;
  KernelMeta meta;
};

// [F_n] for sigma = 0 centered at 0: the inverse transform of 1/(k^2+w^2)^n.
Expr fn_plain(double k, int n);

// [F_n](t, .) centered at 0, with the Gaussian factor e^{A2 w^2} included.
// The drift shift A1 is not applied here.
Expr fn(const ModelParams& params, double t, int n);
Expr f1(const ModelParams& params, double t);

// Finite sum in the x-bar frame for sigma = 0, delta included: the kernel
// before the drift shift and Gaussian factor. Requires integer alpha >= 0.
Expr plain_kernel_sum(const ModelParams& params, double t, double* dropped = nullptr);

// Finite closed form, requires alpha to be a positive integer.
KernelResult fundamental_finite_sum(const ModelParams& params, double t, double y);

// Truncated binomial series in (1 - e^{-2 beta t}), any alpha >= 0.
KernelResult fundamental_series(const ModelParams& params, double t, double y,
                                double tol = 1e-10, int max_terms = 64);

// Finite sum when alpha is an integer, series otherwise.
KernelResult fundamental_auto(const ModelParams& params, double t, double y,
                              double tol = 1e-10, int max_terms = 64);

// Regular value of the kernel at x. Throws SingularityError at the atom
// center when the regular part is unbounded there.
double kernel_value(const KernelResult& kr, double x);

// Total mass: integrate_line(regular) + atom_weight.
double kernel_mass(const KernelResult& kr);
double kernel_mean(const KernelResult& kr);
double kernel_variance(const KernelResult& kr);

// Long-time limit of the regular part.
class StationaryDensity {
 public:
  enum class Kind { Closed, Bessel };

  static StationaryDensity closed(Expr e);
  static StationaryDensity bessel(double k, double center);

  Kind kind() const { return kind_; }
  const Expr& expr() const { return expr_; }
  double operator()(double x) const;

 private:
  Kind kind_ = Kind::Closed;
  Expr expr_;
  double k_ = 1.0;
  double center_ = 0.0;
};

// alpha == 1: Laplace profile (sigma == 0) or its Gaussian smoothing.
// alpha == 1/2, B == 0, sigma == 0: (k/pi) K0(k|x|).
// Anything else throws UnsupportedError.
StationaryDensity stationary_density(const ModelParams& params);

nlohmann::json to_json(const KernelResult& kr);
KernelResult kernel_from_json(const nlohmann::json& j);

}  // namespace kfou

#endif  // KFOU_KERNEL_HPP_
