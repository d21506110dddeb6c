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

#ifndef KFOU_MODEL_HPP_
#define KFOU_MODEL_HPP_

#include <string>

namespace kfou {

/**
 * Constants of the jump-diffusion Ornstein-Uhlenbeck process
 *
 *   dX = (B - beta X) dt + sigma dW + (compound Poisson jumps),
 *
 * with jumps arriving at rate lambda and Laplace-distributed sizes with
 * density (k/2) exp(-k|z|). Validated on construction; an instance always
 * satisfies beta > 0, k > 0, sigma >= 0, lambda >= 0.
 */
class ModelParams {
 public:
  ModelParams(double B, double beta, double sigma, double lambda, double k);

  double B() const { return B_; }
  double beta() const { return beta_; }
  double sigma() const { return sigma_; }
  double lambda() const { return lambda_; }
  double k() const { return k_; }

  // lambda / (2 beta)
  double alpha() const { return lambda_ / (2.0 * beta_); }

  // Reversion level B / beta.
  double level() const { return B_ / beta_; }

  std::string describe() const;

  bool operator==(const ModelParams&) const = default;

 private:
  double B_;
  double beta_;
  double sigma_;
  double lambda_;
  double k_;
};

struct TimeCoeffs {
  double t = 0.0;
  double a1 = 0.0;  // drift shift, -(B/beta)(1 - e^{-beta t})
  double a2 = 0.0;  // Gaussian exponent coefficient, nonpositive
};

struct ResonanceClass {
  enum class Kind { Zero, Integer, General };
  Kind kind = Kind::Zero;
  int n = 0;          // valid when kind == Integer
  double alpha = 0.0;

  bool is_integer() const { return kind == Kind::Integer; }
  std::string describe() const;
};

double alpha(const ModelParams& params);

double resonance_tolerance(double alpha);
ResonanceClass resonance(const ModelParams& params);

TimeCoeffs time_coeffs(const ModelParams& params, double t);

// x - y e^{-beta t} + A1(t): the frame in which the kernel has fixed shape.
double shifted_coord(const ModelParams& params, double t, double x, double y);

// Weight of the delta component, e^{-lambda t}.
double singular_amplitude(const ModelParams& params, double t);

// Deterministic flow of y over time t; the point where shifted_coord vanishes.
double singular_location(const ModelParams& params, double t, double y);

// Variance of the Gaussian factor, -2 A2(t) = sigma^2 (1 - e^{-2 beta t}) / (2 beta).
double diffusion_variance(const ModelParams& params, double t);

}  // namespace kfou

#endif  // KFOU_MODEL_HPP_
