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

#include "kfou/model.hpp"

#include <cmath>
#include <sstream>

#include "kfou/errors.hpp"

namespace kfou {

ModelParams::ModelParams(double B, double beta, double sigma, double lambda, double k)
    : B_(B), beta_(beta), sigma_(sigma), lambda_(lambda), k_(k) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!(finite(B) && finite(beta) && finite(sigma) && finite(lambda) && finite(k))) {
    throw ConfigError("model parameters must be finite");
  }
  if (!(beta > 0.0)) throw ConfigError("beta must be strictly positive");
  if (!(k > 0.0)) throw ConfigError("k must be strictly positive");
  if (sigma < 0.0) throw ConfigError("sigma must be nonnegative");
  if (lambda < 0.0) throw ConfigError("lambda must be nonnegative");
}

std::string ModelParams::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "B=" << B_ << " beta=" << beta_ << " sigma=" << sigma_ << " lambda=" << lambda_
     << " k=" << k_;
  return os.str();
}

std::string ResonanceClass::describe() const {
  switch (kind) {
    case Kind::Zero:
      return "zero";
    case Kind::Integer:
      return "integer(" + std::to_string(n) + ")";
    case Kind::General:
      break;
  }
  std::ostringstream os;
  os.precision(17);
  os << "general(" << alpha << ")";
  return os.str();
}

double alpha(const ModelParams& params) { return params.alpha(); }

double resonance_tolerance(double a) { return 1e-12 * std::max(1.0, a); }

ResonanceClass resonance(const ModelParams& params) {
  ResonanceClass rc;
  rc.alpha = params.alpha();
  if (rc.alpha == 0.0) {
    rc.kind = ResonanceClass::Kind::Zero;
    return rc;
  }
  const double nearest = std::round(rc.alpha);
  if (nearest >= 1.0 && std::abs(rc.alpha - nearest) <= resonance_tolerance(rc.alpha)) {
    rc.kind = ResonanceClass::Kind::Integer;
    rc.n = static_cast<int>(nearest);
  } else {
    rc.kind = ResonanceClass::Kind::General;
  }
  return rc;
}

TimeCoeffs time_coeffs(const ModelParams& params, double t) {
  if (!(t >= 0.0)) throw DomainError("time must be nonnegative");
  const double b = params.beta();
  TimeCoeffs c;
  c.t = t;
  c.a1 = -params.level() * -std::expm1(-b * t);
  c.a2 = -(params.sigma() * params.sigma() / (4.0 * b)) * -std::expm1(-2.0 * b * t);
  return c;
}

double shifted_coord(const ModelParams& params, double t, double x, double y) {
  return x - singular_location(params, t, y);
}

double singular_amplitude(const ModelParams& params, double t) {
  return std::exp(-2.0 * params.alpha() * params.beta() * t);
}

double singular_location(const ModelParams& params, double t, double y) {
  const double decay = std::exp(-params.beta() * t);
  return y * decay + params.level() * -std::expm1(-params.beta() * t);
}

double diffusion_variance(const ModelParams& params, double t) {
  return -2.0 * time_coeffs(params, t).a2;
}

}  // namespace kfou
