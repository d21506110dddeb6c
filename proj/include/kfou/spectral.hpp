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

#ifndef KFOU_SPECTRAL_HPP_
#define KFOU_SPECTRAL_HPP_

#include <Eigen/Core>
#include <complex>
#include <string>
#include <vector>

#include "kfou/model.hpp"

namespace kfou {

// Transform of the fundamental solution, with the convention
// E^(w) = integral of E(x) e^{-i w x} dx.
struct CharFn {
  ModelParams params;
  double t = 0.0;
  double y = 0.0;
};

std::complex<double> char_value(const CharFn& cf, double w);

// log E^(w) = alpha log(base) + A2 w^2 - i w x_s, base in (0, 1].
std::complex<double> log_char_value(const CharFn& cf, double w);

// Weight of the delta removed by subtract_singular: e^{-lambda t} when the
// kernel has a genuine atom (sigma == 0 or t == 0), else 0.
double singular_weight(const CharFn& cf);

std::complex<double> subtract_singular(const CharFn& cf, double w);

struct UniformGrid {
  double min = -8.0;
  double max = 8.0;
  int count = 401;

  double spacing() const { return count > 1 ? (max - min) / (count - 1) : 0.0; }
  double at(int i) const { return count > 1 ? min + i * spacing() : min; }
  Eigen::ArrayXd points() const;

  // "min:max:count"
  static UniformGrid parse(const std::string& spec);
};

struct SpectralGrid {
  UniformGrid grid;
  Eigen::ArrayXd values;
  double imag_residue = 0.0;
  double err_estimate = 0.0;
  bool singular_subtracted = false;
  double atom_weight = 0.0;
  double atom_center = 0.0;
  // Indices of grid points where no finite value is reported (set to NaN).
  std::vector<int> flagged;
  std::string method;

  double trapezoid_mass() const;
};

// Numerical inverse transform on a uniform x grid.
SpectralGrid invert_grid(const CharFn& cf, const UniformGrid& grid, bool subtract,
                         double quad_tol = 1e-10);

// Single-point inversion of the subtracted transform.
double invert_point(const CharFn& cf, double x, double quad_tol = 1e-10);

struct CharMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// Mean and variance from finite differences of log E^ at w = 0 with
// Richardson extrapolation.
CharMoments moments_from_char(const CharFn& cf);

}  // namespace kfou

#endif  // KFOU_SPECTRAL_HPP_
