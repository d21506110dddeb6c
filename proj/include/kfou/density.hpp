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

#ifndef KFOU_DENSITY_HPP_
#define KFOU_DENSITY_HPP_

#include <Eigen/Core>
#include <json.hpp>
#include <string>
#include <variant>
#include <vector>

#include "kfou/model.hpp"
#include "kfou/spectral.hpp"
#include "kfou/term_algebra.hpp"

namespace kfou {

// Normal density with the given center and variance. The default variance
// 1/2 gives e^{-(x-a)^2}/sqrt(pi).
struct GaussianData {
  double center = 0.0;
  double variance = 0.5;
};

// Indicator of [-a - 1/2, -a + 1/2].
struct StepData {
  double a = 0.0;
};

// Piecewise-linear density on a strictly increasing grid, renormalized to
// unit trapezoid mass on ingest.
struct SampledData {
  std::vector<double> x;
  std::vector<double> values;
  // Trapezoid mass before renormalization.
  double ingest_mass = 1.0;

  static SampledData ingest(std::vector<double> x, std::vector<double> values);
  double operator()(double at) const;
};

using InitialData = std::variant<GaussianData, StepData, SampledData>;

double initial_value(const InitialData& init, double x);

enum class Branch { Auto, ClosedForm, Quadrature };

Branch parse_branch(const std::string& name);
std::string to_string(Branch b);

struct EvolveOptions {
  Branch branch = Branch::Auto;
  // Output grid for the quadrature branch.
  UniformGrid grid;
  double quad_tol = 1e-10;
};

struct EvolvedDensity {
  double t = 0.0;
  Branch branch = Branch::ClosedForm;
  // Closed-form branch.
  Expr expr;
  // Quadrature branch.
  UniformGrid grid;
  Eigen::ArrayXd values;

  double value_at(int grid_index) const;
  Eigen::ArrayXd sample(const UniformGrid& g) const;
};

// True when evolve can produce a closed form for this data.
bool closed_form_available(const ModelParams& params, const InitialData& init);

EvolvedDensity evolve(const ModelParams& params, const InitialData& init, double t,
                      const EvolveOptions& opts = {});

// Pointwise quadrature of the convolution with the fundamental solution.
double evolve_point(const ModelParams& params, const InitialData& init, double t, double x,
                    double quad_tol = 1e-10);

struct Discontinuity {
  double location = 0.0;
  int order = 0;  // derivative order that jumps; 0 is the function itself
  double jump = 0.0;  // right limit minus left limit
};

// Jumps of the function and its derivatives read off the expression
// structure, up to max_order.
std::vector<Discontinuity> weak_discontinuity_report(const Expr& e, int max_order = 8);

nlohmann::json to_json(const std::vector<Discontinuity>& report);

}  // namespace kfou

#endif  // KFOU_DENSITY_HPP_
