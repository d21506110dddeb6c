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

#ifndef KFOU_FIGURES_HPP_
#define KFOU_FIGURES_HPP_

#include <Eigen/Core>
#include <json.hpp>
#include <string>
#include <vector>

#include "kfou/density.hpp"
#include "kfou/io.hpp"
#include "kfou/model.hpp"
#include "kfou/spectral.hpp"

namespace kfou {

struct Curve {
  std::string label;
  std::string style;  // solid, dash, dashdot
  double t = 0.0;
  double sigma = 0.0;
  Eigen::ArrayXd values;
  double atom_weight = 0.0;
  double atom_center = 0.0;
  // Total mass from the closed form, atom included.
  double mass = 1.0;
};

struct Panel {
  std::string name;
  std::string title;
  std::vector<Curve> curves;
  // Discontinuity reports of closed-form curves, keyed by curve label.
  nlohmann::json reports = nlohmann::json::object();
};

struct Figure {
  int id = 1;
  UniformGrid grid;
  nlohmann::json meta = nlohmann::json::object();
  std::vector<Panel> panels;
};

// Fundamental solution, k = beta = 1, n = 1, y = 0, at t = 0.5 and t = 100;
// sigma = 0 solid against sigma = sigma_dash dashed.
Figure figure1(double sigma_dash = 0.5, const UniformGrid& grid = {-8.0, 8.0, 401});

// Gaussian and step data at a = 2, k = beta = 1, sigma = 0, n = 1 for t in {0, 1, 10}.
Figure figure2(const UniformGrid& grid = {-8.0, 8.0, 1601});

Figure make_figure(int id);

struct StructureCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Qualitative shape assertions: curve ordering, peak and jump locations, decay.
std::vector<StructureCheck> check_figure(const Figure& fig);

// Writes fig<id>_<panel>.csv files (header rows first) and a matplotlib
// script plotting them.
// Returns the written paths.
std::vector<std::string> emit_figure(const Figure& fig, const std::string& dir,
                                     const CsvMeta& header = {});

// Matplotlib script overlaying the given CSV files, one subplot per file.
std::string plot_script(const std::vector<std::string>& csv_files, const std::string& title);

}  // namespace kfou

#endif  // KFOU_FIGURES_HPP_
