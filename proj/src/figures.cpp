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

#include "kfou/figures.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "kfou/errors.hpp"
#include "kfou/io.hpp"
#include "kfou/kernel.hpp"

namespace kfou {

namespace {

std::string num(double v) { return format_double(v); }

Eigen::Index argmax(const Eigen::ArrayXd& v) {
  Eigen::Index i = 0;
  v.maxCoeff(&i);
  return i;
}

double grid_mass(const Eigen::ArrayXd& v, double dx) {
  if (v.size() < 2) return 0.0;
  return dx * (v.sum() - 0.5 * (v(0) + v(v.size() - 1)));
}

const Panel& panel(const Figure& fig, const std::string& name) {
  for (const auto& p : fig.panels)
    if (p.name == name) return p;
  throw Error("figure " + std::to_string(fig.id) + " has no panel '" + name + "'");
}

Curve kernel_curve(const ModelParams& p, double t, const UniformGrid& grid, const std::string& style) {
  const KernelResult kr = fundamental_finite_sum(p, t, 0.0);
  Curve c;
  c.label = "sigma=" + num(p.sigma());
  c.style = style;
  c.t = t;
  c.sigma = p.sigma();
  c.values = evaluate_regular(kr.regular, grid.points());
  c.atom_weight = kr.atom_weight;
  c.atom_center = kr.atom_center;
  c.mass = kernel_mass(kr);
  return c;
}

void add(std::vector<StructureCheck>& out, std::string name, bool ok, std::string detail) {
  out.push_back({std::move(name), ok, std::move(detail)});
}

std::vector<StructureCheck> check_figure1(const Figure& fig) {
  std::vector<StructureCheck> out;
  const double dx = fig.grid.spacing();
  const auto& left = panel(fig, "t0.5");
  const auto& right = panel(fig, "t100");
  const Curve& l0 = left.curves.at(0);
  const Curve& l1 = left.curves.at(1);
  const Curve& r0 = right.curves.at(0);
  const Curve& r1 = right.curves.at(1);

  const double w = l0.atom_weight;
  add(out, "fig1.atom_weight", std::abs(w - std::exp(-1.0)) <= 1e-12,
      "sigma=0 atom at t=0.5 is " + num(w));

  bool centered = true;
  std::ostringstream peaks;
  for (const Curve* c : {&l0, &l1, &r0, &r1}) {
    const double xp = fig.grid.at(static_cast<int>(argmax(c->values)));
    centered = centered && std::abs(xp) <= dx;
    peaks << c->label << "@t=" << num(c->t) << " peak " << num(xp) << "; ";
  }
  add(out, "fig1.peaks_at_origin", centered, peaks.str());

  const double l0p = l0.values.maxCoeff();
  const double l1p = l1.values.maxCoeff();
  add(out, "fig1.left_ordering", l1p > l0p,
      "t=0.5 peak heights: sigma>0 " + num(l1p) + " over sigma=0 regular " + num(l0p));

  const double r0p = r0.values.maxCoeff();
  const double r1p = r1.values.maxCoeff();
  add(out, "fig1.right_ordering", r1p < r0p,
      "t=100 peak heights: sigma>0 " + num(r1p) + " under sigma=0 " + num(r0p));

  const double sup = fig.meta.value("stationary_sup_diff", 1.0);
  add(out, "fig1.right_stationary", sup < 1e-6, "sup diff to Laplace limit " + num(sup));

  const double m0 = grid_mass(r0.values, dx);
  const double m1 = grid_mass(r1.values, dx);
  add(out, "fig1.right_mass", std::abs(m0 - 1.0) < 1e-3 && std::abs(m1 - 1.0) < 1e-3,
      "grid masses " + num(m0) + ", " + num(m1));
  return out;
}

std::vector<StructureCheck> check_figure2(const Figure& fig) {
  std::vector<StructureCheck> out;
  const double dx = fig.grid.spacing();
  const double a = fig.meta.value("a", 2.0);
  const auto& gauss = panel(fig, "gaussian");
  const auto& step = panel(fig, "step");

  std::vector<double> peak;
  std::ostringstream where;
  for (const auto& c : gauss.curves) {
    peak.push_back(fig.grid.at(static_cast<int>(argmax(c.values))));
    where << "t=" << num(c.t) << " peak " << num(peak.back()) << "; ";
  }
  bool moving = std::abs(peak.front() - a) <= dx && std::abs(peak.back()) <= 2.0 * dx;
  for (std::size_t i = 1; i < peak.size(); ++i) moving = moving && peak[i] < peak[i - 1];
  add(out, "fig2.gaussian_peaks", moving, where.str());

  bool smooth = true;
  for (const auto& c : gauss.curves) {
    const std::string key = c.label;
    smooth = smooth && gauss.reports.contains(key) && gauss.reports[key].empty();
  }
  add(out, "fig2.gaussian_smooth", smooth, "no jumps in any derivative up to order 2");

  bool locations = true;
  bool four = true;
  std::vector<double> amplitude;
  std::ostringstream jumps;
  for (const auto& c : step.curves) {
    const auto& rep = step.reports.at(c.label);
    const double E = std::exp(-c.t);
    const double xi_plus = -(a + 0.5) * E;
    const double xi_minus = -(a - 0.5) * E;
    std::vector<double> xi;
    std::vector<double> eta;
    double amp = 0.0;
    for (const auto& d : rep) {
      const double loc = d.at("location").get<double>();
      if (d.at("order").get<int>() == 0) {
        xi.push_back(loc);
        amp = std::max(amp, std::abs(d.at("jump").get<double>()));
      } else if (d.at("order").get<int>() == 2) {
        eta.push_back(loc);
      }
    }
    amplitude.push_back(amp);
    auto near = [&](const std::vector<double>& v, double target) {
      return std::any_of(v.begin(), v.end(),
                         [&](double u) { return std::abs(u - target) <= 1e-12 * (1.0 + std::abs(target)); });
    };
    locations = locations && xi.size() == 2 && near(xi, xi_plus) && near(xi, xi_minus);
    if (c.t > 0.0)
      four = four && eta.size() == 2 && near(eta, xi_plus) && near(eta, xi_minus);
    jumps << "t=" << num(c.t) << ": xi {" << (xi.size() > 0 ? num(xi[0]) : "") << ", "
          << (xi.size() > 1 ? num(xi[1]) : "") << "} amplitude " << num(amp) << "; ";
  }
  add(out, "fig2.step_jump_locations", locations, jumps.str());
  add(out, "fig2.step_four_locations", four,
      "order-0 jumps at xi+- and second-derivative jumps at eta+- for every t>0; "
      "eta+- coincide with xi+-");

  bool decay = amplitude.size() >= 2 && amplitude.back() > 0.0;
  for (std::size_t i = 1; i < amplitude.size(); ++i) decay = decay && amplitude[i] < amplitude[i - 1];
  bool rate = true;
  for (std::size_t i = 0; i < step.curves.size(); ++i)
    rate = rate && std::abs(amplitude[i] - std::exp(-step.curves[i].t)) <= 1e-10;
  add(out, "fig2.step_amplitude_decay", decay && rate,
      "jump amplitude equals e^{-beta t} and stays positive");

  double worst = 0.0;
  for (const auto* p : {&gauss, &step})
    for (const auto& c : p->curves) worst = std::max(worst, std::abs(c.mass - 1.0));
  add(out, "fig2.mass", worst <= 1e-8, "max |mass - 1| over curves " + num(worst));
  return out;
}

std::string style_for(double t) {
  if (t == 0.0) return "dashdot";
  if (t < 5.0) return "dash";
  return "solid";
}

}  // namespace

Figure figure1(double sigma_dash, const UniformGrid& grid) {
  Figure fig;
  fig.id = 1;
  fig.grid = grid;
  const ModelParams p0(0.0, 1.0, 0.0, 2.0, 1.0);
  const ModelParams p1(0.0, 1.0, sigma_dash, 2.0, 1.0);
  for (double t : {0.5, 100.0}) {
    Panel pan;
    pan.name = t == 0.5 ? "t0.5" : "t100";
    pan.title = "t = " + num(t);
    pan.curves.push_back(kernel_curve(p0, t, grid, "solid"));
    pan.curves.push_back(kernel_curve(p1, t, grid, "dash"));
    fig.panels.push_back(std::move(pan));
  }
  const StationaryDensity st = stationary_density(p0);
  const Eigen::ArrayXd xs = grid.points();
  double sup = 0.0;
  for (Eigen::Index i = 0; i < xs.size(); ++i)
    sup = std::max(sup, std::abs(fig.panels[1].curves[0].values(i) - st(xs(i))));
  fig.meta = {{"k", 1.0}, {"beta", 1.0}, {"n", 1}, {"sigma_dash", sigma_dash},
              {"stationary_sup_diff", sup}};
  return fig;
}

Figure figure2(const UniformGrid& grid) {
  Figure fig;
  fig.id = 2;
  fig.grid = grid;
  const double a = 2.0;
  const ModelParams p(0.0, 1.0, 0.0, 2.0, 1.0);
  EvolveOptions opts;
  opts.grid = grid;
  const Eigen::ArrayXd xs = grid.points();
  const std::vector<std::pair<std::string, InitialData>> inits = {
      {"gaussian", GaussianData{a, 0.5}}, {"step", StepData{a}}};
  for (const auto& [name, init] : inits) {
    Panel pan;
    pan.name = name;
    pan.title = name + " data, a = 2";
    for (double t : {0.0, 1.0, 10.0}) {
      const EvolvedDensity e = evolve(p, init, t, opts);
      Curve c;
      c.label = "t=" + num(t);
      c.style = style_for(t);
      c.t = t;
      c.values = e.sample(grid);
      c.mass = integrate_line(e.expr);
      pan.reports[c.label] = to_json(weak_discontinuity_report(e.expr, 2));
      pan.curves.push_back(std::move(c));
    }
    fig.panels.push_back(std::move(pan));
  }
  fig.meta = {{"a", a}, {"k", 1.0}, {"beta", 1.0}, {"sigma", 0.0}, {"n", 1}};
  return fig;
}

Figure make_figure(int id) {
  if (id == 1) return figure1();
  if (id == 2) return figure2();
  throw ConfigError("unknown figure " + std::to_string(id) + " (expected 1 or 2)");
}

std::vector<StructureCheck> check_figure(const Figure& fig) {
  return fig.id == 1 ? check_figure1(fig) : check_figure2(fig);
}

std::string plot_script(const std::vector<std::string>& csv_files, const std::string& title) {
  std::ostringstream s;
  s << "#!/usr/bin/env python3\n"
       "import csv\n"
       "import os\n"
       "import sys\n\n"
       "import matplotlib\n"
       "matplotlib.use(\"Agg\")\n"
       "import matplotlib.pyplot as plt\n\n"
       "STYLES = {\"solid\": \"-\", \"dash\": \"--\", \"dashdot\": \"-.\"}\n"
       "HERE = os.path.dirname(os.path.abspath(__file__))\n"
       "FILES = [";
  for (std::size_t i = 0; i < csv_files.size(); ++i)
    s << (i ? ", " : "") << '"' << std::filesystem::path(csv_files[i]).filename().string() << '"';
  s << "]\n\n\n"
       "def load(path):\n"
       "    meta, rows = {}, []\n"
       "    with open(path) as fh:\n"
       "        for line in fh:\n"
       "            if line.startswith(\"#\"):\n"
       "                key, _, value = line[1:].strip().partition(\"=\")\n"
       "                meta[key] = value\n"
       "            elif line.strip():\n"
       "                rows.append(line.strip())\n"
       "    table = list(csv.reader(rows))\n"
       "    names = table[0]\n"
       "    cols = list(zip(*[[float(v) for v in r] for r in table[1:]]))\n"
       "    return meta, names, cols\n\n\n"
       "def main():\n"
       "    fig, axes = plt.subplots(1, len(FILES), figsize=(5 * len(FILES), 4), squeeze=False)\n"
       "    for ax, name in zip(axes[0], FILES):\n"
       "        meta, names, cols = load(os.path.join(HERE, name))\n"
       "        styles = meta.get(\"styles\", \"\").split(\";\")\n"
       "        for i, label in enumerate(names[1:]):\n"
       "            style = STYLES.get(styles[i] if i < len(styles) else \"solid\", \"-\")\n"
       "            ax.plot(cols[0], cols[i + 1], style, color=\"k\", label=label)\n"
       "        ax.set_title(meta.get(\"panel_title\", name))\n"
       "        ax.set_xlabel(\"x\")\n"
       "        ax.legend()\n"
       "    fig.suptitle(\"" << title << "\")\n"
       "    fig.tight_layout()\n"
       "    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(HERE, \""
    << (csv_files.empty() ? std::string("plot")
                          : std::filesystem::path(csv_files[0]).stem().string())
    << ".png\")\n"
       "    fig.savefig(out, dpi=120)\n\n\n"
       "if __name__ == \"__main__\":\n"
       "    main()\n";
  return s.str();
}

std::vector<std::string> emit_figure(const Figure& fig, const std::string& dir,
                                     const CsvMeta& header) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> paths;
  const Eigen::ArrayXd xs = fig.grid.points();
  for (const auto& pan : fig.panels) {
    CsvMeta meta = header;
    meta.emplace_back("figure", std::to_string(fig.id));
    meta.emplace_back("panel", pan.name);
    meta.emplace_back("panel_title", pan.title);
    std::string styles;
    std::vector<CsvColumn> cols;
    for (const auto& c : pan.curves) {
      styles += (styles.empty() ? "" : ";") + c.style;
      cols.push_back({c.label, c.values});
      if (c.atom_weight > 0.0) {
        // Header keys cannot hold '=', so "sigma=0" becomes "sigma:0".
        std::string tag = c.label;
        std::replace(tag.begin(), tag.end(), '=', ':');
        meta.emplace_back("atom_weight[" + tag + "]", num(c.atom_weight));
        meta.emplace_back("atom_center[" + tag + "]", num(c.atom_center));
      }
    }
    meta.emplace_back("styles", styles);
    for (const auto& [key, value] : fig.meta.items()) meta.emplace_back(key, value.dump());
    const std::string path = (std::filesystem::path(dir) /
                              ("fig" + std::to_string(fig.id) + "_" + pan.name + ".csv"))
                                 .string();
    write_csv(path, meta, xs, cols);
    paths.push_back(path);
    if (!pan.reports.empty()) {
      const std::string rpath = (std::filesystem::path(dir) / ("fig" + std::to_string(fig.id) +
                                                               "_" + pan.name + "_report.json"))
                                    .string();
      write_json(rpath, pan.reports);
      paths.push_back(rpath);
    }
  }
  std::vector<std::string> csvs;
  for (const auto& p : paths)
    if (p.size() > 4 && p.substr(p.size() - 4) == ".csv") csvs.push_back(p);
  const std::string script =
      (std::filesystem::path(dir) / ("fig" + std::to_string(fig.id) + ".py")).string();
  write_text(script, plot_script(csvs, "Figure " + std::to_string(fig.id)));
  paths.push_back(script);
  return paths;
}

}  // namespace kfou
