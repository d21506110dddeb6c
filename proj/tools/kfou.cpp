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

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "kfou/density.hpp"
#include "kfou/errors.hpp"
#include "kfou/figures.hpp"
#include "kfou/io.hpp"
#include "kfou/kernel.hpp"
#include "kfou/mc.hpp"
#include "kfou/model.hpp"
#include "kfou/spectral.hpp"
#include "kfou/validation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kSingular = 3, kValidation = 4 };

// Reads a JSON object as CLI11 config items. Top-level scalars and arrays
// address root options; nested objects address the subcommand of that name.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    json j = json::object();
    for (const CLI::Option* opt : app->get_options({})) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string name = opt->get_lnames().front();
      if (opt->count() > 0) {
        const auto& r = opt->results();
        j[name] = r.size() == 1 ? json(r.front()) : json(r);
      } else if (default_also && !opt->get_default_str().empty()) {
        j[name] = opt->get_default_str();
      }
    }
    return j.dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      j = json::parse(input);
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    collect(j, {}, items);
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void collect(const json& j, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        auto p = parents;
        p.push_back(key);
        collect(value, p, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

struct ModelOptions {
  double B = 0.0;
  double beta = 1.0;
  double sigma = 0.0;
  double lambda = 2.0;
  double k = 1.0;
  kfou::ModelParams params() const { return kfou::ModelParams(B, beta, sigma, lambda, k); }
};

struct Common {
  ModelOptions model;
  bool deterministic = false;
  std::string out = ".";
};

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

// Effective options of the root app and the active subcommand.
json effective_config(const CLI::App& app, const CLI::App& sub) {
  json j = json::object();
  auto add = [&](const CLI::App& a, json& dst) {
    for (const CLI::Option* opt : a.get_options({})) {
      if (opt->get_lnames().empty()) continue;
      const std::string name = opt->get_lnames().front();
      if (name == "help" || name == "version" || name == "config") continue;
      if (opt->count() > 0) {
        const auto& r = opt->results();
        dst[name] = r.size() == 1 ? json(r.front()) : json(r);
      } else if (!opt->get_default_str().empty()) {
        dst[name] = opt->get_default_str();
      }
    }
  };
  add(app, j);
  json s = json::object();
  add(sub, s);
  j[sub.get_name()] = s;
  return j;
}

kfou::CsvMeta header(const Common& c, const json& echo) {
  kfou::CsvMeta meta;
  meta.emplace_back("kfou_version", KFOU_VERSION);
  meta.emplace_back("config", echo.dump());
  if (!c.deterministic) meta.emplace_back("timestamp", timestamp());
  return meta;
}

json json_header(const Common& c, const json& echo) {
  json j = {{"kfou_version", KFOU_VERSION}, {"config", echo}};
  if (!c.deterministic) j["timestamp"] = timestamp();
  return j;
}

std::string out_path(const Common& c, const std::string& name) {
  fs::create_directories(c.out);
  return (fs::path(c.out) / name).string();
}

std::string tag(double t) { return kfou::format_double(t); }

void print_checks(const std::vector<kfou::StructureCheck>& checks) {
  for (const auto& sc : checks)
    std::cout << (sc.passed ? "ok    " : "FAIL  ") << sc.name << "  " << sc.detail << "\n";
}

int run_figure(int id, const Common& c, const json& echo) {
  const kfou::Figure fig = kfou::make_figure(id);
  const auto paths = kfou::emit_figure(fig, c.out, header(c, echo));
  const auto checks = kfou::check_figure(fig);
  json j = json_header(c, echo);
  j["figure"] = id;
  j["checks"] = json::array();
  for (const auto& sc : checks)
    j["checks"].push_back({{"name", sc.name}, {"passed", sc.passed}, {"detail", sc.detail}});
  const std::string cpath = out_path(c, "fig" + std::to_string(id) + "_checks.json");
  kfou::write_json(cpath, j);
  for (const auto& p : paths) std::cout << "wrote " << p << "\n";
  std::cout << "wrote " << cpath << "\n";
  print_checks(checks);
  bool ok = true;
  for (const auto& sc : checks) ok = ok && sc.passed;
  return ok ? kOk : kValidation;
}

// Kernel command.

struct KernelCmd {
  std::vector<double> t = {0.5};
  double y = 0.0;
  std::string grid = "-8:8:401";
  std::string method = "auto";
  double tol = 1e-10;
  int max_terms = 64;
  bool plot = false;
  double plot_sigma = 0.5;
  bool report = false;
  int figure = 0;
};

struct KernelCurve {
  Eigen::ArrayXd values;
  kfou::CsvMeta meta;
  kfou::Expr regular;
  bool closed = false;
};

void reject_singular_points(const kfou::UniformGrid& g, double center) {
  for (int i = 0; i < g.count; ++i)
    if (std::abs(g.at(i) - center) <= 1e-12 * std::max(1.0, std::abs(center)))
      throw kfou::SingularityError("grid point x=" + kfou::format_double(g.at(i)) +
                                   " hits the singular center; shift the grid or use an even count");
}

KernelCurve kernel_curve(const kfou::ModelParams& p, double t, const KernelCmd& k,
                         const kfou::UniformGrid& g) {
  KernelCurve out;
  const std::string method = k.method;
  if (method == "spectral") {
    const kfou::CharFn cf{p, t, k.y};
    const bool subtract = p.sigma() == 0.0;
    const kfou::SpectralGrid sg = kfou::invert_grid(cf, g, subtract, k.tol);
    if (!sg.flagged.empty()) reject_singular_points(g, sg.atom_center);
    out.values = sg.values;
    out.meta = {{"method", "spectral:" + sg.method},
                {"atom_weight", kfou::format_double(sg.atom_weight)},
                {"atom_center", kfou::format_double(sg.atom_center)},
                {"err_estimate", kfou::format_double(sg.err_estimate)},
                {"imag_residue", kfou::format_double(sg.imag_residue)}};
    return out;
  }
  kfou::KernelResult kr;
  if (method == "auto") kr = kfou::fundamental_auto(p, t, k.y, k.tol, k.max_terms);
  else if (method == "finite_sum") kr = kfou::fundamental_finite_sum(p, t, k.y);
  else if (method == "series") kr = kfou::fundamental_series(p, t, k.y, k.tol, k.max_terms);
  else throw kfou::ConfigError("unknown method '" + method + "' (auto, finite_sum, series, spectral)");
  if (kr.meta.singular_at_center) reject_singular_points(g, kr.atom_center);
  out.values = kfou::evaluate_regular(kr.regular, g.points());
  out.regular = kr.regular;
  out.closed = true;
  out.meta = {{"method", kr.meta.method},
              {"resonance", kr.meta.resonance.describe()},
              {"atom_weight", kfou::format_double(kr.atom_weight)},
              {"atom_center", kfou::format_double(kr.atom_center)},
              {"terms_used", std::to_string(kr.meta.terms_used)},
              {"truncation_error", kfou::format_double(kr.meta.truncation_error)}};
  return out;
}

int run_kernel(const Common& c, const KernelCmd& k, const json& echo) {
  if (k.figure) return run_figure(k.figure, c, echo);
  const kfou::ModelParams p = c.model.params();
  const kfou::UniformGrid g = kfou::UniformGrid::parse(k.grid);
  const Eigen::ArrayXd xs = g.points();
  std::vector<std::string> written;
  for (double t : k.t) {
    KernelCurve curve = kernel_curve(p, t, k, g);
    kfou::CsvMeta meta = header(c, echo);
    meta.emplace_back("t", tag(t));
    meta.emplace_back("y", kfou::format_double(k.y));
    meta.emplace_back("params", p.describe());
    for (const auto& kv : curve.meta) meta.push_back(kv);
    try {
      const kfou::StationaryDensity st = kfou::stationary_density(p);
      if (st.kind() == kfou::StationaryDensity::Kind::Closed) {
        double sup = 0.0;
        for (Eigen::Index i = 0; i < xs.size(); ++i)
          sup = std::max(sup, std::abs(curve.values(i) - st(xs(i))));
        meta.emplace_back("stationary_sup_diff", kfou::format_double(sup));
      }
    } catch (const kfou::UnsupportedError&) {
    }
    std::vector<kfou::CsvColumn> cols = {{"regular", curve.values}};
    std::string styles = "solid";
    if (k.plot) {
      const kfou::ModelParams q(p.B(), p.beta(), k.plot_sigma, p.lambda(), p.k());
      cols.push_back({"regular_sigma=" + kfou::format_double(k.plot_sigma),
                      kernel_curve(q, t, k, g).values});
      styles += ";dash";
    }
    meta.emplace_back("styles", styles);
    meta.emplace_back("panel_title", "t = " + tag(t));
    const std::string path = out_path(c, "kernel_t" + tag(t) + ".csv");
    kfou::write_csv(path, meta, xs, cols);
    written.push_back(path);
    std::cout << "wrote " << path << "\n";
    if (k.report && curve.closed) {
      json j = json_header(c, echo);
      j["t"] = t;
      j["discontinuities"] = kfou::to_json(kfou::weak_discontinuity_report(curve.regular));
      const std::string rpath = out_path(c, "kernel_t" + tag(t) + "_report.json");
      kfou::write_json(rpath, j);
      std::cout << "wrote " << rpath << "\n";
    }
  }
  if (k.plot) {
    const std::string script = out_path(c, "kernel_plot.py");
    kfou::write_text(script, kfou::plot_script(written, "Fundamental solution"));
    std::cout << "wrote " << script << "\n";
  }
  return kOk;
}

// Density command.

struct DensityCmd {
  std::string init = "gaussian";
  double a = 2.0;
  double variance = 0.5;
  std::vector<double> t = {0.0, 1.0, 10.0};
  std::string grid = "-8:8:1601";
  std::string branch = "auto";
  double tol = 1e-10;
  bool plot = false;
  bool report = false;
  int figure = 0;
};

kfou::InitialData make_init(const DensityCmd& d) {
  if (d.init == "gaussian") return kfou::GaussianData{d.a, d.variance};
  if (d.init == "step") return kfou::StepData{d.a};
  if (!fs::exists(d.init))
    throw kfou::ConfigError("--init must be gaussian, step, or an existing CSV file; got '" +
                            d.init + "'");
  auto [x, v] = kfou::read_two_column_csv(d.init);
  kfou::SampledData s = kfou::SampledData::ingest(std::move(x), std::move(v));
  if (std::abs(s.ingest_mass - 1.0) > 1e-6)
    std::cerr << "warning: " << d.init << " has mass " << kfou::format_double(s.ingest_mass)
              << "; renormalized to 1\n";
  return s;
}

int run_density(const Common& c, const DensityCmd& d, const json& echo) {
  if (d.figure) return run_figure(d.figure, c, echo);
  const kfou::ModelParams p = c.model.params();
  const kfou::InitialData init = make_init(d);
  kfou::EvolveOptions opts;
  opts.branch = kfou::parse_branch(d.branch);
  opts.grid = kfou::UniformGrid::parse(d.grid);
  opts.quad_tol = d.tol;
  const Eigen::ArrayXd xs = opts.grid.points();
  std::vector<std::string> written;
  for (double t : d.t) {
    const kfou::EvolvedDensity e = kfou::evolve(p, init, t, opts);
    kfou::CsvMeta meta = header(c, echo);
    meta.emplace_back("t", tag(t));
    meta.emplace_back("params", p.describe());
    meta.emplace_back("branch", kfou::to_string(e.branch));
    meta.emplace_back("styles", t == 0.0 ? "dashdot" : "solid");
    meta.emplace_back("panel_title", "t = " + tag(t));
    const std::string path = out_path(c, "density_t" + tag(t) + ".csv");
    kfou::write_csv(path, meta, xs, {{"value", e.sample(opts.grid)}});
    written.push_back(path);
    std::cout << "wrote " << path << "\n";
    if (d.report && e.branch == kfou::Branch::ClosedForm) {
      json j = json_header(c, echo);
      j["t"] = t;
      j["discontinuities"] = kfou::to_json(kfou::weak_discontinuity_report(e.expr));
      const std::string rpath = out_path(c, "density_t" + tag(t) + "_report.json");
      kfou::write_json(rpath, j);
      std::cout << "wrote " << rpath << "\n";
    }
  }
  if (d.plot) {
    const std::string script = out_path(c, "density_plot.py");
    kfou::write_text(script, kfou::plot_script(written, "Density evolution"));
    std::cout << "wrote " << script << "\n";
  }
  return kOk;
}

// Simulate command.

struct SimulateCmd {
  double y = 0.0;
  double t = 1.0;
  long paths = 100000;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string scheme = "exact";
  int euler_steps = 1000;
  std::string against = "kernel";
  std::string samples;
  std::string grid = "-12:12:2401";
};

int run_simulate(const Common& c, const SimulateCmd& s, const json& echo) {
  const kfou::ModelParams p = c.model.params();
  kfou::SimOptions so;
  so.threads = s.threads;
  if (s.scheme == "exact") so.scheme = kfou::Scheme::Exact;
  else if (s.scheme == "euler") so.scheme = kfou::Scheme::Euler;
  else throw kfou::ConfigError("unknown scheme '" + s.scheme + "' (exact, euler)");
  so.euler_steps = s.euler_steps;
  const auto samples = kfou::simulate(p, s.y, s.t, s.paths, s.seed, so);
  kfou::SimReport r;
  if (s.against == "kernel") {
    r = kfou::ks_against(samples, kfou::fundamental_auto(p, s.t, s.y), s.seed);
  } else if (s.against == "spectral") {
    const kfou::SpectralGrid g =
        kfou::invert_grid({p, s.t, s.y}, kfou::UniformGrid::parse(s.grid), p.sigma() == 0.0);
    r = kfou::ks_against(samples, g, s.seed);
  } else if (s.against == "none") {
    r = kfou::summarize(samples, s.seed);
  } else {
    throw kfou::ConfigError("unknown --against '" + s.against + "' (kernel, spectral, none)");
  }
  json j = json_header(c, echo);
  j["report"] = kfou::to_json(r);
  j["expected_atom_fraction"] = kfou::singular_amplitude(p, s.t);
  const kfou::CharMoments cm = kfou::moments_from_char({p, s.t, s.y});
  j["expected_mean"] = cm.mean;
  j["expected_variance"] = cm.variance;
  const std::string path = out_path(c, "simulate_report.json");
  kfou::write_json(path, j);
  std::cout << j["report"].dump(2) << "\nwrote " << path << "\n";
  if (!s.samples.empty()) {
    std::vector<double> v;
    v.reserve(samples.size());
    for (const auto& ps : samples) v.push_back(ps.terminal);
    const std::string spath = out_path(c, s.samples);
    kfou::write_single_column(spath, "terminal", v);
    std::cout << "wrote " << spath << "\n";
  }
  return kOk;
}

// Validate command.

struct ValidateCmd {
  std::string suite = "quick";
  std::vector<std::string> only;
  std::uint64_t seed = 20260101;
  int threads = 1;
  std::string report = "validate_report.json";
};

int run_validate(const Common& c, const ValidateCmd& v, const json& echo) {
  kfou::ValidationOptions opts;
  opts.suite = kfou::parse_suite(v.suite);
  opts.seed = v.seed;
  opts.threads = v.threads;
  opts.only = v.only;
  const kfou::ValidationReport rep = kfou::run_validation(opts);
  for (const auto& ch : rep.checks) {
    std::cout << (ch.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(18) << ch.name
              << " measured " << kfou::format_double(ch.measured) << " tol "
              << kfou::format_double(ch.tolerance) << " (" << std::fixed << std::setprecision(2)
              << ch.seconds << " s)" << std::defaultfloat << std::setprecision(6) << "\n      "
              << ch.detail << "\n";
  }
  json j = json_header(c, echo);
  j.update(kfou::to_json(rep));
  const std::string path = out_path(c, v.report);
  kfou::write_json(path, j);
  std::cout << "wrote " << path << "\n";
  return rep.passed() ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jump-diffusion OU kernels, densities, simulation and validation", "kfou"};
  app.set_version_flag("--version", std::string(KFOU_VERSION));
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file with option values; command-line flags win");
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  app.add_option("--B", c.model.B, "Drift level B")->capture_default_str();
  app.add_option("--beta", c.model.beta, "Reversion speed beta > 0")->capture_default_str();
  app.add_option("--sigma", c.model.sigma, "Diffusion amplitude sigma >= 0")->capture_default_str();
  app.add_option("--lambda", c.model.lambda, "Jump intensity lambda >= 0")->capture_default_str();
  app.add_option("--k", c.model.k, "Laplace jump scale k > 0")->capture_default_str();
  app.add_flag("--deterministic", c.deterministic, "Omit timestamps so reruns are byte-identical");
  app.add_option("--out", c.out, "Output directory")->capture_default_str();

  KernelCmd kc;
  CLI::App* kernel = app.add_subcommand("kernel", "Fundamental solution on a grid");
  kernel->add_option("--t", kc.t, "Times, comma separated")->delimiter(',')->capture_default_str();
  kernel->add_option("--y", kc.y, "Initial point")->capture_default_str();
  kernel->add_option("--grid", kc.grid, "Grid min:max:count")->capture_default_str();
  kernel->add_option("--method", kc.method, "auto, finite_sum, series or spectral")
      ->capture_default_str();
  kernel->add_option("--tol", kc.tol, "Series or quadrature tolerance")->capture_default_str();
  kernel->add_option("--max-terms", kc.max_terms, "Series term cap")->capture_default_str();
  kernel->add_flag("--plot", kc.plot, "Add a sigma > 0 companion curve and a plot script");
  kernel->add_option("--plot-sigma", kc.plot_sigma, "sigma of the companion curve")
      ->capture_default_str();
  kernel->add_flag("--report", kc.report, "Write discontinuity reports as JSON");
  kernel->add_option("--figure", kc.figure, "Preset reproducing figure 1 or 2")
      ->check(CLI::IsMember({1, 2}));

  DensityCmd dc;
  CLI::App* density = app.add_subcommand("density", "Evolve an initial density");
  density->add_option("--init", dc.init, "gaussian, step, or a two-column CSV path")
      ->capture_default_str();
  density->add_option("--a", dc.a, "Center parameter of gaussian/step data")->capture_default_str();
  density->add_option("--variance", dc.variance, "Variance of gaussian data")->capture_default_str();
  density->add_option("--t", dc.t, "Times, comma separated")->delimiter(',')->capture_default_str();
  density->add_option("--grid", dc.grid, "Grid min:max:count")->capture_default_str();
  density->add_option("--branch", dc.branch, "auto, closed or quadrature")->capture_default_str();
  density->add_option("--tol", dc.tol, "Quadrature tolerance")->capture_default_str();
  density->add_flag("--plot", dc.plot, "Write a plot script");
  density->add_flag("--report", dc.report, "Write discontinuity reports as JSON");
  density->add_option("--figure", dc.figure, "Preset reproducing figure 1 or 2")
      ->check(CLI::IsMember({1, 2}));

  SimulateCmd sc;
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo terminal samples");
  simulate->add_option("--y", sc.y, "Initial point")->capture_default_str();
  simulate->add_option("--t", sc.t, "Horizon")->capture_default_str();
  simulate->add_option("--paths", sc.paths, "Number of paths")->capture_default_str();
  simulate->add_option("--seed", sc.seed, "Seed")->capture_default_str();
  simulate->add_option("--threads", sc.threads, "Worker threads")->capture_default_str();
  simulate->add_option("--scheme", sc.scheme, "exact or euler")->capture_default_str();
  simulate->add_option("--euler-steps", sc.euler_steps, "Steps of the euler scheme")
      ->capture_default_str();
  simulate->add_option("--against", sc.against, "kernel, spectral or none")->capture_default_str();
  simulate->add_option("--samples", sc.samples, "Also write samples to this CSV file");
  simulate->add_option("--grid", sc.grid, "Spectral grid for --against spectral")
      ->capture_default_str();

  ValidateCmd vc;
  CLI::App* validate = app.add_subcommand("validate", "Cross-oracle validation suite");
  validate->add_option("--suite", vc.suite, "quick or full")->capture_default_str();
  validate->add_option("--only", vc.only, "Run only these checks")->delimiter(',');
  validate->add_option("--seed", vc.seed, "Seed for Monte Carlo checks")->capture_default_str();
  validate->add_option("--threads", vc.threads, "Worker threads")->capture_default_str();
  validate->add_option("--report", vc.report, "Report file name")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    const json echo = effective_config(app, *sub);
    if (sub == kernel) return run_kernel(c, kc, echo);
    if (sub == density) return run_density(c, dc, echo);
    if (sub == simulate) return run_simulate(c, sc, echo);
    return run_validate(c, vc, echo);
  } catch (const kfou::SingularityError& e) {
    std::cerr << "singularity: " << e.what() << "\n";
    return kSingular;
  } catch (const kfou::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const kfou::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const kfou::UnsupportedError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
}
