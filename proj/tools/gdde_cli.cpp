/* Copyright 2026 The gamma-dde Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "gdde_cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "gdde/analysis.hpp"
#include "gdde/approximations.hpp"
#include "gdde/chain_reduction.hpp"
#include "gdde/epi.hpp"
#include "gdde/epi_io.hpp"
#include "gdde/error.hpp"
#include "gdde/fcrk.hpp"
#include "gdde/problems.hpp"

namespace gdde::cli {

namespace {

using nlohmann::json;

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double or_default(double v, double fallback) { return std::isnan(v) ? fallback : v; }

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0) throw ConfigError(std::string("malformed ") + what + " entry: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

HistoryFunction parse_history(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::vector<double> args =
      colon == std::string::npos ? std::vector<double>{} : parse_list(text.substr(colon + 1), "history");
  if (kind == "constant" && args.size() == 1) return HistoryFunction::constant(args[0]);
  if (kind == "exponential" && args.size() == 2) {
    return HistoryFunction::exponential(args[0], args[1]);
  }
  if (kind == "point_mass" && (args.size() == 1 || args.size() == 2)) {
    return HistoryFunction::point_mass(args[0], args.size() == 2 ? args[1] : 0.0);
  }
  throw ConfigError("history must be constant:c, exponential:c,rho or point_mass:w[,x0]");
}

void apply_config(CLI::App* app, const std::string& path) {
  if (path.empty()) return;
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  json doc;
  try {
    f >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "config") continue;
    std::string name = key;
    CLI::Option* opt = app->get_option_no_throw("--" + name);
    if (opt == nullptr) {
      for (char& c : name) c = c == '_' ? '-' : c;
      opt = app->get_option_no_throw("--" + name);
    }
    if (opt == nullptr) {
      opt = app->get_option_no_throw(key);
    }
    if (opt == nullptr) throw ConfigError("unknown config key: " + key);
    if (opt->count() > 0) continue;
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_boolean()) {
      text = value.get<bool>() ? "true" : "false";
    } else if (value.is_array()) {
      for (const auto& item : value) {
        if (!text.empty()) text += ',';
        text += item.is_string() ? item.get<std::string>() : item.dump();
      }
    } else {
      text = value.dump();
    }
    opt->add_result(text);
    opt->run_callback();
  }
}

struct Common {
  std::string config;
  std::uint64_t seed = 0;
  std::string output = "-";
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "JSON file with option values; flags take precedence");
  app->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  app->add_option("--output,-o", c.output, "Output file, '-' for standard output")
      ->capture_default_str();
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path != "-" && !path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ConfigError("cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void write_row(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << format_double(v);
    first = false;
  }
  os << '\n';
}

struct ProblemOpts {
  std::string problem = "linear";
  double j = kUnset;
  double tau = kUnset;
  double alpha = kUnset;
  double beta = kUnset;
  double capacity = 2.0;
  std::string history;
  double t0 = 0.0;
  double t_end = 10.0;
};

void add_problem_opts(CLI::App* app, ProblemOpts& p) {
  app->add_option("--problem", p.problem, "linear, nonlinear, linear_gamma or custom-linear")
      ->capture_default_str();
  app->add_option("--j", p.j, "Gamma shape");
  app->add_option("--tau", p.tau, "Mean delay");
  app->add_option("--alpha", p.alpha, "Coefficient of x (custom-linear)");
  app->add_option("--beta", p.beta, "Coefficient of the convolution");
  app->add_option("--K", p.capacity, "Carrying capacity (nonlinear)")->capture_default_str();
  app->add_option("--history", p.history,
                  "constant:c, exponential:c,rho or point_mass:w[,x0]");
  app->add_option("--t0", p.t0, "Initial time")->capture_default_str();
  app->add_option("--T", p.t_end, "Final time")->capture_default_str();
}

ProblemSpec make_spec(const ProblemOpts& o) {
  ProblemSpec spec;
  switch (parse_problem_kind(o.problem)) {
    case ProblemKind::linear:
      spec = linear_test_problem(or_default(o.j, 1.0), or_default(o.tau, 1.0), o.t_end);
      break;
    case ProblemKind::nonlinear:
      spec = nonlinear_test_problem(or_default(o.j, 3.0), or_default(o.tau, 2.25), o.capacity,
                                    o.t_end);
      break;
    case ProblemKind::linear_gamma:
      spec = linear_gamma_problem(or_default(o.tau, 4.65), or_default(o.j, 2.15),
                                  or_default(o.beta, 0.5), o.t_end);
      break;
    case ProblemKind::custom_linear:
      if (std::isnan(o.alpha) || std::isnan(o.beta)) {
        throw ConfigError("custom-linear needs --alpha and --beta");
      }
      spec = custom_linear_problem(or_default(o.j, 2.5), or_default(o.tau, 1.0), o.alpha,
                                   o.beta, o.t_end);
      break;
  }
  if (!(spec.j > 0.0) || !(spec.tau > 0.0)) throw ConfigError("--j and --tau must be positive");
  if (!(o.t_end > o.t0)) throw ConfigError("--T must exceed --t0");
  spec.t0 = o.t0;
  if (!o.history.empty()) spec.history = parse_history(o.history);
  return spec;
}

struct MethodOpts {
  std::string method = "fcrk4";
  double h = 0.05;
  double xi = kUnset;
  int panels = 0;
  std::string variant = "fixed";
  double tol = 1e-10;
  std::string init_mode = "paper_literal";
};

void add_method_opts(CLI::App* app, MethodOpts& m, bool with_method) {
  if (with_method) {
    app->add_option("--method", m.method, "fcrk4 or chain")->capture_default_str();
    app->add_option("--variant", m.variant, "Chain variant: erlang, fixed, smoothed, smoothed_regularized")
        ->capture_default_str();
  }
  app->add_option("--h", m.h, "FCRK step (output spacing for chains)")->capture_default_str();
  app->add_option("--xi", m.xi, "Quadrature coupling constant");
  app->add_option("--panels", m.panels, "Fixed panel count (0 couples to the step)")
      ->capture_default_str();
  app->add_option("--tol", m.tol, "rk45 tolerance for chains")->capture_default_str();
  app->add_option("--init-mode", m.init_mode, "paper_literal or kernel_consistent")
      ->capture_default_str();
}

QuadConfig make_quad(const MethodOpts& m, double default_xi) {
  if (!(m.h > 0.0)) throw ConfigError("--h must be positive");
  QuadConfig q;
  q.xi = or_default(m.xi, default_xi);
  if (!(q.xi > 0.0)) throw ConfigError("--xi must be positive");
  if (m.panels < 0) throw ConfigError("--panels must be non-negative");
  q.panels = m.panels;
  return q;
}

std::vector<double> mesh_values(const Solution& sol) {
  std::vector<double> x;
  x.reserve(sol.steps() + 1);
  for (std::size_t n = 0; n <= sol.steps(); ++n) x.push_back(sol.mesh_value(n));
  return x;
}

int cmd_solve(const ProblemOpts& po, const MethodOpts& mo, std::ostream& os) {
  const ProblemSpec spec = make_spec(po);
  if (mo.method == "fcrk4") {
    const Solution sol = fcrk4_solve(spec.dde(), mo.h, make_quad(mo, QuadConfig{}.xi));
    os << "t,x\n";
    for (std::size_t n = 0; n <= sol.steps(); ++n) write_row(os, {sol.mesh()[n], sol.mesh_value(n)});
    return kExitOk;
  }
  if (mo.method != "chain") throw ConfigError("--method must be fcrk4 or chain");
  if (!(mo.h > 0.0) || !(mo.tol > 0.0)) throw ConfigError("--h and --tol must be positive");
  const ChainVariant variant = parse_chain_variant(mo.variant);
  const ChainParams params = make_chain(variant, spec.j, spec.tau);
  const ChainOdeProblem chain = build_chain_system(spec.rhs(), params, spec.history, spec.t0,
                                                   spec.t_end, parse_init_mode(mo.init_mode));
  const std::vector<double> grid = uniform_grid(spec.t0, spec.t_end, mo.h);
  AdaptiveStep step;
  step.rtol = mo.tol;
  step.atol = mo.tol;
  const Trajectory tr = rk45_adaptive(chain.system().rhs, chain.initial_state(), spec.t0, grid, step);
  const char prefix = variant == ChainVariant::erlang ? 'A' : 'B';
  os << "t,x";
  for (int i = 1; i <= params.stages; ++i) os << ',' << prefix << i;
  os << '\n';
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    os << format_double(tr.times[k]);
    for (double v : tr.states[k]) os << ',' << format_double(v);
    os << '\n';
  }
  return kExitOk;
}

struct ConvergenceOpts {
  std::string h_list = "0.1,0.05,0.025,0.0125";
  std::string errors;
  std::string metric = "discrete";
};

std::function<std::vector<double>(const std::vector<double>&)> reference_for(const ProblemSpec& spec) {
  if (spec.kind == ProblemKind::linear_gamma) {
    const double c = spec.history.scale();
    const double lam = spec.history.rate();
    return [c, lam](const std::vector<double>& t) {
      std::vector<double> v;
      for (double s : t) v.push_back(c * std::exp(lam * s));
      return v;
    };
  }
  const bool unit_history = spec.history.kind() == HistoryFunction::Kind::constant &&
                            spec.history.scale() == 1.0;
  if (spec.kind == ProblemKind::linear && spec.j == 1.0 && spec.tau == 1.0 && unit_history &&
      spec.t0 == 0.0) {
    return [](const std::vector<double>& t) { return linear_test_reference(1, t); };
  }
  if (std::abs(spec.j - std::round(spec.j)) > 1e-12) {
    throw ConfigError("no reference solution for non-integer j; use linear_gamma or integer j");
  }
  return [spec](const std::vector<double>& t) {
    return solve_chain(spec, ChainVariant::erlang, t, 1e-12).component(0);
  };
}

int cmd_convergence(const ProblemOpts& po, const MethodOpts& mo, const ConvergenceOpts& co,
                    std::ostream& os) {
  const std::vector<double> hs = parse_list(co.h_list, "--h-list");
  std::vector<double> errors;
  if (!co.errors.empty()) {
    errors = parse_list(co.errors, "--errors");
    if (errors.size() != hs.size()) throw ConfigError("--errors must match --h-list in length");
  } else {
    if (co.metric != "discrete" && co.metric != "global") {
      throw ConfigError("--metric must be discrete or global");
    }
    const ProblemSpec spec = make_spec(po);
    const auto reference = reference_for(spec);
    for (double h : hs) {
      MethodOpts m = mo;
      m.h = h;
      const Solution sol = fcrk4_solve(spec.dde(), h, make_quad(m, QuadConfig{}.xi));
      std::vector<double> times;
      for (std::size_t n = 0; n <= sol.steps(); ++n) {
        times.push_back(sol.mesh()[n]);
        if (co.metric == "global" && n < sol.steps()) {
          for (int q = 1; q < 4; ++q) {
            times.push_back(sol.mesh()[n] + 0.25 * q * (sol.mesh()[n + 1] - sol.mesh()[n]));
          }
        }
      }
      const std::vector<double> ref = reference(times);
      double e = 0.0;
      for (std::size_t k = 0; k < times.size(); ++k) {
        e = std::max(e, std::abs(sol.query(times[k], 0) - ref[k]));
      }
      errors.push_back(e);
    }
  }
  const ConvergenceReport r = estimate_order(hs, errors);
  os << "h,max_error\n";
  for (std::size_t k = 0; k < hs.size(); ++k) write_row(os, {hs[k], errors[k]});
  os << "# slope=" << format_double(r.slope) << '\n';
  os << "# intercept=" << format_double(r.intercept) << '\n';
  os << "# fitted_points=" << r.fitted << '\n';
  return kExitOk;
}

int cmd_compare(const ProblemOpts& po, const MethodOpts& mo, std::ostream& os) {
  const ProblemSpec spec = make_spec(po);
  const Solution sol = fcrk4_solve(spec.dde(), mo.h, make_quad(mo, QuadConfig{}.xi));
  const std::vector<double>& grid = sol.mesh();
  const std::vector<double> x = mesh_values(sol);
  const InitMode mode = parse_init_mode(mo.init_mode);
  const auto fixed = solve_chain(spec, ChainVariant::fixed, grid, mo.tol, mode).component(0);
  const auto smoothed = solve_chain(spec, ChainVariant::smoothed, grid, mo.tol, mode).component(0);
  const auto erlang = solve_chain(spec, ChainVariant::erlang, grid, mo.tol, mode).component(0);
  double df = 0.0, ds = 0.0, de = 0.0;
  os << "t,gamma_dde,fixed,smoothed,erlang\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    write_row(os, {grid[k], x[k], fixed[k], smoothed[k], erlang[k]});
    df = std::max(df, std::abs(fixed[k] - x[k]));
    ds = std::max(ds, std::abs(smoothed[k] - x[k]));
    de = std::max(de, std::abs(erlang[k] - x[k]));
  }
  os << "# max_dev_fixed=" << format_double(df) << '\n';
  os << "# max_dev_smoothed=" << format_double(ds) << '\n';
  os << "# max_dev_erlang=" << format_double(de) << '\n';
  return kExitOk;
}

std::string sign_of(double v) { return v > 0.0 ? "+" : (v < 0.0 ? "-" : "0"); }

int cmd_stability(const ProblemOpts& po, const MethodOpts& mo, std::ostream& os) {
  const double j = or_default(po.j, 2.5);
  const double tau = or_default(po.tau, 1.0);
  const double alpha = or_default(po.alpha, 0.89);
  const double beta = or_default(po.beta, -1.15);
  ProblemSpec spec = custom_linear_problem(j, tau, alpha, beta, po.t_end);
  spec.t0 = po.t0;
  if (!(po.t_end > po.t0)) throw ConfigError("--T must exceed --t0");
  if (!po.history.empty()) spec.history = parse_history(po.history);

  const Solution sol = fcrk4_solve(spec.dde(), mo.h, make_quad(mo, 1e-6));
  const double g = growth_rate(sol.mesh(), mesh_values(sol));
  json doc = {{"j", j}, {"tau", tau}, {"alpha", alpha}, {"beta", beta}};
  doc["gamma"] = {{"growth_rate", g}, {"sign", sign_of(g)}};
  const std::pair<const char*, ChainVariant> chains[] = {
      {"hypoexp", ChainVariant::fixed},
      {"smoothed", ChainVariant::smoothed},
      {"erlang", ChainVariant::erlang}};
  for (const auto& [name, variant] : chains) {
    const auto ev = dominant_eigenvalue(alpha, beta, make_chain(variant, j, tau));
    doc[name] = {{"variant", std::string(to_string(variant))},
                 {"eigenvalue", {ev.real(), ev.imag()}},
                 {"sign", sign_of(ev.real())}};
  }
  doc["hypoexp_agrees_with_gamma"] = doc["hypoexp"]["sign"] == doc["gamma"]["sign"];
  doc["erlang_agrees_with_gamma"] = doc["erlang"]["sign"] == doc["gamma"]["sign"];
  os << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_mgf_order(double j, double tau, int points, std::ostream& os) {
  if (points < 3) throw ConfigError("--points must be at least 3");
  json doc = {{"j", j}, {"tau", tau}};
  for (ChainVariant v : {ChainVariant::erlang, ChainVariant::fixed, ChainVariant::smoothed}) {
    const MgfErrorSeries s = mgf_errors(j, tau, v, points);
    double max_err = 0.0;
    for (double e : s.error) max_err = std::max(max_err, e);
    json entry = {{"max_error", max_err}};
    if (max_err >= kPrecisionFloor) {
      entry["slope"] = estimate_order(s.phi_over_a, s.error).slope;
    } else {
      entry["slope"] = nullptr;
    }
    doc[std::string(to_string(v))] = entry;
  }
  os << doc.dump(2) << '\n';
  return kExitOk;
}

struct SurvivalOpts {
  double j = 2.5;
  double tau = 1.0;
  double t_max = 6.0;
  double dt = 0.05;
  int jump = 0;
  double jump_t = 4.0;
  double delta = 1e-6;
};

int cmd_survival(const SurvivalOpts& o, std::ostream& os) {
  if (!(o.dt > 0.0) || !(o.t_max >= 0.0)) throw ConfigError("--dt must be positive, --t-max >= 0");
  os << "t,gamma,fixed,smoothed\n";
  for (double t : uniform_grid(0.0, o.t_max, o.dt)) {
    const SurvivalTriple s = survival_compare(o.j, o.tau, t);
    write_row(os, {t, s.gamma, s.fixed, s.smoothed});
  }
  if (o.jump > 0) {
    const SurvivalJump jmp = integer_jump(o.jump, o.tau, o.jump_t, o.delta);
    os << "# jump_fixed=" << format_double(jmp.fixed) << '\n';
    os << "# jump_smoothed=" << format_double(jmp.smoothed) << '\n';
  }
  return kExitOk;
}

int cmd_moment_poly(int m, double fj, double imag_tol, std::ostream& os) {
  const MomentPolynomial p = fm_polynomial(m, fj);
  json roots = json::array();
  for (const auto& z : p.roots()) roots.push_back({z.real(), z.imag()});
  const std::vector<double> real = real_roots(p, imag_tol);
  bool positive = true;
  for (double r : real) positive = positive && r > 0.0;
  const GmCheckRecord g = gm_checks(m, fj);
  json doc = {{"m", m},
              {"fj", fj},
              {"coefficients", p.coeffs},
              {"roots", roots},
              {"real_roots", real},
              {"real_root_count", real.size()},
              {"real_roots_positive", positive}};
  doc["gm_checks"] = {{"value_at_zero", g.value_at_zero},
                      {"sign_at_one", g.sign_at_one},
                      {"derivative_recurrence", g.derivative_recurrence},
                      {"odd_lower_bound", g.odd_lower_bound},
                      {"even_single_root", g.even_single_root},
                      {"passed", g.passed()}};
  os << doc.dump(2) << '\n';
  return kExitOk;
}

struct EpiOpts {
  std::string action;
  double beta = kUnset;
  double tau = kUnset;
  double j = kUnset;
  double eps = kUnset;
  double population = 1e3;
  int count = 120;
  double dt = 1.0;
  int serial = 100;
  std::string variant;
  std::string out_dir = ".";
  std::string cases_file;
  std::string serial_file;
  int max_evals = 4000;
  int restarts = 2;
};

int cmd_epi(const EpiOpts& o, std::uint64_t seed, std::ostream& os) {
  const bool fit = o.action == "fit";
  SirParams p;
  p.beta = or_default(o.beta, fit ? 0.3 : 0.5);
  p.tau = or_default(o.tau, fit ? 3.0 : 5.0);
  p.j = or_default(o.j, fit ? 2.5 : 4.0);
  p.eps = or_default(o.eps, fit ? 1e-2 : 1e-3);
  p.population = o.population;
  p.variant = parse_chain_variant(
      o.variant.empty() ? (fit ? "smoothed_regularized" : "fixed") : o.variant);
  const std::filesystem::path dir(o.out_dir);
  const std::string cases_path = o.cases_file.empty() ? (dir / "cases.csv").string() : o.cases_file;
  const std::string serial_path =
      o.serial_file.empty() ? (dir / "serial.csv").string() : o.serial_file;

  if (o.action == "simulate") {
    if (o.count < 0 || o.serial < 0) throw ConfigError("--K and --L must be non-negative");
    p.obs_times = default_obs_times(o.count, o.dt);
    Rng rng(seed);
    const EpiData data = synthesize_data(p, o.serial, rng);
    std::filesystem::create_directories(dir);
    write_cases_csv(cases_path, data);
    write_serial_csv(serial_path, data);
    long total = 0;
    for (long c : data.cases) total += c;
    os << json{{"cases_file", cases_path},
               {"serial_file", serial_path},
               {"total_cases", total},
               {"serial_count", data.serial.size()},
               {"seed", seed}}
              .dump(2)
       << '\n';
    return kExitOk;
  }

  EpiData data;
  read_cases_csv(cases_path, data);
  if (o.serial_file != "none") read_serial_csv(serial_path, data);
  if (o.action == "loglik") {
    os << json{{"loglik", log_likelihood(p, data)}}.dump(2) << '\n';
    return kExitOk;
  }
  FitOptions fo;
  fo.max_evals = o.max_evals;
  fo.restarts = o.restarts;
  fo.variant = p.variant;
  const FitResult r = mle_fit(data, p, FitBounds{}, fo);
  os << json{{"beta", r.params.beta}, {"tau", r.params.tau},       {"j", r.params.j},
             {"eps", r.params.eps},   {"loglik", r.loglik},        {"n_evals", r.n_evals},
             {"converged", r.converged}}
            .dump(2)
     << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gamma-distributed delay differential equations: FCRK solver, chain "
               "approximations, analysis and epidemic fitting",
               "gamma-dde"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  Common common;
  ProblemOpts problem;
  MethodOpts method;
  ConvergenceOpts conv;
  SurvivalOpts surv;
  EpiOpts epi;
  double mgf_j = 2.5, mgf_tau = 1.0;
  int mgf_points = 10;
  int poly_m = 5;
  double poly_fj = 0.37, poly_tol = 1e-7;

  CLI::App* solve = app.add_subcommand("solve", "Solve a DDE by FCRK or a chain ODE, CSV output");
  add_common(solve, common);
  add_problem_opts(solve, problem);
  add_method_opts(solve, method, true);

  CLI::App* convergence = app.add_subcommand("convergence", "FCRK error against step size");
  add_common(convergence, common);
  add_problem_opts(convergence, problem);
  add_method_opts(convergence, method, false);
  convergence->add_option("--h-list", conv.h_list, "Comma-separated step sizes")->capture_default_str();
  convergence->add_option("--errors", conv.errors, "Comma-separated errors: fit these instead of solving");
  convergence->add_option("--metric", conv.metric, "discrete (mesh points) or global")->capture_default_str();

  CLI::App* compare = app.add_subcommand("compare", "FCRK solution against chain approximations");
  add_common(compare, common);
  add_problem_opts(compare, problem);
  add_method_opts(compare, method, false);

  CLI::App* stability = app.add_subcommand("stability", "Growth-rate signs of x' = alpha x + beta I");
  add_common(stability, common);
  add_problem_opts(stability, problem);
  add_method_opts(stability, method, false);

  CLI::App* mgf = app.add_subcommand("mgf-order", "Order of MGF errors of the chain variants");
  add_common(mgf, common);
  mgf->add_option("--j", mgf_j, "Gamma shape")->capture_default_str();
  mgf->add_option("--tau", mgf_tau, "Mean")->capture_default_str();
  mgf->add_option("--points", mgf_points, "Samples in phi/a")->capture_default_str();

  CLI::App* survival = app.add_subcommand("survival", "Gamma and hypoexponential survival functions");
  add_common(survival, common);
  survival->add_option("--j", surv.j, "Gamma shape")->capture_default_str();
  survival->add_option("--tau", surv.tau, "Mean")->capture_default_str();
  survival->add_option("--t-max", surv.t_max, "Last time")->capture_default_str();
  survival->add_option("--dt", surv.dt, "Time spacing")->capture_default_str();
  survival->add_option("--jump", surv.jump, "Integer shape at which to report jumps (0: none)")
      ->capture_default_str();
  survival->add_option("--jump-t", surv.jump_t, "Time at which jumps are measured")->capture_default_str();
  survival->add_option("--delta", surv.delta, "Half-width around the integer")->capture_default_str();

  CLI::App* poly = app.add_subcommand("moment-poly", "Roots and identities of the moment polynomials");
  add_common(poly, common);
  poly->add_option("--m", poly_m, "Degree")->capture_default_str();
  poly->add_option("--fj", poly_fj, "Fractional part of j")->capture_default_str();
  poly->add_option("--imag-tol", poly_tol, "Imaginary-part tolerance for real roots")->capture_default_str();

  CLI::App* epic = app.add_subcommand("epi", "SIR chain: simulate data, evaluate or fit the likelihood");
  add_common(epic, common);
  epic->add_option("action", epi.action, "simulate, loglik or fit")
      ->required()
      ->check(CLI::IsMember({"simulate", "loglik", "fit"}));
  epic->add_option("--beta", epi.beta, "Infection rate (fit: initial value)");
  epic->add_option("--tau", epi.tau, "Mean infectious period");
  epic->add_option("--j", epi.j, "Shape of the infectious period");
  epic->add_option("--eps", epi.eps, "Initial infected fraction");
  epic->add_option("--M", epi.population, "Population scale")->capture_default_str();
  epic->add_option("--K", epi.count, "Number of daily observations")->capture_default_str();
  epic->add_option("--dt", epi.dt, "Observation spacing")->capture_default_str();
  epic->add_option("--L", epi.serial, "Number of serial intervals")->capture_default_str();
  epic->add_option("--variant", epi.variant, "Chain variant (default fixed; fit: smoothed_regularized)");
  epic->add_option("--out-dir", epi.out_dir, "Directory of cases.csv and serial.csv")->capture_default_str();
  epic->add_option("--cases", epi.cases_file, "Cases CSV (default <out-dir>/cases.csv)");
  epic->add_option("--serial", epi.serial_file, "Serial CSV (default <out-dir>/serial.csv, 'none' to skip)");
  epic->add_option("--max-evals", epi.max_evals, "Likelihood evaluation budget")->capture_default_str();
  epic->add_option("--restarts", epi.restarts, "Simplex restarts")->capture_default_str();

  std::vector<std::string> argv_rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());
  try {
    app.parse(argv_rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "gamma-dde: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    apply_config(active, common.config);
    Sink sink(common.output, out);
    std::ostream& os = *sink;
    os.precision(17);
    if (active == solve) return cmd_solve(problem, method, os);
    if (active == convergence) return cmd_convergence(problem, method, conv, os);
    if (active == compare) {
      MethodOpts m = method;
      if (solve->count() == 0 && compare->get_option("--h")->count() == 0) m.h = 0.025;
      return cmd_compare(problem, m, os);
    }
    if (active == stability) {
      ProblemOpts p = problem;
      MethodOpts m = method;
      if (stability->get_option("--T")->count() == 0) p.t_end = 200.0;
      if (stability->get_option("--h")->count() == 0) m.h = 0.1;
      return cmd_stability(p, m, os);
    }
    if (active == mgf) return cmd_mgf_order(mgf_j, mgf_tau, mgf_points, os);
    if (active == survival) return cmd_survival(surv, os);
    if (active == poly) return cmd_moment_poly(poly_m, poly_fj, poly_tol, os);
    if (active == epic) return cmd_epi(epi, common.seed, os);
  } catch (const ConfigError& e) {
    err << "gamma-dde: config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    err << "gamma-dde: config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "gamma-dde: invalid parameters: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SolverError& e) {
    err << "gamma-dde: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "gamma-dde: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace gdde::cli
