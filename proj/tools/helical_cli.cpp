#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "helical/constructions.hpp"
#include "helical/continuum.hpp"
#include "helical/energy.hpp"
#include "helical/io.hpp"
#include "helical/lattice.hpp"
#include "helical/optimize.hpp"
#include "helical/sweep.hpp"
#include "helical/topology.hpp"

namespace {

using namespace helical;

constexpr int kExitError = 1;
constexpr int kExitParse = 2;

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

nlohmann::json breakdown_json(const EnergyBreakdown& e) {
  return nlohmann::json::parse(e.to_json());
}

int cmd_energy(const std::string& path, double dh, double dv) {
  const SpinField u = read_spinfield(path);
  const ModelParams p(dh, dv);
  EnergyBreakdown direct = energy_direct(u, p);
  EnergyBreakdown reform = energy_reformulated(u, p);
  const VortexSet vs = vortices(angles_from_spins(u));
  direct.n_vortices = static_cast<std::int64_t>(vs.count());
  reform.n_vortices = direct.n_vortices;
  const double gap = std::abs(direct.total - reform.total) /
                     (direct.total > 0.0 ? direct.total : 1.0);
  nlohmann::json out;
  out["direct"] = breakdown_json(direct);
  out["reformulated"] = breakdown_json(reform);
  out["rel_gap"] = gap;
  out["n_vortices"] = direct.n_vortices;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_validate(const std::string& path, double delta) {
  bool all_ok = true;
  auto report = [&](const char* name, bool ok, const std::string& detail = "") {
    all_ok = all_ok && ok;
    std::cout << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
  };

  const FieldKind kind = peek_field_kind(path);
  AngularField th = kind == FieldKind::Spin ? angles_from_spins(read_spinfield(path))
                                            : read_angularfield(path);
  if (kind == FieldKind::Spin) {
    const SpinField u = read_spinfield(path);
    double worst = 0.0;
    for (const Vec2& s : u.spins) worst = std::max(worst, std::abs(norm(s) - 1.0));
    report("unit-norms", worst <= 1e-12, "max |norm-1| = " + format17(worst));
  }
  {
    double lo = 0.0, hi = 0.0;
    const int n = th.grid.n();
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        lo = std::min({lo, th.hor_at(i, j), th.ver_at(i, j)});
        hi = std::max({hi, th.hor_at(i, j), th.ver_at(i, j)});
      }
    }
    const double pi = 3.14159265358979323846;
    report("angle-range", lo >= -pi && hi < pi);
  }
  std::int64_t n_vort = -1;
  {
    bool ok = true;
    std::string detail;
    try {
      n_vort = static_cast<std::int64_t>(vortices(th).count());
      detail = "n_vortices = " + std::to_string(n_vort);
    } catch (const CurlViolation& cv) {
      ok = false;
      detail = cv.what();
    }
    report("curl-quantization", ok, detail);
  }
  if (delta > 0.0 && delta < 0.5 && n_vort >= 0) {
    const ModelParams p = ModelParams::isotropic(delta);
    const EnergyBreakdown e = energy_from_angles(th, p);
    const double lhs = th.grid.eps() * th.grid.eps() * static_cast<double>(n_vort);
    const double rhs = 64.0 * e.total;
    report("vortex-energy-bound", lhs <= rhs + 1e-300,
           format17(lhs) + " <= " + format17(rhs) + " at delta = " + format17(delta));
  } else {
    report("vortex-energy-bound", n_vort >= 0, "requires delta in (0,1/2) and quantized curl");
  }
  return all_ok ? 0 : kExitError;
}

int cmd_construct(const std::string& kind, bool periodic, double eps, double dh, double dv,
                  int sign_hor, int sign_ver, int generations, double lambda,
                  const std::string& out_path, std::string energy_json) {
  const Grid g(eps);
  const ModelParams p(dh, dv);
  SpinField u(g);
  if (kind == "ferro") {
    u = ferromagnet(g);
  } else if (kind == "helix") {
    u = helix(g, p, sign_hor, sign_ver);
  } else if (kind == "branch") {
    BranchingSpec spec = BranchingSpec::defaults(g, p);
    if (generations > 0) spec.generations = generations;
    if (lambda > 0.0) spec.lambda = lambda;
    u = periodic ? branching_periodic(g, p, spec) : branching(g, p, spec);
  } else if (kind == "vortex") {
    u = periodic ? vortex_periodic(g, p) : vortex_competitor(g, p);
  } else {
    std::cerr << "unknown construction kind: " << kind << "\n";
    return kExitError;
  }
  write_spinfield(out_path, u);
  EnergyBreakdown e = energy_direct(u, p);
  e.n_vortices = static_cast<std::int64_t>(vortices(angles_from_spins(u)).count());
  if (energy_json.empty()) energy_json = out_path + ".energy.json";
  std::ofstream js(energy_json);
  js << e.to_json() << "\n";
  std::cout << "wrote " << out_path << " (total energy " << format17(e.total) << ", "
            << e.n_vortices << " vortices)\n";
  return 0;
}

int cmd_optimize(double eps, double dh, double dv, const std::string& init,
                 const std::string& init_file, const std::string& method, int max_iter, double tol,
                 std::uint64_t seed, double penalty, const std::string& out_path,
                 const std::string& trace_path) {
  const Grid g(eps);
  const ModelParams p(dh, dv);
  SpinField u0(g);
  if (init == "ferro") {
    u0 = ferromagnet(g);
  } else if (init == "branch") {
    u0 = branching(g, p, BranchingSpec::defaults(g, p));
  } else if (init == "vortex") {
    u0 = vortex_competitor(g, p);
  } else if (init == "file") {
    u0 = read_spinfield(init_file);
  } else {
    std::cerr << "unknown init: " << init << "\n";
    return kExitError;
  }
  OptimizeOptions opts;
  opts.method = method == "anneal" ? OptimizeMethod::AnnealedRestarts
                                   : OptimizeMethod::GradientDescent;
  opts.max_iter = max_iter;
  opts.grad_tol = tol;
  opts.seed = seed;
  opts.periodic_penalty = penalty;
  const MinimizeResult res = minimize(u0, p, opts);
  if (!out_path.empty()) write_spinfield(out_path, res.field);
  if (!trace_path.empty()) {
    std::ofstream tr(trace_path);
    tr << "iter,energy,grad_norm\n";
    for (const TracePoint& t : res.trace) {
      tr << t.iter << "," << format17(t.energy) << "," << format17(t.grad_norm) << "\n";
    }
  }
  std::cout << "final energy " << format17(res.final_energy) << ", grad norm "
            << format17(res.final_grad_norm) << ", " << res.trace.size() << " trace points\n";
  return 0;
}

int cmd_sweep(const std::string& eps_csv, const std::string& delta_csv,
              const std::string& strategies, int threads, std::uint64_t seed, int opt_max_iter,
              const std::string& out_path, const std::string& plot_path) {
  SweepOptions opts;
  opts.strategies.ferro = strategies.find("ferro") != std::string::npos;
  opts.strategies.branch = strategies.find("branch") != std::string::npos;
  opts.strategies.vortex = strategies.find("vortex") != std::string::npos;
  opts.strategies.optimize = strategies.find("opt") != std::string::npos;
  opts.threads = threads;
  opts.seed = seed;
  opts.optimizer.max_iter = opt_max_iter;
  const std::vector<double> eps_list = parse_list(eps_csv);
  const std::vector<double> delta_list = parse_list(delta_csv);

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "cannot open " << out_path << "\n";
      return kExitError;
    }
    os = &file;
  }
  (*os) << sweep_csv_header() << "\n";
  const std::vector<SweepRecord> records =
      phase_sweep(eps_list, delta_list, opts, [&](const SweepRecord& r) {
        (*os) << sweep_csv_row(r) << "\n";
        os->flush();
      });
  if (!plot_path.empty()) {
    std::ofstream plot(plot_path);
    plot << "delta\\eps";
    for (double e : eps_list) plot << "," << format17(e);
    plot << "\n";
    std::size_t k = 0;
    for (double d : delta_list) {
      plot << format17(d);
      for (std::size_t c = 0; c < eps_list.size(); ++c, ++k) {
        plot << "," << (records[k].error.empty() ? records[k].winner : "ERROR");
      }
      plot << "\n";
    }
  }
  return 0;
}

int cmd_gamma(const std::string& field, double sigma, double gamma, int n_min, int n_max,
              int quad_res, const std::string& out_path) {
  ContinuumField f;
  if (field == "flat") {
    f = ContinuumField::flat(sigma, gamma);
  } else if (field == "shear") {
    f = ContinuumField::shear(sigma, gamma);
  } else {
    const ChiralityField c = read_chirality(field);
    f = ContinuumField::sampled(c.grid, c.w, c.z, sigma, gamma);
  }
  const GammaSchedule sched = GammaSchedule::dyadic(n_min, n_max, sigma, gamma);
  const std::vector<GammaRow> rows = gamma_experiment(f, sched, quad_res);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    os = &file;
  }
  (*os) << "n,eps,delta_ver,H_n,H,gap\n";
  for (const GammaRow& r : rows) {
    (*os) << r.level << "," << format17(r.eps) << "," << format17(r.delta_ver) << ","
          << (std::isinf(r.h_n) ? "inf" : format17(r.h_n)) << "," << format17(r.h_continuum)
          << "," << (std::isinf(r.gap) ? "inf" : format17(r.gap)) << "\n";
  }
  return 0;
}

// Inject `--key value` pairs from a JSON config ahead of the user's own
// flags; with take-last options the explicit flags win.
std::vector<std::string> apply_config(const std::vector<std::string>& args) {
  std::string config_path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) config_path = args[k + 1];
    if (args[k].rfind("--config=", 0) == 0) config_path = args[k].substr(9);
  }
  if (config_path.empty()) return args;
  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot open config: " + config_path);
  nlohmann::json j;
  in >> j;
  std::vector<std::string> out;
  out.push_back(args.empty() ? "" : args[0]);
  std::size_t sub_end = 1;  // insert right after the subcommand token
  if (args.size() > 1 && !args[1].empty() && args[1][0] != '-') sub_end = 2;
  for (std::size_t k = 1; k < sub_end; ++k) out.push_back(args[k]);
  for (auto it = j.begin(); it != j.end(); ++it) {
    out.push_back("--" + it.key());
    if (!it.value().is_boolean()) {
      out.push_back(it.value().is_string() ? it.value().get<std::string>()
                                           : nlohmann::json(it.value()).dump());
    } else if (!it.value().get<bool>()) {
      out.back() = "--no-" + it.key();  // CLI11 flag negation form
    }
  }
  for (std::size_t k = sub_end; k < args.size(); ++k) out.push_back(args[k]);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice spin-system engine: energies, competitors, sweeps"};
  app.option_defaults()->take_last();
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with default option values (flags win)");
  int threads = 1;
  app.add_option("--threads", threads, "worker threads for sweeps")->envname("HELICAL_THREADS");
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "seed for every stochastic component");
  app.require_subcommand(1);

  // energy
  auto* energy = app.add_subcommand("energy", "evaluate a field file");
  std::string field_path;
  double delta = 0.25, delta_hor = -1.0, delta_ver = -1.0;
  energy->add_option("--field", field_path, "spin field file")->required();
  energy->add_option("--delta", delta, "isotropic interaction parameter");
  energy->add_option("--delta-hor", delta_hor, "horizontal parameter (overrides --delta)");
  energy->add_option("--delta-ver", delta_ver, "vertical parameter (overrides --delta)");

  // validate
  auto* validate = app.add_subcommand("validate", "run the field invariant suite");
  std::string v_path;
  double v_delta = 0.25;
  validate->add_option("--field", v_path, "spin or angular field file")->required();
  validate->add_option("--delta", v_delta, "parameter for the vortex energy bound");

  // construct
  auto* construct = app.add_subcommand("construct", "build a competitor field");
  std::string c_kind, c_out, c_energy_json;
  bool c_periodic = false;
  double c_eps = 0.0625, c_delta = 0.25, c_dh = -1.0, c_dv = -1.0, c_lambda = 0.0;
  int c_sh = 1, c_sv = 1, c_gen = 0;
  construct->add_option("--kind", c_kind, "ferro|helix|branch|vortex")->required();
  construct->add_flag("--periodic", c_periodic, "periodic variant");
  construct->add_option("--eps", c_eps, "lattice spacing")->required();
  construct->add_option("--delta", c_delta, "isotropic interaction parameter");
  construct->add_option("--delta-hor", c_dh, "horizontal parameter");
  construct->add_option("--delta-ver", c_dv, "vertical parameter");
  construct->add_option("--sign-hor", c_sh, "helix horizontal sign");
  construct->add_option("--sign-ver", c_sv, "helix vertical sign");
  construct->add_option("--generations", c_gen, "branching generations override");
  construct->add_option("--lambda", c_lambda, "branching mollification radius override");
  construct->add_option("--out", c_out, "output field file")->required();
  construct->add_option("--energy-json", c_energy_json, "energy sidecar path");

  // optimize
  auto* optimize = app.add_subcommand("optimize", "minimize the lattice energy");
  std::string o_init = "ferro", o_init_file, o_method = "gd", o_out, o_trace;
  double o_eps = 0.0625, o_delta = 0.25, o_tol = 1e-8, o_penalty = 0.0;
  int o_max_iter = 2000;
  optimize->add_option("--eps", o_eps, "lattice spacing")->required();
  optimize->add_option("--delta", o_delta, "isotropic interaction parameter")->required();
  optimize->add_option("--init", o_init, "ferro|branch|vortex|file");
  optimize->add_option("--init-file", o_init_file, "field file when --init file");
  optimize->add_option("--method", o_method, "gd|anneal");
  optimize->add_option("--max-iter", o_max_iter, "iteration budget");
  optimize->add_option("--tol", o_tol, "gradient tolerance");
  optimize->add_option("--penalty-weight", o_penalty, "periodicity penalty weight");
  optimize->add_option("--out", o_out, "final field file");
  optimize->add_option("--trace", o_trace, "trace CSV path");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "phase-diagram parameter sweep");
  std::string s_eps = "0.0625,0.03125", s_delta = "0.25,0.0625", s_strat = "ferro,branch,vortex";
  std::string s_out, s_plot;
  int s_opt_iter = 300;
  sweep->add_option("--eps-list", s_eps, "comma-separated eps values");
  sweep->add_option("--delta-list", s_delta, "comma-separated delta values");
  sweep->add_option("--strategies", s_strat, "subset of ferro,branch,vortex,opt");
  sweep->add_option("--opt-max-iter", s_opt_iter, "optimizer budget when opt is selected");
  sweep->add_option("--out", s_out, "CSV output path (default stdout)");
  sweep->add_option("--plot-data", s_plot, "winner-grid CSV path");

  // gamma-check
  auto* gamma = app.add_subcommand("gamma-check", "discrete-to-continuum gap table");
  std::string g_field = "shear", g_out;
  double g_sigma = 1.0, g_gamma = 1.0;
  int g_nmin = 4, g_nmax = 8, g_quad = 512;
  gamma->add_option("--test-field", g_field, "flat|shear|<chirality file>");
  gamma->add_option("--sigma", g_sigma, "target eps/sqrt(2 delta_ver)");
  gamma->add_option("--gamma", g_gamma, "target sqrt(delta_hor/delta_ver)");
  gamma->add_option("--n-min", g_nmin, "coarsest dyadic level");
  gamma->add_option("--n-max", g_nmax, "finest dyadic level");
  gamma->add_option("--quad-res", g_quad, "quadrature resolution per axis");
  gamma->add_option("--out", g_out, "CSV output path (default stdout)");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = apply_config(args);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitParse;
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*energy) {
      const double dh = delta_hor > 0.0 ? delta_hor : delta;
      const double dv = delta_ver > 0.0 ? delta_ver : delta;
      return cmd_energy(field_path, dh, dv);
    }
    if (*validate) return cmd_validate(v_path, v_delta);
    if (*construct) {
      const double dh = c_dh > 0.0 ? c_dh : c_delta;
      const double dv = c_dv > 0.0 ? c_dv : c_delta;
      return cmd_construct(c_kind, c_periodic, c_eps, dh, dv, c_sh, c_sv, c_gen, c_lambda, c_out,
                           c_energy_json);
    }
    if (*optimize) {
      return cmd_optimize(o_eps, o_delta, o_delta, o_init, o_init_file, o_method, o_max_iter,
                          o_tol, seed, o_penalty, o_out, o_trace);
    }
    if (*sweep) return cmd_sweep(s_eps, s_delta, s_strat, threads, seed, s_opt_iter, s_out, s_plot);
    if (*gamma) return cmd_gamma(g_field, g_sigma, g_gamma, g_nmin, g_nmax, g_quad, g_out);
  } catch (const ParseError& pe) {
    std::cerr << "error: " << pe.what() << " (line " << pe.line << ")\n";
    return kExitParse;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitError;
  }
  return 0;
}
