#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rdfr/exact_riemann.hpp"
#include "rdfr/harness.hpp"
#include "rdfr/operators.hpp"
#include "rdfr/rd_core.hpp"

using namespace rdfr;

namespace {

// Every run/sweep flag maps onto a settings key; flags given on the command
// line are applied after the config file.
struct SettingFlags {
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;

  void add(CLI::App& app, const std::string& key, const std::string& help) {
    options.emplace_back(key, app.add_option("--" + key, values[key], help));
  }
  std::map<std::string, std::string> given() const {
    std::map<std::string, std::string> out;
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) out[key] = values.at(key);
    }
    return out;
  }
};

void add_case_flags(CLI::App& app, SettingFlags& f) {
  f.add(app, "case", "sod | shu_osher | vortex | ffs | rmi | custom");
  f.add(app, "order", "polynomial order p");
  f.add(app, "dof", "degrees of freedom (1D total, vortex per direction)");
  f.add(app, "h", "element size for ffs / rmi");
  f.add(app, "scheme", "rd | fr | rd-fr | fv-p0");
  f.add(app, "force-scheme", "override the sensor: rd | fr | blend");
  f.add(app, "cfl", "CFL number");
  f.add(app, "t-end", "final time");
  f.add(app, "guard", "admissibility guard on | off");
  f.add(app, "sensor-epsilon", "sensor threshold scale");
  f.add(app, "gamma", "ratio of specific heats");
  f.add(app, "integrator", "ssp-rk3 | euler");
  f.add(app, "max-steps", "stop after this many steps (0: no limit)");
  f.add(app, "s0", "entropy lower bound for diagnostics");
  f.add(app, "vortex-strength", "vortex strength S");
  f.add(app, "vortex-radius", "vortex radius R");
  f.add(app, "vortex-vx", "vortex advection velocity x");
  f.add(app, "vortex-vy", "vortex advection velocity y");
  f.add(app, "vortex-mach", "vortex Mach number");
  f.add(app, "rmi-amplitude", "interface perturbation amplitude");
  f.add(app, "rmi-wavenumber", "interface perturbation wavenumber");
  f.add(app, "custom-domain", "custom case domain 'a,b'");
  f.add(app, "custom-breaks", "custom case discontinuity positions 'x1,x2,...'");
  f.add(app, "custom-states", "custom case states 'rho:u:p;rho:u:p;...'");
  f.add(app, "custom-periodic", "custom case periodic boundaries on | off");
}

CaseConfig build_config(const std::string& config_file, const SettingFlags& flags,
                        bool serial, int threads) {
  CaseConfig cfg;
  if (!config_file.empty()) {
    std::ifstream in(config_file);
    if (!in) throw std::runtime_error("cannot read config file '" + config_file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    apply_settings(cfg, parse_key_value(ss.str()));
  }
  apply_settings(cfg, flags.given());
  cfg.exec = serial ? Execution::Serial : Execution::Parallel;
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
  return cfg;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots != std::string::npos) {
      const int a = std::stoi(item.substr(0, dots));
      const int b = std::stoi(item.substr(dots + 2));
      for (int k = a; k <= b; ++k) out.push_back(k);
    } else if (!item.empty()) {
      out.push_back(std::stoi(item));
    }
  }
  if (out.empty()) throw std::invalid_argument("empty list '" + s + "'");
  return out;
}

// Property checks mirroring the unit suite, for a quick sanity run.
int verify() {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, double value) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << value << ")\n";
    if (!ok) ++failures;
  };
  const Gas gas;

  double sbp = 0.0, rows = 0.0;
  for (int p = 0; p <= kMaxOrder; ++p) {
    const auto& ops = operators_for(p);
    sbp = std::max(sbp, sbp_residual(ops));
    for (int i = 0; i < ops.num_sol(); ++i) {
      double s = 0.0;
      for (int j = 0; j < ops.num_flux(); ++j) s += ops.c(i, j);
      rows = std::max(rows, std::abs(s));
    }
  }
  report("sbp identity p<=12", sbp <= 1e-11, sbp);
  report("c_matrix row sums", rows <= 1e-12, rows);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(0.1, 2.0), vel(-1.0, 1.0);
  double aux = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const State<1> a = prim_to_cons(Primitive<1>{pos(rng), {vel(rng)}, pos(rng)}, gas);
    const State<1> b = prim_to_cons(Primitive<1>{pos(rng), {vel(rng)}, pos(rng)}, gas);
    const double c = vel(rng) + (vel(rng) > 0 ? 0.5 : -0.5);
    const Vector<1> n{1.0};
    const double d = d_coefficient(a, b, c, n, gas);
    const auto fa = euler_flux(a, n, gas);
    const auto fb = euler_flux(b, n, gas);
    const auto fbar = aux_flux(a, b, fa, fb, c, d);
    const auto ubar = aux_state(a, b, fa, fb, c, d);
    for (int m = 0; m < 3; ++m) {
      aux = std::max(aux, std::abs(c * fbar[m] + d * ubar[m] - d * a[m] - c * fa[m]));
    }
  }
  report("auxiliary flux/state identity", aux <= 1e-12, aux);

  {
    CaseConfig cfg;
    cfg.id = CaseId::Custom;
    cfg.custom = {0.0, 1.0, {0.25, 0.75}, {{1.0, {0.3}, 1.0}, {0.125, {0.3}, 0.1}, {1.0, {0.3}, 1.0}}, true};
    cfg.order = 3;
    cfg.dof = 256;
    cfg.max_steps = 200;
    cfg.t_end = 10.0;
    auto setup = init_case<1>(cfg);
    const auto before = setup.disc.totals(setup.field.states);
    auto r = run_case<1>(cfg);
    const auto after = r.disc.totals(r.field.states);
    double drift = 0.0;
    for (int m = 0; m < 3; ++m) drift = std::max(drift, std::abs(after[m] - before[m]) / std::abs(before[m]));
    report("conservation over 200 steps", drift <= 1e-10, drift);
  }
  {
    CaseConfig cfg;
    cfg.id = CaseId::Sod;
    cfg.order = 3;
    cfg.dof = 256;
    auto r = run_case<1>(cfg);
    report("sod positivity", r.inadmissible_nodes == 0, static_cast<double>(r.inadmissible_nodes));
  }
  {
    const Primitive<1> l{1.0, {0.0}, 1.0}, rr{0.125, {0.0}, 0.1};
    const auto s = solve_star(l, rr, gas);
    const double res = std::abs(pressure_function(s.p_star, l, rr, gas));
    report("riemann star residual", res <= 1e-12, res);
  }
  std::cout << (failures ? "verify: FAILED\n" : "verify: all checks passed\n");
  return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemann difference / flux reconstruction Euler solver"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  std::string config_file;
  bool serial = false;
  int threads = 0;

  auto* run = app.add_subcommand("run", "run a single case");
  SettingFlags run_flags;
  add_case_flags(*run, run_flags);
  std::string out_dir, formats = "csv,vtk";
  int snapshots = 0;
  run->add_option("--config", config_file, "key = value config file (flags override it)");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--formats", formats, "comma separated: csv, vtk");
  run->add_option("--snapshots", snapshots, "intermediate outputs evenly spaced in time");
  run->add_flag("--serial", serial, "use the serial reference kernels");
  run->add_option("--threads", threads, "OpenMP worker count");

  auto* sweep = app.add_subcommand("sweep", "convergence study over orders and resolutions");
  SettingFlags sweep_flags;
  add_case_flags(*sweep, sweep_flags);
  std::string orders = "0,1,3,7", dofs = "256,512,1024,2048,4096", style = "table";
  sweep->add_option("--config", config_file, "key = value config file (flags override it)");
  sweep->add_option("--orders", orders, "orders, e.g. 0..7 or 0,1,3");
  sweep->add_option("--dofs", dofs, "resolutions, e.g. 256,512,1024");
  sweep->add_option("--report", style, "table | csv")->check(CLI::IsMember({"table", "csv"}));
  sweep->add_flag("--serial", serial, "use the serial reference kernels");
  sweep->add_option("--threads", threads, "OpenMP worker count");

  app.add_subcommand("verify", "run the operator / conservation / positivity checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("verify")) return verify();

    if (app.got_subcommand("run")) {
      CaseConfig cfg = build_config(config_file, run_flags, serial, threads);
      std::map<std::string, std::string> extra;
      if (run->count("--out")) extra["out"] = out_dir;
      if (run->count("--formats")) extra["formats"] = formats;
      if (run->count("--snapshots")) extra["snapshots"] = std::to_string(snapshots);
      apply_settings(cfg, extra);
      const auto meta = run_and_write(cfg);
      for (const char* key : {"case", "scheme", "order", "steps", "t-final", "rd-fraction-final",
                              "dt-halvings", "inadmissible-nodes", "error-l1", "error-l2",
                              "error-linf", "error-vortex-l2"}) {
        if (auto it = meta.find(key); it != meta.end()) {
          std::cout << it->first << " = " << it->second << '\n';
        }
      }
      return 0;
    }

    CaseConfig cfg = build_config(config_file, sweep_flags, serial, threads);
    const auto table = convergence_study(cfg, parse_int_list(orders), parse_int_list(dofs),
                                         [](const SweepPoint& p) {
                                           std::cerr << "  P" << p.order << " dof " << p.dof
                                                     << " l1 " << p.error.l1 << '\n';
                                         });
    std::cout << format_sweep(table, style);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "rdsolve: " << e.what() << '\n';
    return 2;
  }
}
