#include "rdfr/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rdfr/exact_riemann.hpp"
#include "rdfr/timestepping.hpp"

namespace rdfr {

namespace {

std::string sci(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(17) << x;
  return os.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << std::scientific << std::setprecision(17);
  return os;
}

template <int Dim>
double rd_fraction(const SolutionField<Dim>& field) {
  if (field.flags.empty()) return 0.0;
  const auto rd = std::count(field.flags.begin(), field.flags.end(), Scheme::RD);
  return static_cast<double>(rd) / static_cast<double>(field.flags.size());
}

template <int Dim>
double min_entropy(const SolutionField<Dim>& field, const Gas& gas) {
  double s = std::numeric_limits<double>::infinity();
  for (const auto& u : field.states) s = std::min(s, entropy(u, gas));
  return s;
}

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace

template <int Dim>
RunResult<Dim> run_case(const CaseConfig& cfg, const StepObserver<Dim>& observer) {
  auto setup = init_case<Dim>(cfg);
  RunResult<Dim> r{std::move(setup.disc), std::move(setup.field), 0.0, 0, {}, 0.0, 0, 0, {}};
  const auto& disc = r.disc;
  auto& field = r.field;
  const Gas& gas = disc.gas();
  const double t_end = effective_t_end(cfg);
  const SchemeMode mode = effective_mode(cfg);
  const SensorConfig sensor{cfg.sensor_epsilon};
  const bool guard = effective_guard(cfg);
  r.s0 = cfg.s0 ? *cfg.s0 : min_entropy(field, gas);

  auto residual = [&](const std::vector<State<Dim>>& in, std::vector<State<Dim>>& out) {
    disc.residual(in, field.flags, out, cfg.exec);
  };
  auto step = [&](std::vector<State<Dim>>& u, double dt) {
    if (cfg.integrator == Integrator::SspRk3) ssp_rk3_step(u, residual, dt);
    else forward_euler_step(u, residual, dt);
  };
  auto first_bad = [&](const std::vector<State<Dim>>& u) {
    return disc.first_inadmissible(u);
  };

  // A rejected trial step switches FR elements holding inadmissible states,
  // and their neighbours, to RD before any halving.
  long fallback_elements = 0;
  auto fallback = [&](const std::vector<State<Dim>>& trial, int bad) {
    const auto& mesh = disc.mesh();
    const int ppe = disc.points_per_element();
    std::vector<int> hit;
    for (int e = 0; e < disc.num_elements(); ++e) {
      bool broken = e == bad;
      for (int i = 0; i < ppe && !broken; ++i) {
        broken = !is_admissible(trial[static_cast<std::size_t>(e) * ppe + i]);
      }
      if (broken) hit.push_back(e);
    }
    bool changed = false;
    auto demote = [&](int e) {
      if (field.flags[e] == Scheme::FR) {
        field.flags[e] = Scheme::RD;
        ++fallback_elements;
        changed = true;
      }
    };
    for (int e : hit) {
      demote(e);
      for (const auto& f : mesh.faces[e]) {
        if (!f.is_boundary()) demote(f.neighbor);
      }
    }
    return changed;
  };

  long halvings_total = 0;
  double rd_sum = 0.0;
  while (r.t < t_end && (cfg.max_steps <= 0 || r.steps < cfg.max_steps)) {
    disc.update_flags(field, mode, sensor, cfg.exec);
    const double dt_cfl = disc.compute_dt(field.states, cfg.cfl);
    const double dt = clip_dt(dt_cfl, r.t, t_end);
    const bool last = dt < dt_cfl || r.t + dt >= t_end;

    AdvanceResult adv{dt, 0};
    if (guard) {
      adv = guarded_advance<State<Dim>>(field.states, dt, step, first_bad, 20, fallback);
    } else {
      step(field.states, dt);
      const int bad = first_bad(field.states);
      if (bad >= 0) {
        throw StabilityError(bad, dt, "inadmissible state after unguarded step");
      }
    }
    r.t = (last && adv.halvings == 0) ? t_end : r.t + adv.dt;
    ++r.steps;
    halvings_total += adv.halvings;

    for (const auto& u : field.states) {
      if (!is_admissible(u)) ++r.inadmissible_nodes;
      else if (entropy(u, gas) < r.s0) ++r.entropy_violations;
    }

    StepRecord rec{r.t, adv.dt, adv.halvings, rd_fraction(field)};
    rd_sum += rec.rd_fraction;
    r.history.push_back(rec);
    if (observer) observer(disc, field, rec);
  }

  auto& m = r.metadata;
  m = to_settings(cfg);
  m["dimension"] = std::to_string(Dim);
  m["solution-points"] = "gauss-legendre";
  m["flux-points"] = "endpoints+midpoints";
  m["fr-correction"] = "radau-dg";
  m["interface-flux"] = "rusanov-davis";
  m["rd-flux"] = "lax-friedrichs-davis";
  m["dt-rule"] = "cfl*h_dir/((2p+1)*max(|v_dir|+c))";
  m["sensor"] = "persson-density threshold=epsilon*p^-4";
  m["mesh"] = disc.mesh().summary();
  m["threads"] = std::to_string(cfg.exec == Execution::Serial ? 1 : worker_count());
  m["steps"] = std::to_string(r.steps);
  m["t-final"] = sci(r.t);
  m["dt-halvings"] = std::to_string(halvings_total);
  m["rd-fallback-elements"] = std::to_string(fallback_elements);
  m["rd-fraction-final"] = sci(rd_fraction(field));
  m["rd-fraction-mean"] = sci(r.steps ? rd_sum / static_cast<double>(r.steps) : 0.0);
  m["s0"] = sci(r.s0);
  m["entropy-violations"] = std::to_string(r.entropy_violations);
  m["inadmissible-nodes"] = std::to_string(r.inadmissible_nodes);
  return r;
}

template RunResult<1> run_case<1>(const CaseConfig&, const StepObserver<1>&);
template RunResult<2> run_case<2>(const CaseConfig&, const StepObserver<2>&);

template <int Dim>
ErrorReport error_norms(const Discretization<Dim>& disc, const SolutionField<Dim>& field,
                        const std::function<double(const Vector<Dim>&)>& reference) {
  if (!reference) throw std::invalid_argument("error_norms: missing reference");
  ErrorReport rep;
  double l2 = 0.0;
  for (int e = 0; e < disc.num_elements(); ++e) {
    const auto el = field.element(e);
    for (int i = 0; i < disc.points_per_element(); ++i) {
      const double err = std::abs(el[i].density() - reference(disc.node_position(e, i)));
      const double w = disc.node_weight(e, i);
      rep.l1 += w * err;
      l2 += w * err * err;
      rep.linf = std::max(rep.linf, err);
    }
  }
  rep.l2 = std::sqrt(l2);
  return rep;
}

template ErrorReport error_norms<1>(const Discretization<1>&, const SolutionField<1>&,
                                    const std::function<double(const Vector<1>&)>&);
template ErrorReport error_norms<2>(const Discretization<2>&, const SolutionField<2>&,
                                    const std::function<double(const Vector<2>&)>&);

std::function<double(const Vector<1>&)> riemann_density(const Primitive<1>& qL,
                                                        const Primitive<1>& qR,
                                                        double x0, double t,
                                                        const Gas& gas) {
  if (t <= 0.0) {
    return [=](const Vector<1>& x) { return x[0] <= x0 ? qL.rho : qR.rho; };
  }
  const StarState star = solve_star(qL, qR, gas);
  return [=](const Vector<1>& x) { return sample(qL, qR, star, (x[0] - x0) / t, gas).rho; };
}

namespace {

constexpr double kShuOsherA = -5.0;
constexpr double kShuOsherB = 5.0;

std::vector<Primitive<1>> shu_osher_godunov(const CaseConfig& cfg, double t_end, int cells) {
  const Gas gas{cfg.gamma};
  const double a = kShuOsherA;
  const double dx = (kShuOsherB - a) / cells;
  std::vector<Primitive<1>> q(cells);
  for (int i = 0; i < cells; ++i) q[i] = initial_state_1d(cfg, a + (i + 0.5) * dx);
  const Primitive<1> inflow = initial_state_1d(cfg, a);
  std::vector<State<1>> u(cells), flux(cells + 1);
  for (int i = 0; i < cells; ++i) u[i] = prim_to_cons(q[i], gas);

  double t = 0.0;
  while (t < t_end) {
    double smax = 0.0;
    for (const auto& w : q) smax = std::max(smax, std::abs(w.vel[0]) + sound_speed(w, gas));
    double dt = 0.8 * dx / smax;
    const bool last = t + dt >= t_end;
    if (last) dt = t_end - t;
#pragma omp parallel for schedule(static)
    for (int f = 0; f <= cells; ++f) {
      const Primitive<1>& l = f == 0 ? inflow : q[f - 1];
      const Primitive<1>& r = f == cells ? q[cells - 1] : q[f];
      flux[f] = godunov_flux(l, r, gas);
    }
    for (int i = 0; i < cells; ++i) {
      u[i] -= dt / dx * (flux[i + 1] - flux[i]);
      q[i] = cons_to_prim(u[i], gas);
    }
    t = last ? t_end : t + dt;
  }
  return q;
}

int cell_of(double x, int cells) {
  const double dx = (kShuOsherB - kShuOsherA) / cells;
  return std::clamp(static_cast<int>(std::floor((x - kShuOsherA) / dx)), 0, cells - 1);
}

}  // namespace

std::function<double(const Vector<1>&)> shu_osher_reference(const CaseConfig& cfg,
                                                            int cells) {
  const auto q = shu_osher_godunov(cfg, effective_t_end(cfg), cells);
  std::vector<double> rho(cells);
  for (int i = 0; i < cells; ++i) rho[i] = q[i].rho;
  return [rho = std::move(rho), cells](const Vector<1>& x) { return rho[cell_of(x[0], cells)]; };
}

std::vector<Primitive<1>> reference_profile(const CaseConfig& cfg, double t,
                                            const std::vector<double>& points) {
  const Gas gas{cfg.gamma};
  std::vector<Primitive<1>> out;
  out.reserve(points.size());
  auto riemann = [&](const Primitive<1>& l, const Primitive<1>& r, double x0) {
    if (t <= 0.0) {
      for (double x : points) out.push_back(x <= x0 ? l : r);
      return;
    }
    const StarState star = solve_star(l, r, gas);
    for (double x : points) out.push_back(sample(l, r, star, (x - x0) / t, gas));
  };
  switch (cfg.id) {
    case CaseId::Sod:
      riemann(initial_state_1d(cfg, 0.0), initial_state_1d(cfg, 1.0), 0.5);
      return out;
    case CaseId::ShuOsher: {
      const int cells = 20000;
      const auto q = shu_osher_godunov(cfg, t, cells);
      for (double x : points) out.push_back(q[cell_of(x, cells)]);
      return out;
    }
    case CaseId::Custom:
      if (cfg.custom.breaks.size() == 1 && !cfg.custom.periodic) {
        riemann(cfg.custom.states[0], cfg.custom.states[1], cfg.custom.breaks[0]);
        return out;
      }
      break;
    default:
      break;
  }
  throw std::invalid_argument("no reference solution for case " + to_string(cfg.id));
}

std::function<double(const Vector<1>&)> reference_density_1d(const CaseConfig& cfg) {
  const Gas gas{cfg.gamma};
  const double t = effective_t_end(cfg);
  switch (cfg.id) {
    case CaseId::Sod:
      return riemann_density(initial_state_1d(cfg, 0.0), initial_state_1d(cfg, 1.0), 0.5, t,
                             gas);
    case CaseId::ShuOsher:
      return shu_osher_reference(cfg);
    case CaseId::Custom:
      if (cfg.custom.breaks.size() == 1 && !cfg.custom.periodic) {
        return riemann_density(cfg.custom.states[0], cfg.custom.states[1],
                               cfg.custom.breaks[0], t, gas);
      }
      break;
    default:
      break;
  }
  throw std::invalid_argument("no reference solution for case " + to_string(cfg.id));
}

double vortex_error(const CaseConfig& cfg, const Discretization<2>& disc,
                    const SolutionField<2>& field, double t) {
  const Gas gas{cfg.gamma};
  double sum = 0.0;
  for (int e = 0; e < disc.num_elements(); ++e) {
    const auto el = field.element(e);
    for (int i = 0; i < disc.points_per_element(); ++i) {
      const double ref = vortex_solution(cfg.vortex, gas, disc.node_position(e, i), t).rho;
      const double d = el[i].density() - ref;
      sum += disc.node_weight(e, i) * d * d;
    }
  }
  return std::sqrt(sum);
}

double convergence_rate(const std::vector<double>& resolution,
                        const std::vector<double>& error) {
  if (resolution.size() != error.size()) {
    throw std::invalid_argument("convergence_rate: size mismatch");
  }
  if (resolution.size() < 3) {
    throw std::invalid_argument("convergence_rate: needs at least 3 resolutions");
  }
  const double n = static_cast<double>(error.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < error.size(); ++k) {
    if (!(resolution[k] > 0.0 && error[k] > 0.0)) {
      throw std::invalid_argument("convergence_rate: values must be positive");
    }
    const double x = std::log(resolution[k]);
    const double y = std::log(error[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SweepTable convergence_study(const CaseConfig& base, const std::vector<int>& orders,
                             const std::vector<int>& dofs,
                             const std::function<void(const SweepPoint&)>& progress) {
  if (dofs.size() < 3) throw std::invalid_argument("convergence study needs >= 3 resolutions");
  const int dim = dimension(base.id);
  if (dim == 2 && base.id != CaseId::Vortex) {
    throw std::invalid_argument("convergence study needs a case with a reference solution");
  }
  SweepTable table;
  for (int p : orders) {
    std::vector<double> hb, e1, e2, ei;
    for (int dof : dofs) {
      CaseConfig cfg = base;
      cfg.order = p;
      cfg.dof = dof;
      cfg.output = {};
      if (cfg.scheme == SchemeChoice::FvP0) cfg.scheme = SchemeChoice::RD;
      SweepPoint pt{p, dof, 0.0, {}};
      if (dim == 1) {
        auto r = run_case<1>(cfg);
        pt.hbar = 1.0 / dof;
        pt.error = error_norms<1>(r.disc, r.field, reference_density_1d(cfg));
      } else {
        auto r = run_case<2>(cfg);
        pt.hbar = 1.0 / std::sqrt(static_cast<double>(r.disc.num_points()));
        const double e = vortex_error(cfg, r.disc, r.field, r.t);
        pt.error = {e, e, e};
      }
      if (progress) progress(pt);
      table.points.push_back(pt);
      hb.push_back(pt.hbar);
      e1.push_back(pt.error.l1);
      e2.push_back(pt.error.l2);
      ei.push_back(pt.error.linf);
    }
    table.rates[p] = {convergence_rate(hb, e1), convergence_rate(hb, e2),
                      convergence_rate(hb, ei)};
  }
  return table;
}

std::string format_sweep(const SweepTable& table, const std::string& style) {
  std::ostringstream os;
  if (style == "csv") {
    os << "order,dof,hbar,l1,l2,linf\n";
    for (const auto& p : table.points) {
      os << p.order << ',' << p.dof << ',' << sci(p.hbar) << ',' << sci(p.error.l1) << ','
         << sci(p.error.l2) << ',' << sci(p.error.linf) << '\n';
    }
    for (const auto& [p, r] : table.rates) {
      os << p << ",roc,," << sci(r.l1) << ',' << sci(r.l2) << ',' << sci(r.linf) << '\n';
    }
    return os.str();
  }
  if (style != "table") throw std::invalid_argument("unknown report style '" + style + "'");

  std::vector<int> orders, dofs;
  for (const auto& p : table.points) {
    if (std::find(orders.begin(), orders.end(), p.order) == orders.end()) orders.push_back(p.order);
    if (std::find(dofs.begin(), dofs.end(), p.dof) == dofs.end()) dofs.push_back(p.dof);
  }
  auto lookup = [&](int order, int dof) -> const SweepPoint* {
    for (const auto& p : table.points) {
      if (p.order == order && p.dof == dof) return &p;
    }
    return nullptr;
  };
  const char* names[3] = {"L1", "L2", "Linf"};
  for (int norm = 0; norm < 3; ++norm) {
    auto pick = [norm](const ErrorReport& r) {
      return norm == 0 ? r.l1 : norm == 1 ? r.l2 : r.linf;
    };
    os << names[norm] << " density error\n" << std::setw(8) << "DoF";
    for (int p : orders) os << std::setw(12) << ("P" + std::to_string(p));
    os << '\n';
    for (int dof : dofs) {
      os << std::setw(8) << dof;
      for (int p : orders) {
        const SweepPoint* pt = lookup(p, dof);
        std::ostringstream cell;
        if (pt) cell << std::scientific << std::setprecision(2) << pick(pt->error);
        else cell << "-";
        os << std::setw(12) << cell.str();
      }
      os << '\n';
    }
    os << std::setw(8) << "RoC";
    for (int p : orders) {
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(4) << pick(table.rates.at(p));
      os << std::setw(12) << cell.str();
    }
    os << "\n\n";
  }
  return os.str();
}

void write_line_csv(const std::string& path, const Discretization<1>& disc,
                    const SolutionField<1>& field) {
  auto os = open_out(path);
  os << "x,rho,u,p\n";
  for (int e = 0; e < disc.num_elements(); ++e) {
    const auto el = field.element(e);
    for (int i = 0; i < disc.points_per_element(); ++i) {
      const auto q = cons_to_prim(el[i], disc.gas());
      os << disc.node_position(e, i)[0] << ',' << q.rho << ',' << q.vel[0] << ',' << q.p
         << '\n';
    }
  }
}

void write_points_csv(const std::string& path, const Discretization<2>& disc,
                      const SolutionField<2>& field) {
  auto os = open_out(path);
  os << "x,y,rho,u,v,p,element,scheme\n";
  for (int e = 0; e < disc.num_elements(); ++e) {
    const auto el = field.element(e);
    for (int i = 0; i < disc.points_per_element(); ++i) {
      const auto x = disc.node_position(e, i);
      const auto q = cons_to_prim(el[i], disc.gas());
      os << x[0] << ',' << x[1] << ',' << q.rho << ',' << q.vel[0] << ',' << q.vel[1] << ','
         << q.p << ',' << e << ',' << (field.flags[e] == Scheme::RD ? "rd" : "fr") << '\n';
    }
  }
}

void write_structured_vtk(const std::string& path, const Discretization<2>& disc,
                          const SolutionField<2>& field) {
  const auto& mesh = disc.mesh();
  const auto& ops = disc.ops();
  const int n = ops.num_sol();
  const int nx = mesh.lattice[0], ny = mesh.lattice[1];
  std::vector<int> owner(static_cast<std::size_t>(nx) * ny, -1);
  for (int e = 0; e < mesh.size(); ++e) {
    owner[static_cast<std::size_t>(mesh.elements[e].index[1]) * nx +
          mesh.elements[e].index[0]] = e;
  }
  const int px = nx * n, py = ny * n;
  const std::size_t total = static_cast<std::size_t>(px) * py;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  auto os = open_out(path);
  os << "# vtk DataFile Version 3.0\nrdsolve solution\nASCII\nDATASET STRUCTURED_GRID\n";
  os << "DIMENSIONS " << px << ' ' << py << " 1\nPOINTS " << total << " double\n";
  for (int J = 0; J < py; ++J) {
    for (int I = 0; I < px; ++I) {
      const double x = mesh.origin[0] + mesh.spacing[0] * (I / n + 0.5 * (ops.sol_nodes[I % n] + 1.0));
      const double y = mesh.origin[1] + mesh.spacing[1] * (J / n + 0.5 * (ops.sol_nodes[J % n] + 1.0));
      os << x << ' ' << y << " 0\n";
    }
  }
  std::vector<Primitive<2>> q(total, Primitive<2>{nan, {nan, nan}, nan});
  std::vector<double> flag(total, nan);
  for (int J = 0; J < py; ++J) {
    for (int I = 0; I < px; ++I) {
      const int e = owner[static_cast<std::size_t>(J / n) * nx + I / n];
      if (e < 0) continue;
      const std::size_t k = static_cast<std::size_t>(J) * px + I;
      q[k] = cons_to_prim(field.element(e)[(J % n) * n + I % n], disc.gas());
      flag[k] = field.flags[e] == Scheme::RD ? 0.0 : 1.0;
    }
  }
  os << "POINT_DATA " << total << '\n';
  auto scalar = [&](const char* name, auto get) {
    os << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (std::size_t k = 0; k < total; ++k) os << get(k) << '\n';
  };
  scalar("rho", [&](std::size_t k) { return q[k].rho; });
  scalar("p", [&](std::size_t k) { return q[k].p; });
  scalar("scheme_fr", [&](std::size_t k) { return flag[k]; });
  os << "VECTORS velocity double\n";
  for (std::size_t k = 0; k < total; ++k) os << q[k].vel[0] << ' ' << q[k].vel[1] << " 0\n";
}

void write_metadata(const std::string& path,
                    const std::map<std::string, std::string>& metadata) {
  auto os = open_out(path);
  for (const auto& [k, v] : metadata) os << k << " = " << v << '\n';
}

namespace {

void write_history(const std::string& path, const std::vector<StepRecord>& history) {
  auto os = open_out(path);
  os << "step,t,dt,halvings,rd_fraction\n";
  for (std::size_t k = 0; k < history.size(); ++k) {
    const auto& h = history[k];
    os << k + 1 << ',' << h.t << ',' << h.dt << ',' << h.halvings << ',' << h.rd_fraction
       << '\n';
  }
}

template <int Dim>
void write_fields(const std::string& stem, const OutputPlan& plan,
                  const Discretization<Dim>& disc, const SolutionField<Dim>& field) {
  if constexpr (Dim == 1) {
    if (plan.csv) write_line_csv(stem + ".csv", disc, field);
  } else {
    if (plan.csv) write_points_csv(stem + ".csv", disc, field);
    if (plan.vtk) write_structured_vtk(stem + ".vtk", disc, field);
  }
}

template <int Dim>
std::map<std::string, std::string> run_and_write_dim(const CaseConfig& cfg) {
  const auto& plan = cfg.output;
  const std::filesystem::path dir = plan.dir;
  if (!plan.dir.empty()) std::filesystem::create_directories(dir);

  StepObserver<Dim> observer;
  int next_snapshot = 1;
  const double t_end = effective_t_end(cfg);
  if (!plan.dir.empty() && plan.snapshots > 0) {
    observer = [&](const Discretization<Dim>& disc, const SolutionField<Dim>& field,
                   const StepRecord& rec) {
      while (next_snapshot <= plan.snapshots &&
             rec.t >= t_end * next_snapshot / (plan.snapshots + 1)) {
        std::ostringstream name;
        name << "snapshot_" << std::setw(4) << std::setfill('0') << next_snapshot;
        write_fields<Dim>((dir / name.str()).string(), plan, disc, field);
        ++next_snapshot;
      }
    };
  }

  auto r = run_case<Dim>(cfg, observer);
  auto meta = r.metadata;
  if constexpr (Dim == 1) {
    std::function<double(const Vector<1>&)> ref;
    try {
      ref = reference_density_1d(cfg);
    } catch (const std::invalid_argument&) {
    }
    if (ref) {
      const auto err = error_norms<1>(r.disc, r.field, ref);
      meta["error-l1"] = sci(err.l1);
      meta["error-l2"] = sci(err.l2);
      meta["error-linf"] = sci(err.linf);
      if (!plan.dir.empty()) {
        auto os = open_out((dir / "reference.csv").string());
        os << "x,rho_ref\n";
        for (int e = 0; e < r.disc.num_elements(); ++e) {
          for (int i = 0; i < r.disc.points_per_element(); ++i) {
            const auto x = r.disc.node_position(e, i);
            os << x[0] << ',' << ref(x) << '\n';
          }
        }
      }
    }
  } else if (cfg.id == CaseId::Vortex) {
    meta["error-vortex-l2"] = sci(vortex_error(cfg, r.disc, r.field, r.t));
  }

  if (!plan.dir.empty()) {
    write_fields<Dim>((dir / "solution").string(), plan, r.disc, r.field);
    write_history((dir / "dt_history.csv").string(), r.history);
    {
      auto os = open_out((dir / "flags.csv").string());
      os << "element,scheme\n";
      for (int e = 0; e < r.field.num_elements(); ++e) {
        os << e << ',' << (r.field.flags[e] == Scheme::RD ? "rd" : "fr") << '\n';
      }
    }
    write_metadata((dir / "metadata.txt").string(), meta);
  }
  return meta;
}

}  // namespace

std::map<std::string, std::string> run_and_write(const CaseConfig& cfg) {
  validate(cfg);
  return dimension(cfg.id) == 1 ? run_and_write_dim<1>(cfg) : run_and_write_dim<2>(cfg);
}

}  // namespace rdfr
