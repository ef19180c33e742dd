#include "rdfr/cases.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace rdfr {

namespace {

constexpr double kVortexHalfWidth = 10.0;
constexpr double kRmiLength = 10.0;
constexpr double kRmiHeight = std::numbers::pi;

const Primitive<1> kSodLeft{1.0, {0.0}, 1.0};
const Primitive<1> kSodRight{0.125, {0.0}, 0.1};
const Primitive<1> kShuOsherLeft{3.857143, {2.629369}, 10.333333};
const Primitive<2> kFfsInflow{1.4, {3.0, 0.0}, 1.0};
const Primitive<2> kRmiLeft{1.0, {0.0, 0.0}, 1.35};
const Primitive<2> kRmiCenter{1.0, {0.0, 0.0}, 0.1};
const Primitive<2> kRmiRight{35.0, {0.0, 0.0}, 0.1};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) {
    throw std::invalid_argument("setting '" + key + "': not a number: '" + v + "'");
  }
  return x;
}

long to_long(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long x = 0;
  try {
    x = std::stol(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) {
    throw std::invalid_argument("setting '" + key + "': not an integer: '" + v + "'");
  }
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("setting '" + key + "': expected on/off, got '" + v + "'");
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

int lattice_cells(double length, double h) {
  return std::max(1, static_cast<int>(std::lround(length / h)));
}

}  // namespace

int dimension(CaseId id) {
  switch (id) {
    case CaseId::Sod:
    case CaseId::ShuOsher:
    case CaseId::Custom:
      return 1;
    default:
      return 2;
  }
}

std::string to_string(CaseId id) {
  switch (id) {
    case CaseId::Sod: return "sod";
    case CaseId::ShuOsher: return "shu_osher";
    case CaseId::Vortex: return "vortex";
    case CaseId::Ffs: return "ffs";
    case CaseId::Rmi: return "rmi";
    case CaseId::Custom: return "custom";
  }
  return "?";
}

std::string to_string(SchemeChoice s) {
  switch (s) {
    case SchemeChoice::RD: return "rd";
    case SchemeChoice::FR: return "fr";
    case SchemeChoice::RdFr: return "rd-fr";
    case SchemeChoice::FvP0: return "fv-p0";
  }
  return "?";
}

CaseId parse_case(const std::string& s) {
  for (auto id : {CaseId::Sod, CaseId::ShuOsher, CaseId::Vortex, CaseId::Ffs,
                  CaseId::Rmi, CaseId::Custom}) {
    if (s == to_string(id)) return id;
  }
  if (s == "shu-osher") return CaseId::ShuOsher;
  throw std::invalid_argument("unknown case '" + s + "'");
}

SchemeChoice parse_scheme(const std::string& s) {
  for (auto c : {SchemeChoice::RD, SchemeChoice::FR, SchemeChoice::RdFr,
                 SchemeChoice::FvP0}) {
    if (s == to_string(c)) return c;
  }
  if (s == "blend") return SchemeChoice::RdFr;
  throw std::invalid_argument("unknown scheme '" + s + "'");
}

SchemeMode parse_force_scheme(const std::string& s) {
  if (s == "rd") return SchemeMode::RD;
  if (s == "fr") return SchemeMode::FR;
  if (s == "blend") return SchemeMode::Blend;
  throw std::invalid_argument("unknown forced scheme '" + s + "' (rd|fr|blend)");
}

double effective_t_end(const CaseConfig& cfg) {
  if (cfg.t_end) return *cfg.t_end;
  switch (cfg.id) {
    case CaseId::Sod: return 0.2;
    case CaseId::ShuOsher: return 0.18;
    // one convective period: domain height / |V|
    case CaseId::Vortex:
      return 2.0 * kVortexHalfWidth /
             std::hypot(cfg.vortex.vx, cfg.vortex.vy);
    case CaseId::Ffs: return 4.0;
    case CaseId::Rmi: return 10.0;
    case CaseId::Custom: return 0.2;
  }
  return 0.0;
}

bool effective_guard(const CaseConfig& cfg) {
  if (cfg.guard) return *cfg.guard;
  return cfg.id != CaseId::Vortex;
}

int effective_order(const CaseConfig& cfg) {
  return cfg.scheme == SchemeChoice::FvP0 ? 0 : cfg.order;
}

SchemeMode effective_mode(const CaseConfig& cfg) {
  if (cfg.force_scheme) return *cfg.force_scheme;
  switch (cfg.scheme) {
    case SchemeChoice::FR: return SchemeMode::FR;
    case SchemeChoice::RdFr: return SchemeMode::Blend;
    default: return SchemeMode::RD;
  }
}

double effective_h(const CaseConfig& cfg) {
  if (cfg.h > 0.0) return cfg.h;
  if (cfg.id == CaseId::Ffs) return 1.0 / 200.0;
  if (cfg.id == CaseId::Rmi) return 1.0 / 100.0;
  return 0.0;
}

void validate(const CaseConfig& cfg) {
  const int p = effective_order(cfg);
  if (p < 0 || p > kMaxOrder) {
    throw std::invalid_argument("order must lie in [0, " + std::to_string(kMaxOrder) + "]");
  }
  if (effective_mode(cfg) == SchemeMode::FR && p == 0) {
    throw std::invalid_argument("FR requires order >= 1");
  }
  if (!(cfg.cfl > 0.0)) throw std::invalid_argument("cfl must be positive");
  if (!(effective_t_end(cfg) > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (!(cfg.sensor_epsilon > 0.0)) throw std::invalid_argument("sensor epsilon must be positive");
  if (!(cfg.gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
  if (cfg.id == CaseId::Sod || cfg.id == CaseId::ShuOsher ||
      cfg.id == CaseId::Custom || cfg.id == CaseId::Vortex) {
    if (cfg.dof < p + 1 || cfg.dof % (p + 1) != 0) {
      throw std::invalid_argument("dof " + std::to_string(cfg.dof) +
                                  " is not a positive multiple of p+1 = " +
                                  std::to_string(p + 1));
    }
  }
  if (cfg.id == CaseId::Custom) {
    const auto& c = cfg.custom;
    if (c.states.empty() || c.states.size() != c.breaks.size() + 1) {
      throw std::invalid_argument("custom case needs one more state than breaks");
    }
    if (!(c.x_max > c.x_min)) throw std::invalid_argument("custom domain is degenerate");
    for (const auto& q : c.states) {
      if (!(q.rho > 0.0 && q.p > 0.0)) {
        throw std::invalid_argument("custom states must have rho > 0 and p > 0");
      }
    }
  }
  if (cfg.id == CaseId::Vortex &&
      !(std::hypot(cfg.vortex.vx, cfg.vortex.vy) > 0.0) && !cfg.t_end) {
    throw std::invalid_argument("vortex with zero advection speed needs an explicit t_end");
  }
}

Primitive<1> initial_state_1d(const CaseConfig& cfg, double x) {
  switch (cfg.id) {
    case CaseId::Sod:
      return x <= 0.5 ? kSodLeft : kSodRight;
    case CaseId::ShuOsher:
      if (x <= -4.0) return kShuOsherLeft;
      return {1.0 + 0.2 * std::sin(5.0 * x), {0.0}, 1.0};
    case CaseId::Custom: {
      const auto& c = cfg.custom;
      std::size_t k = 0;
      while (k < c.breaks.size() && x >= c.breaks[k]) ++k;
      return c.states[k];
    }
    default:
      throw std::invalid_argument("case " + to_string(cfg.id) + " is not 1D");
  }
}

Primitive<2> vortex_solution(const VortexParams& v, const Gas& gas,
                             const Vector<2>& x, double t) {
  const double width = 2.0 * kVortexHalfWidth;
  auto wrap = [width](double d) { return d - width * std::round(d / width); };
  const double dx = wrap(x[0] - v.center[0] - v.vx * t);
  const double dy = wrap(x[1] - v.center[1] - v.vy * t);
  const double g = gas.gamma;
  const double r2 = dx * dx + dy * dy;
  const double phi = std::exp((1.0 - r2) / (2.0 * v.radius * v.radius));
  const double swirl = v.strength / (2.0 * std::numbers::pi * v.radius);
  const double m2 = v.mach * v.mach;
  const double base = 1.0 - v.strength * v.strength * m2 * (g - 1.0) /
                                (8.0 * std::numbers::pi * std::numbers::pi) * phi * phi;
  Primitive<2> q;
  q.p = std::pow(base, g / (g - 1.0)) / (g * m2);
  // isentropic with unit free-stream density: p = rho^gamma / (gamma M^2)
  q.rho = std::pow(g * m2 * q.p, 1.0 / g);
  q.vel = {v.vx + swirl * dy * phi, v.vy - swirl * dx * phi};
  return q;
}

Primitive<2> initial_state_2d(const CaseConfig& cfg, const Vector<2>& x) {
  const Gas gas{cfg.gamma};
  switch (cfg.id) {
    case CaseId::Vortex:
      return vortex_solution(cfg.vortex, gas, x, 0.0);
    case CaseId::Ffs:
      return kFfsInflow;
    case CaseId::Rmi: {
      if (x[0] <= 1.0) return kRmiLeft;
      const double iface = 3.0 + cfg.rmi.amplitude * std::sin(cfg.rmi.wavenumber * x[1]);
      return x[0] <= iface ? kRmiCenter : kRmiRight;
    }
    default:
      throw std::invalid_argument("case " + to_string(cfg.id) + " is not 2D");
  }
}

template <>
Mesh<1> build_case_mesh<1>(const CaseConfig& cfg) {
  const int n = cfg.dof / (effective_order(cfg) + 1);
  switch (cfg.id) {
    case CaseId::Sod:
      return build_uniform_1d(0.0, 1.0, n, ExtrapolateBC{}, ExtrapolateBC{});
    case CaseId::ShuOsher:
      return build_uniform_1d(-5.0, 5.0, n, FixedStateBC<1>{kShuOsherLeft},
                              ExtrapolateBC{});
    case CaseId::Custom:
      if (cfg.custom.periodic) return build_uniform_1d(cfg.custom.x_min, cfg.custom.x_max, n);
      return build_uniform_1d(cfg.custom.x_min, cfg.custom.x_max, n,
                              ExtrapolateBC{}, ExtrapolateBC{});
    default:
      throw std::invalid_argument("case " + to_string(cfg.id) + " is not 1D");
  }
}

template <>
Mesh<2> build_case_mesh<2>(const CaseConfig& cfg) {
  switch (cfg.id) {
    case CaseId::Vortex: {
      const int n = cfg.dof / (effective_order(cfg) + 1);
      return build_uniform_quad({-kVortexHalfWidth, -kVortexHalfWidth},
                                {kVortexHalfWidth, kVortexHalfWidth}, n, n,
                                {PeriodicBC{}, PeriodicBC{}, PeriodicBC{}, PeriodicBC{}});
    }
    case CaseId::Ffs:
      return build_ffs_mesh(effective_h(cfg), kFfsInflow);
    case CaseId::Rmi: {
      const double h = effective_h(cfg);
      return build_uniform_quad({0.0, 0.0}, {kRmiLength, kRmiHeight},
                                lattice_cells(kRmiLength, h), lattice_cells(kRmiHeight, h),
                                {FixedStateBC<2>{kRmiLeft}, ExtrapolateBC{}, PeriodicBC{},
                                 PeriodicBC{}});
    }
    default:
      throw std::invalid_argument("case " + to_string(cfg.id) + " is not 2D");
  }
}

template <int Dim>
CaseSetup<Dim> init_case(const CaseConfig& cfg) {
  validate(cfg);
  if (dimension(cfg.id) != Dim) {
    throw std::invalid_argument("case " + to_string(cfg.id) + " has dimension " +
                                std::to_string(dimension(cfg.id)));
  }
  const Gas gas{cfg.gamma};
  Discretization<Dim> disc(build_case_mesh<Dim>(cfg), effective_order(cfg), gas);
  SolutionField<Dim> field = disc.make_field();
  for (int e = 0; e < disc.num_elements(); ++e) {
    auto el = field.element(e);
    for (int i = 0; i < disc.points_per_element(); ++i) {
      const auto x = disc.node_position(e, i);
      if constexpr (Dim == 1) {
        el[i] = prim_to_cons(initial_state_1d(cfg, x[0]), gas);
      } else {
        el[i] = prim_to_cons(initial_state_2d(cfg, x), gas);
      }
    }
  }
  return {std::move(disc), std::move(field)};
}

template CaseSetup<1> init_case<1>(const CaseConfig&);
template CaseSetup<2> init_case<2>(const CaseConfig&);

std::map<std::string, std::string> to_settings(const CaseConfig& cfg) {
  std::map<std::string, std::string> kv;
  kv["case"] = to_string(cfg.id);
  kv["order"] = std::to_string(cfg.order);
  kv["dof"] = std::to_string(cfg.dof);
  kv["h"] = fmt(effective_h(cfg));
  kv["scheme"] = to_string(cfg.scheme);
  if (cfg.force_scheme) {
    kv["force-scheme"] = *cfg.force_scheme == SchemeMode::RD   ? "rd"
                         : *cfg.force_scheme == SchemeMode::FR ? "fr"
                                                               : "blend";
  }
  kv["cfl"] = fmt(cfg.cfl);
  kv["t-end"] = fmt(effective_t_end(cfg));
  kv["sensor-epsilon"] = fmt(cfg.sensor_epsilon);
  kv["gamma"] = fmt(cfg.gamma);
  kv["guard"] = effective_guard(cfg) ? "on" : "off";
  kv["integrator"] = cfg.integrator == Integrator::SspRk3 ? "ssp-rk3" : "euler";
  kv["max-steps"] = std::to_string(cfg.max_steps);
  if (cfg.s0) kv["s0"] = fmt(*cfg.s0);
  if (!cfg.output.dir.empty()) kv["out"] = cfg.output.dir;
  kv["snapshots"] = std::to_string(cfg.output.snapshots);
  if (cfg.id == CaseId::Vortex) {
    kv["vortex-strength"] = fmt(cfg.vortex.strength);
    kv["vortex-radius"] = fmt(cfg.vortex.radius);
    kv["vortex-vx"] = fmt(cfg.vortex.vx);
    kv["vortex-vy"] = fmt(cfg.vortex.vy);
    kv["vortex-mach"] = fmt(cfg.vortex.mach);
  }
  if (cfg.id == CaseId::Rmi) {
    kv["rmi-amplitude"] = fmt(cfg.rmi.amplitude);
    kv["rmi-wavenumber"] = fmt(cfg.rmi.wavenumber);
  }
  if (cfg.id == CaseId::Custom) {
    std::string breaks, states;
    for (double b : cfg.custom.breaks) breaks += (breaks.empty() ? "" : ",") + fmt(b);
    for (const auto& q : cfg.custom.states) {
      states += (states.empty() ? "" : ";") + fmt(q.rho) + ":" + fmt(q.vel[0]) + ":" + fmt(q.p);
    }
    kv["custom-domain"] = fmt(cfg.custom.x_min) + "," + fmt(cfg.custom.x_max);
    kv["custom-breaks"] = breaks;
    kv["custom-states"] = states;
    kv["custom-periodic"] = cfg.custom.periodic ? "on" : "off";
  }
  return kv;
}

void apply_settings(CaseConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "case") cfg.id = parse_case(value);
    else if (key == "order") cfg.order = static_cast<int>(to_long(key, value));
    else if (key == "dof") cfg.dof = static_cast<int>(to_long(key, value));
    else if (key == "h") cfg.h = to_double(key, value);
    else if (key == "scheme") cfg.scheme = parse_scheme(value);
    else if (key == "force-scheme") cfg.force_scheme = parse_force_scheme(value);
    else if (key == "cfl") cfg.cfl = to_double(key, value);
    else if (key == "t-end") cfg.t_end = to_double(key, value);
    else if (key == "sensor-epsilon") cfg.sensor_epsilon = to_double(key, value);
    else if (key == "gamma") cfg.gamma = to_double(key, value);
    else if (key == "guard") cfg.guard = to_bool(key, value);
    else if (key == "integrator") {
      if (value == "ssp-rk3") cfg.integrator = Integrator::SspRk3;
      else if (value == "euler") cfg.integrator = Integrator::ForwardEuler;
      else throw std::invalid_argument("unknown integrator '" + value + "'");
    } else if (key == "max-steps") cfg.max_steps = to_long(key, value);
    else if (key == "s0") cfg.s0 = to_double(key, value);
    else if (key == "out") cfg.output.dir = value;
    else if (key == "snapshots") cfg.output.snapshots = static_cast<int>(to_long(key, value));
    else if (key == "formats") {
      cfg.output.csv = cfg.output.vtk = false;
      for (const auto& f : split(value, ',')) {
        if (f == "csv") cfg.output.csv = true;
        else if (f == "vtk") cfg.output.vtk = true;
        else throw std::invalid_argument("unknown output format '" + f + "'");
      }
    } else if (key == "vortex-strength") cfg.vortex.strength = to_double(key, value);
    else if (key == "vortex-radius") cfg.vortex.radius = to_double(key, value);
    else if (key == "vortex-vx") cfg.vortex.vx = to_double(key, value);
    else if (key == "vortex-vy") cfg.vortex.vy = to_double(key, value);
    else if (key == "vortex-mach") cfg.vortex.mach = to_double(key, value);
    else if (key == "rmi-amplitude") cfg.rmi.amplitude = to_double(key, value);
    else if (key == "rmi-wavenumber") cfg.rmi.wavenumber = to_double(key, value);
    else if (key == "custom-domain") {
      const auto parts = split(value, ',');
      if (parts.size() != 2) throw std::invalid_argument("custom-domain expects 'a,b'");
      cfg.custom.x_min = to_double(key, parts[0]);
      cfg.custom.x_max = to_double(key, parts[1]);
    } else if (key == "custom-breaks") {
      cfg.custom.breaks.clear();
      for (const auto& b : split(value, ',')) cfg.custom.breaks.push_back(to_double(key, b));
    } else if (key == "custom-states") {
      cfg.custom.states.clear();
      for (const auto& s : split(value, ';')) {
        const auto parts = split(s, ':');
        if (parts.size() != 3) {
          throw std::invalid_argument("custom-states entries are 'rho:u:p'");
        }
        cfg.custom.states.push_back(
            {to_double(key, parts[0]), {to_double(key, parts[1])}, to_double(key, parts[2])});
      }
    } else if (key == "custom-periodic") cfg.custom.periodic = to_bool(key, value);
    else throw std::invalid_argument("unknown setting '" + key + "'");
  }
}

std::map<std::string, std::string> parse_key_value(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

}  // namespace rdfr
