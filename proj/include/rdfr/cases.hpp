#pragma once

// Benchmark case definitions: parameters, meshes and initial conditions.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rdfr/discretization.hpp"
#include "rdfr/euler.hpp"
#include "rdfr/mesh.hpp"
#include "rdfr/sensor.hpp"

namespace rdfr {

enum class CaseId { Sod, ShuOsher, Vortex, Ffs, Rmi, Custom };

/// rd / fr / rd-fr (sensor blend) / fv-p0 (first-order finite volume, the
/// p = 0 RD limit).
enum class SchemeChoice { RD, FR, RdFr, FvP0 };

enum class Integrator { SspRk3, ForwardEuler };

struct VortexParams {
  double strength = 13.5;
  double radius = 1.5;
  double vx = 0.0;
  double vy = 1.0;
  double mach = 0.4;
  Vector<2> center{0.0, 0.0};
};

struct RmiParams {
  double amplitude = 0.25;
  double wavenumber = 4.0;
};

/// Piecewise-constant 1D primitive data: states[k] holds on
/// [breaks[k-1], breaks[k]).
struct CustomSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  std::vector<double> breaks;
  std::vector<Primitive<1>> states;
  bool periodic = false;
};

struct OutputPlan {
  std::string dir;  // empty: no files
  bool csv = true;
  bool vtk = true;
  int snapshots = 0;  // intermediate outputs evenly spaced in time
};

struct CaseConfig {
  CaseId id = CaseId::Sod;
  int order = 3;
  int dof = 512;     // 1D: total DoF; vortex: DoF per direction
  double h = 0.0;    // ffs / rmi element size (0: paper value)
  SchemeChoice scheme = SchemeChoice::RD;
  std::optional<SchemeMode> force_scheme;
  double cfl = 0.1;
  std::optional<double> t_end;
  double sensor_epsilon = 0.01;
  double gamma = 1.4;
  std::optional<bool> guard;
  Integrator integrator = Integrator::SspRk3;
  long max_steps = 0;  // 0: unlimited
  std::optional<double> s0;
  Execution exec = Execution::Parallel;
  VortexParams vortex;
  RmiParams rmi;
  CustomSpec custom;
  OutputPlan output;
};

int dimension(CaseId id);
std::string to_string(CaseId id);
std::string to_string(SchemeChoice s);
CaseId parse_case(const std::string& s);
SchemeChoice parse_scheme(const std::string& s);
SchemeMode parse_force_scheme(const std::string& s);

double effective_t_end(const CaseConfig& cfg);
bool effective_guard(const CaseConfig& cfg);
int effective_order(const CaseConfig& cfg);
SchemeMode effective_mode(const CaseConfig& cfg);
double effective_h(const CaseConfig& cfg);

/// Throws std::invalid_argument describing the first invalid parameter.
void validate(const CaseConfig& cfg);

/// Pointwise primitive initial condition.
Primitive<1> initial_state_1d(const CaseConfig& cfg, double x);
Primitive<2> initial_state_2d(const CaseConfig& cfg, const Vector<2>& x);

/// Isentropic vortex advected by (vx, vy) for time t on the periodic
/// [-10, 10]^2 domain.
Primitive<2> vortex_solution(const VortexParams& v, const Gas& gas,
                             const Vector<2>& x, double t);

template <int Dim>
struct CaseSetup {
  Discretization<Dim> disc;
  SolutionField<Dim> field;
};

template <int Dim>
Mesh<Dim> build_case_mesh(const CaseConfig& cfg);

template <int Dim>
CaseSetup<Dim> init_case(const CaseConfig& cfg);

/// Flat key/value view of a configuration (same keys as the CLI flags).
std::map<std::string, std::string> to_settings(const CaseConfig& cfg);
/// Applies key/value settings; unknown keys throw std::invalid_argument.
void apply_settings(CaseConfig& cfg, const std::map<std::string, std::string>& kv);
/// Parses "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> parse_key_value(const std::string& text);

}  // namespace rdfr
