#pragma once

// Run driver, error norms, convergence studies and file output.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rdfr/cases.hpp"
#include "rdfr/discretization.hpp"

namespace rdfr {

struct ErrorReport {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

struct StepRecord {
  double t = 0.0;    // time at the end of the step
  double dt = 0.0;
  int halvings = 0;
  double rd_fraction = 0.0;
};

template <int Dim>
struct RunResult {
  Discretization<Dim> disc;
  SolutionField<Dim> field;
  double t = 0.0;
  long steps = 0;
  std::vector<StepRecord> history;
  double s0 = 0.0;
  long entropy_violations = 0;  // node visits with s < s0 over accepted steps
  long inadmissible_nodes = 0;  // should stay zero
  std::map<std::string, std::string> metadata;
};

/// Called after every accepted step with the current state.
template <int Dim>
using StepObserver = std::function<void(const Discretization<Dim>&,
                                        const SolutionField<Dim>&, const StepRecord&)>;

template <int Dim>
RunResult<Dim> run_case(const CaseConfig& cfg, const StepObserver<Dim>& observer = {});

/// Density error norms against a pointwise reference density; integrals use
/// the solution-point quadrature, L-infinity is the max over solution points.
template <int Dim>
ErrorReport error_norms(const Discretization<Dim>& disc,
                        const SolutionField<Dim>& field,
                        const std::function<double(const Vector<Dim>&)>& reference);

/// Exact Riemann solution for a single discontinuity at x0.
std::function<double(const Vector<1>&)> riemann_density(const Primitive<1>& qL,
                                                        const Primitive<1>& qR,
                                                        double x0, double t,
                                                        const Gas& gas);

/// First-order Godunov solution of the Shu-Osher problem on `cells` cells,
/// returned as a piecewise-constant density lookup.
std::function<double(const Vector<1>&)> shu_osher_reference(const CaseConfig& cfg,
                                                            int cells = 20000);

/// Sampled primitive reference at time t: exact Riemann solution for Sod and
/// single-break custom data, a 2e4-cell Godunov solution for Shu-Osher.
/// Throws std::invalid_argument for other cases.
std::vector<Primitive<1>> reference_profile(const CaseConfig& cfg, double t,
                                            const std::vector<double>& points);

/// Reference density for 1D cases; throws std::invalid_argument if the case
/// has none.
std::function<double(const Vector<1>&)> reference_density_1d(const CaseConfig& cfg);

/// sqrt of the quadrature integral of (rho - rho_exact)^2 for the vortex.
double vortex_error(const CaseConfig& cfg, const Discretization<2>& disc,
                    const SolutionField<2>& field, double t);

/// Least-squares slope of log(error) against log(h) for mesh sizes h.
double convergence_rate(const std::vector<double>& resolution,
                        const std::vector<double>& error);

struct SweepPoint {
  int order = 0;
  int dof = 0;
  double hbar = 0.0;  // 1/sqrt(N_DOF) in 2D, 1/DoF in 1D
  ErrorReport error;
};

struct SweepTable {
  std::vector<SweepPoint> points;
  // per order: RoC of l1, l2, linf
  std::map<int, ErrorReport> rates;
};

/// Runs the template config at every (order, dof) pair. 1D cases report
/// L1/L2/Linf density errors; the vortex reports its L2 error in every
/// slot. Needs at least three resolutions.
SweepTable convergence_study(const CaseConfig& base, const std::vector<int>& orders,
                             const std::vector<int>& dofs,
                             const std::function<void(const SweepPoint&)>& progress = {});

std::string format_sweep(const SweepTable& table, const std::string& style);

/// Runs a case, writes the configured outputs and returns the metadata.
std::map<std::string, std::string> run_and_write(const CaseConfig& cfg);

void write_line_csv(const std::string& path, const Discretization<1>& disc,
                    const SolutionField<1>& field);
void write_points_csv(const std::string& path, const Discretization<2>& disc,
                      const SolutionField<2>& field);
/// Legacy ASCII structured grid over the mesh lattice; cut-out elements are
/// filled with NaN.
void write_structured_vtk(const std::string& path, const Discretization<2>& disc,
                          const SolutionField<2>& field);
void write_metadata(const std::string& path,
                    const std::map<std::string, std::string>& metadata);

}  // namespace rdfr
