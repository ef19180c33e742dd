#pragma once

// Riemann Difference operator: Lax-Friedrichs auxiliary fluxes at the
// staggered flux points of a line of solution points, differentiated back to
// the solution points with the flux-point Lagrange basis.

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "rdfr/euler.hpp"
#include "rdfr/operators.hpp"

namespace rdfr {

class DegenerateCoefficientError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One line of solution points plus the neighbouring states on either side
/// (nearest solution point of the adjacent element or a boundary ghost).
template <int Dim>
struct RdElementView {
  std::span<const State<Dim>> interior;
  State<Dim> left_ghost;
  State<Dim> right_ghost;
  double jacobian = 1.0;  // dx/dxi along the line
  Vector<Dim> normal = unit_vector<Dim>(0);
};

template <int Dim>
struct AuxPair {
  State<Dim> f_bar;
  State<Dim> u_bar;
  double d = 0.0;
  double c = 0.0;
};

/// d = lambda_max(u_j, u_j1) |c|
template <int Dim>
double d_coefficient(const State<Dim>& uj, const State<Dim>& uj1, double c,
                     const Vector<Dim>& n, const Gas& gas) {
  if (c == 0.0) return 0.0;
  return davis_max_wavespeed(uj, uj1, n, gas) * std::abs(c);
}

/// f_bar = (f_j + f_j1)/2 - d/(2c) (u_j1 - u_j)
template <int Dim>
State<Dim> aux_flux(const State<Dim>& uj, const State<Dim>& uj1,
                    const State<Dim>& fj, const State<Dim>& fj1, double c,
                    double d) {
  if (c == 0.0) throw DegenerateCoefficientError("aux_flux: c = 0");
  return 0.5 * (fj + fj1) - (d / (2.0 * c)) * (uj1 - uj);
}

/// u_bar = (u_j + u_j1)/2 - c/(2d) (f_j1 - f_j)
template <int Dim>
State<Dim> aux_state(const State<Dim>& uj, const State<Dim>& uj1,
                     const State<Dim>& fj, const State<Dim>& fj1, double c,
                     double d) {
  if (d == 0.0) throw DegenerateCoefficientError("aux_state: d = 0");
  return 0.5 * (uj + uj1) - (c / (2.0 * d)) * (fj1 - fj);
}

/// Lax-Friedrichs flux with the Davis wavespeed. This is the auxiliary flux
/// of every (solution point, flux point) pair once the dissipation carries
/// the orientation of c, and it is also the Rusanov interface flux.
template <int Dim>
State<Dim> lax_friedrichs_flux(const Primitive<Dim>& ql, const State<Dim>& ul,
                               const Primitive<Dim>& qr, const State<Dim>& ur,
                               const Vector<Dim>& n, const Gas& gas) {
  const double lambda = davis_max_wavespeed(ql, qr, n, gas);
  State<Dim> f = euler_flux(ql, ul, n) + euler_flux(qr, ur, n);
  f *= 0.5;
  f -= (0.5 * lambda) * (ur - ul);
  return f;
}

template <int Dim>
State<Dim> lax_friedrichs_flux(const State<Dim>& ul, const State<Dim>& ur,
                               const Vector<Dim>& n, const Gas& gas) {
  return lax_friedrichs_flux(cons_to_prim(ul, gas), ul, cons_to_prim(ur, gas),
                             ur, n, gas);
}

inline constexpr int kMaxPoints = kMaxOrder + 3;

/// Adds -(1/J) sum_j c_ij f_bar_j to `dudt` (p+1 entries). Admissibility
/// errors carry the offending node index relative to the line (-1 / p+1 for
/// the left / right ghost).
template <int Dim>
void rd_residual_accumulate(const RdElementView<Dim>& view,
                            const ElementOperators& ops, const Gas& gas,
                            std::span<State<Dim>> dudt) {
  const int ns = ops.num_sol();
  const int nf = ops.num_flux();
  if (static_cast<int>(view.interior.size()) != ns ||
      static_cast<int>(dudt.size()) != ns) {
    throw std::invalid_argument("rd_residual: line size does not match order");
  }
  std::array<State<Dim>, kMaxPoints> u;
  std::array<Primitive<Dim>, kMaxPoints> q;
  u[0] = view.left_ghost;
  for (int i = 0; i < ns; ++i) u[i + 1] = view.interior[i];
  u[ns + 1] = view.right_ghost;
  for (int j = 0; j < ns + 2; ++j) {
    try {
      q[j] = cons_to_prim(u[j], gas);
    } catch (const AdmissibilityError& e) {
      throw e.located(-1, j - 1);
    }
  }
  std::array<State<Dim>, kMaxPoints> fbar;
  for (int j = 0; j < nf; ++j) {
    fbar[j] = lax_friedrichs_flux(q[j], u[j], q[j + 1], u[j + 1], view.normal,
                                  gas);
  }
  const double scale = -1.0 / view.jacobian;
  for (int i = 0; i < ns; ++i) {
    State<Dim> acc{};
    for (int j = 0; j < nf; ++j) acc += ops.c(i, j) * fbar[j];
    dudt[i] += scale * acc;
  }
}

template <int Dim>
std::vector<State<Dim>> rd_residual(const RdElementView<Dim>& view,
                                    const ElementOperators& ops,
                                    const Gas& gas) {
  std::vector<State<Dim>> dudt(ops.num_sol());
  rd_residual_accumulate(view, ops, gas, std::span<State<Dim>>(dudt));
  return dudt;
}

/// Flux values f_bar at the element's two boundary flux points, i.e. the
/// values an adjacent element must share for conservation.
template <int Dim>
std::array<State<Dim>, 2> rd_boundary_fluxes(const RdElementView<Dim>& view,
                                             const Gas& gas) {
  return {lax_friedrichs_flux(view.left_ghost, view.interior.front(),
                              view.normal, gas),
          lax_friedrichs_flux(view.interior.back(), view.right_ghost,
                              view.normal, gas)};
}

}  // namespace rdfr
