#pragma once

// Exact solution of the 1D Euler Riemann problem for an ideal gas.

#include <stdexcept>

#include "rdfr/euler.hpp"

namespace rdfr {

struct StarState {
  double p_star = 0.0;
  double u_star = 0.0;
  double rho_star_l = 0.0;
  double rho_star_r = 0.0;
};

class VacuumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// f_L(p) + f_R(p) + (u_R - u_L); its root is the star pressure.
double pressure_function(double p, const Primitive<1>& qL, const Primitive<1>& qR,
                         const Gas& gas);

/// Bracketed Newton iteration with bisection fallback, started from the
/// two-rarefaction estimate; converges |f(p*)| to 1e-12 relative.
StarState solve_star(const Primitive<1>& qL, const Primitive<1>& qR,
                     const Gas& gas);

/// Self-similar solution at xi = x / t.
Primitive<1> sample(const Primitive<1>& qL, const Primitive<1>& qR,
                    const StarState& star, double xi, const Gas& gas);

/// Flux of the exact solution at xi = 0 (Godunov flux).
State<1> godunov_flux(const Primitive<1>& qL, const Primitive<1>& qR,
                      const Gas& gas);

}  // namespace rdfr
