#pragma once

// Flux Reconstruction along one line of solution points: collocated flux
// derivative plus Radau corrections toward common interface fluxes.

#include <array>
#include <span>
#include <stdexcept>
#include <vector>

#include "rdfr/euler.hpp"
#include "rdfr/operators.hpp"
#include "rdfr/rd_core.hpp"

namespace rdfr {

enum class Side { Left, Right };

template <int Dim>
struct FrElementView {
  std::span<const State<Dim>> interior;
  State<Dim> left_trace_ext;   // exterior state at xi = -1
  State<Dim> right_trace_ext;  // exterior state at xi = +1
  double jacobian = 1.0;
  Vector<Dim> normal = unit_vector<Dim>(0);
};

/// 1/2 (F(uL) + F(uR)).n - 1/2 lambda_max (uR - uL), Davis wavespeed.
template <int Dim>
State<Dim> rusanov_flux(const State<Dim>& uL, const State<Dim>& uR,
                        const Vector<Dim>& n, const Gas& gas) {
  return lax_friedrichs_flux(uL, uR, n, gas);
}

template <int Dim>
State<Dim> interpolate_trace(std::span<const State<Dim>> states,
                             const ElementOperators& ops, Side side) {
  const auto& w = side == Side::Left ? ops.interp_l : ops.interp_r;
  State<Dim> out{};
  for (int i = 0; i < ops.num_sol(); ++i) out += w[i] * states[i];
  return out;
}

/// Adds the FR residual given the two common interface fluxes (oriented
/// along `normal`) to `dudt`.
template <int Dim>
void fr_residual_accumulate(std::span<const State<Dim>> interior,
                            const State<Dim>& common_left,
                            const State<Dim>& common_right, double jacobian,
                            const Vector<Dim>& normal,
                            const ElementOperators& ops, const Gas& gas,
                            std::span<State<Dim>> dudt) {
  const int ns = ops.num_sol();
  if (static_cast<int>(interior.size()) != ns ||
      static_cast<int>(dudt.size()) != ns) {
    throw std::invalid_argument("fr_residual: line size does not match order");
  }
  std::array<State<Dim>, kMaxPoints> f;
  for (int i = 0; i < ns; ++i) {
    try {
      f[i] = euler_flux(interior[i], normal, gas);
    } catch (const AdmissibilityError& e) {
      throw e.located(-1, i);
    }
  }
  State<Dim> fl{}, fr{};
  for (int i = 0; i < ns; ++i) {
    fl += ops.interp_l[i] * f[i];
    fr += ops.interp_r[i] * f[i];
  }
  const State<Dim> jump_l = common_left - fl;
  const State<Dim> jump_r = common_right - fr;
  const double scale = -1.0 / jacobian;
  for (int i = 0; i < ns; ++i) {
    State<Dim> acc = ops.corr_deriv_l[i] * jump_l;
    acc += ops.corr_deriv_r[i] * jump_r;
    for (int k = 0; k < ns; ++k) acc += ops.d(i, k) * f[k];
    dudt[i] += scale * acc;
  }
}

template <int Dim>
std::vector<State<Dim>> fr_residual(const FrElementView<Dim>& view,
                                    const ElementOperators& ops,
                                    const Gas& gas) {
  const State<Dim> ul = interpolate_trace(view.interior, ops, Side::Left);
  const State<Dim> ur = interpolate_trace(view.interior, ops, Side::Right);
  const State<Dim> common_l = rusanov_flux(view.left_trace_ext, ul, view.normal, gas);
  const State<Dim> common_r = rusanov_flux(ur, view.right_trace_ext, view.normal, gas);
  std::vector<State<Dim>> dudt(ops.num_sol());
  fr_residual_accumulate(view.interior, common_l, common_r, view.jacobian,
                         view.normal, ops, gas, std::span<State<Dim>>(dudt));
  return dudt;
}

}  // namespace rdfr
