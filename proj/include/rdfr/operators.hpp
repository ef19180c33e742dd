#pragma once

// Per-order polynomial machinery on the reference element [-1, 1]: Gauss
// solution points, staggered flux points, Lagrange differentiation
// coefficients, FR correction derivatives and the Legendre modal transform.

#include <span>
#include <vector>

namespace rdfr {

inline constexpr int kMaxOrder = 12;

/// Correction-function family for FR. Only the DG-equivalent Radau choice is
/// implemented.
enum class CorrectionFamily { RadauDG };

struct ElementOperators {
  int order = 0;
  CorrectionFamily correction = CorrectionFamily::RadauDG;

  std::vector<double> sol_nodes;     // p+1 Gauss-Legendre points
  std::vector<double> flux_nodes;    // p+2: -1, midpoints, +1
  std::vector<double> mass_weights;  // Gauss weights, sum to 2

  // (p+1) x (p+2), row-major: derivative of flux-point basis j at sol node i.
  std::vector<double> c_matrix;
  // (p+1) x (p+1), row-major: derivative of sol-point basis k at sol node i.
  std::vector<double> dmatrix_fr;

  std::vector<double> corr_deriv_l;  // dh_l/dx at sol nodes
  std::vector<double> corr_deriv_r;  // dh_r/dx at sol nodes
  std::vector<double> interp_l;      // sol-point basis at x = -1
  std::vector<double> interp_r;      // sol-point basis at x = +1

  // nodal = vandermonde * modal, V(i, n) = L_n(x_i); both row-major.
  std::vector<double> legendre_vandermonde;
  std::vector<double> inverse_vandermonde;

  int num_sol() const { return order + 1; }
  int num_flux() const { return order + 2; }
  double c(int i, int j) const { return c_matrix[i * num_flux() + j]; }
  double d(int i, int k) const { return dmatrix_fr[i * num_sol() + k]; }
};

double legendre(int n, double x);
double legendre_derivative(int n, double x);

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Quadrature gauss_legendre(int npoints);

std::vector<double> lagrange_values(std::span<const double> nodes, double x);
std::vector<double> lagrange_derivatives(std::span<const double> nodes,
                                         double x);

/// Throws std::invalid_argument for p outside [0, kMaxOrder].
ElementOperators build_operators(int p,
                                 CorrectionFamily family = CorrectionFamily::RadauDG);

/// Immutable cached operators, built once per order.
const ElementOperators& operators_for(int p);

/// Differentiates a flux polynomial given at the flux points. `flux_values`
/// holds (p+2) rows of `ncomp` components; returns (p+1) rows.
std::vector<double> rd_derivative(const ElementOperators& ops,
                                  std::span<const double> flux_values,
                                  int ncomp = 1);

/// max |M D + D^T M - P^T B P|
double sbp_residual(const ElementOperators& ops);

/// Nodal -> modal (inverse = false) or modal -> nodal (inverse = true).
/// Accepts (p+1) values for a line or (p+1)^2 values (x fastest) for a quad.
std::vector<double> modal_transform(const ElementOperators& ops,
                                    std::span<const double> values,
                                    bool inverse = false);

}  // namespace rdfr
