#include "rdfr/operators.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rdfr {

double legendre(int n, double x) {
  if (n == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double legendre_derivative(int n, double x) {
  // L'_{k+1} = L'_{k-1} + (2k + 1) L_k
  if (n == 0) return 0.0;
  double dm1 = 0.0, d = 1.0;  // L'_0, L'_1
  for (int k = 1; k < n; ++k) {
    const double next = dm1 + (2.0 * k + 1.0) * legendre(k, x);
    dm1 = d;
    d = next;
  }
  return d;
}

Quadrature gauss_legendre(int npoints) {
  if (npoints < 1) throw std::invalid_argument("gauss_legendre: npoints < 1");
  Quadrature q;
  q.nodes.resize(npoints);
  q.weights.resize(npoints);
  for (int i = 0; i < npoints; ++i) {
    double x = -std::cos(std::numbers::pi * (i + 0.75) / (npoints + 0.5));
    for (int it = 0; it < 100; ++it) {
      const double dx = legendre(npoints, x) / legendre_derivative(npoints, x);
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre_derivative(npoints, x);
    q.nodes[i] = x;
    q.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  // exact symmetry
  for (int i = 0; i < npoints / 2; ++i) {
    const int j = npoints - 1 - i;
    const double x = 0.5 * (q.nodes[j] - q.nodes[i]);
    const double w = 0.5 * (q.weights[i] + q.weights[j]);
    q.nodes[i] = -x;
    q.nodes[j] = x;
    q.weights[i] = q.weights[j] = w;
  }
  if (npoints % 2 == 1) q.nodes[npoints / 2] = 0.0;
  return q;
}

std::vector<double> lagrange_values(std::span<const double> nodes, double x) {
  const std::size_t n = nodes.size();
  std::vector<double> l(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) l[j] *= (x - nodes[k]) / (nodes[j] - nodes[k]);
    }
  }
  return l;
}

std::vector<double> lagrange_derivatives(std::span<const double> nodes,
                                         double x) {
  const std::size_t n = nodes.size();
  std::vector<double> dl(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < n; ++m) {
      if (m == j) continue;
      double term = 1.0 / (nodes[j] - nodes[m]);
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j && k != m) term *= (x - nodes[k]) / (nodes[j] - nodes[k]);
      }
      dl[j] += term;
    }
  }
  return dl;
}

ElementOperators build_operators(int p, CorrectionFamily family) {
  if (p < 0 || p > kMaxOrder) {
    throw std::invalid_argument("polynomial order " + std::to_string(p) +
                                " outside supported range [0, " +
                                std::to_string(kMaxOrder) + "]");
  }
  ElementOperators ops;
  ops.order = p;
  ops.correction = family;
  const int ns = p + 1;
  const int nf = p + 2;

  auto quad = gauss_legendre(ns);
  ops.sol_nodes = quad.nodes;
  ops.mass_weights = quad.weights;

  ops.flux_nodes.resize(nf);
  ops.flux_nodes.front() = -1.0;
  ops.flux_nodes.back() = 1.0;
  for (int j = 1; j < nf - 1; ++j) {
    ops.flux_nodes[j] = 0.5 * (ops.sol_nodes[j - 1] + ops.sol_nodes[j]);
  }

  ops.c_matrix.resize(ns * nf);
  ops.dmatrix_fr.resize(ns * ns);
  ops.corr_deriv_l.resize(ns);
  ops.corr_deriv_r.resize(ns);
  const double sign = (p + 1) % 2 == 0 ? 1.0 : -1.0;  // (-1)^(p+1)
  for (int i = 0; i < ns; ++i) {
    const double x = ops.sol_nodes[i];
    const auto cf = lagrange_derivatives(ops.flux_nodes, x);
    const auto ds = lagrange_derivatives(ops.sol_nodes, x);
    for (int j = 0; j < nf; ++j) ops.c_matrix[i * nf + j] = cf[j];
    for (int k = 0; k < ns; ++k) ops.dmatrix_fr[i * ns + k] = ds[k];

    // Radau corrections: h_l = (-1)^(p+1)/2 (L_{p+1} - L_p),
    //                    h_r = 1/2 (L_{p+1} + L_p)
    const double dl1 = legendre_derivative(p + 1, x);
    const double dl0 = legendre_derivative(p, x);
    ops.corr_deriv_l[i] = 0.5 * sign * (dl1 - dl0);
    ops.corr_deriv_r[i] = 0.5 * (dl1 + dl0);
  }
  ops.interp_l = lagrange_values(ops.sol_nodes, -1.0);
  ops.interp_r = lagrange_values(ops.sol_nodes, 1.0);

  ops.legendre_vandermonde.resize(ns * ns);
  ops.inverse_vandermonde.resize(ns * ns);
  for (int i = 0; i < ns; ++i) {
    for (int n = 0; n < ns; ++n) {
      const double ln = legendre(n, ops.sol_nodes[i]);
      ops.legendre_vandermonde[i * ns + n] = ln;
      // Gauss quadrature integrates L_n L_m exactly for n, m <= p.
      ops.inverse_vandermonde[n * ns + i] =
          0.5 * (2.0 * n + 1.0) * ops.mass_weights[i] * ln;
    }
  }
  return ops;
}

const ElementOperators& operators_for(int p) {
  if (p < 0 || p > kMaxOrder) build_operators(p);  // throws
  static std::array<std::unique_ptr<const ElementOperators>, kMaxOrder + 1>
      cache;
  static std::array<std::once_flag, kMaxOrder + 1> flags;
  std::call_once(flags[p], [p] {
    cache[p] = std::make_unique<const ElementOperators>(build_operators(p));
  });
  return *cache[p];
}

std::vector<double> rd_derivative(const ElementOperators& ops,
                                  std::span<const double> flux_values,
                                  int ncomp) {
  const int ns = ops.num_sol();
  const int nf = ops.num_flux();
  if (ncomp < 1 || static_cast<int>(flux_values.size()) != nf * ncomp) {
    throw std::invalid_argument("rd_derivative: expected " +
                                std::to_string(nf * ncomp) +
                                " flux values, got " +
                                std::to_string(flux_values.size()));
  }
  std::vector<double> out(ns * ncomp, 0.0);
  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < nf; ++j) {
      const double cij = ops.c(i, j);
      for (int k = 0; k < ncomp; ++k) {
        out[i * ncomp + k] += cij * flux_values[j * ncomp + k];
      }
    }
  }
  return out;
}

double sbp_residual(const ElementOperators& ops) {
  const int n = ops.num_sol();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double md = ops.mass_weights[i] * ops.d(i, k);
      const double dtm = ops.d(k, i) * ops.mass_weights[k];
      const double ptbp =
          ops.interp_r[i] * ops.interp_r[k] - ops.interp_l[i] * ops.interp_l[k];
      worst = std::max(worst, std::abs(md + dtm - ptbp));
    }
  }
  return worst;
}

namespace {

void apply_along_x(const std::vector<double>& mat, int n, int rows,
                   std::span<const double> in, std::vector<double>& out) {
  for (int r = 0; r < rows; ++r) {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += mat[i * n + k] * in[r * n + k];
      out[r * n + i] = s;
    }
  }
}

void apply_along_y(const std::vector<double>& mat, int n,
                   std::span<const double> in, std::vector<double>& out) {
  for (int c = 0; c < n; ++c) {
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += mat[j * n + k] * in[k * n + c];
      out[j * n + c] = s;
    }
  }
}

}  // namespace

std::vector<double> modal_transform(const ElementOperators& ops,
                                    std::span<const double> values,
                                    bool inverse) {
  const int n = ops.num_sol();
  const auto& mat =
      inverse ? ops.legendre_vandermonde : ops.inverse_vandermonde;
  const auto size = static_cast<int>(values.size());
  if (size == n) {
    std::vector<double> out(n);
    apply_along_x(mat, n, 1, values, out);
    return out;
  }
  if (size == n * n) {
    std::vector<double> tmp(n * n), out(n * n);
    apply_along_x(mat, n, n, values, tmp);
    apply_along_y(mat, n, tmp, out);
    return out;
  }
  throw std::invalid_argument("modal_transform: expected " + std::to_string(n) +
                              " or " + std::to_string(n * n) + " values");
}

}  // namespace rdfr
