#include "rdfr/exact_riemann.hpp"

#include <algorithm>
#include <cmath>

namespace rdfr {

namespace {

struct WaveFunction {
  double f;
  double df;
};

// Contribution of one side: shock branch for p > pk, rarefaction otherwise.
WaveFunction side_function(double p, const Primitive<1>& q, const Gas& gas) {
  const double g = gas.gamma;
  const double c = std::sqrt(g * q.p / q.rho);
  if (p > q.p) {
    const double a = 2.0 / ((g + 1.0) * q.rho);
    const double b = (g - 1.0) / (g + 1.0) * q.p;
    const double s = std::sqrt(a / (p + b));
    return {(p - q.p) * s, s * (1.0 - 0.5 * (p - q.p) / (p + b))};
  }
  const double ratio = p / q.p;
  const double expo = (g - 1.0) / (2.0 * g);
  return {2.0 * c / (g - 1.0) * (std::pow(ratio, expo) - 1.0),
          1.0 / (q.rho * c) * std::pow(ratio, -(g + 1.0) / (2.0 * g))};
}

void check_input(const Primitive<1>& q) {
  if (!(q.rho > 0.0 && q.p > 0.0)) {
    throw AdmissibilityError("riemann input", {q.rho, q.vel[0], q.p});
  }
}

}  // namespace

double pressure_function(double p, const Primitive<1>& qL, const Primitive<1>& qR,
                         const Gas& gas) {
  return side_function(p, qL, gas).f + side_function(p, qR, gas).f +
         (qR.vel[0] - qL.vel[0]);
}

StarState solve_star(const Primitive<1>& qL, const Primitive<1>& qR,
                     const Gas& gas) {
  check_input(qL);
  check_input(qR);
  const double g = gas.gamma;
  const double cl = std::sqrt(g * qL.p / qL.rho);
  const double cr = std::sqrt(g * qR.p / qR.rho);
  const double du = qR.vel[0] - qL.vel[0];
  if (2.0 / (g - 1.0) * (cl + cr) <= du) {
    throw VacuumError("riemann problem generates vacuum");
  }

  // f is increasing and concave in p; f(0+) < 0 when no vacuum forms.
  double lo = 0.0;
  double hi = std::max(qL.p, qR.p);
  while (pressure_function(hi, qL, qR, gas) < 0.0) hi *= 2.0;

  const double expo = (g - 1.0) / (2.0 * g);
  double p = std::pow((cl + cr - 0.5 * (g - 1.0) * du) /
                          (cl / std::pow(qL.p, expo) + cr / std::pow(qR.p, expo)),
                      1.0 / expo);
  if (!(p > lo && p < hi)) p = 0.5 * (lo + hi);

  const double scale = std::max({std::abs(du), cl, cr});
  for (int it = 0; it < 200; ++it) {
    const auto wl = side_function(p, qL, gas);
    const auto wr = side_function(p, qR, gas);
    const double f = wl.f + wr.f + du;
    if (std::abs(f) <= 1e-14 * scale) break;
    if (f < 0.0) lo = p;
    else hi = p;
    double next = p - f / (wl.df + wr.df);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - p) <= 1e-16 * p) {
      p = next;
      break;
    }
    p = next;
  }

  StarState s;
  s.p_star = p;
  s.u_star = 0.5 * (qL.vel[0] + qR.vel[0]) +
             0.5 * (side_function(p, qR, gas).f - side_function(p, qL, gas).f);
  const double gm = (g - 1.0) / (g + 1.0);
  auto star_density = [&](const Primitive<1>& q) {
    const double r = p / q.p;
    if (p > q.p) return q.rho * (r + gm) / (gm * r + 1.0);
    return q.rho * std::pow(r, 1.0 / g);
  };
  s.rho_star_l = star_density(qL);
  s.rho_star_r = star_density(qR);
  return s;
}

Primitive<1> sample(const Primitive<1>& qL, const Primitive<1>& qR,
                    const StarState& star, double xi, const Gas& gas) {
  const double g = gas.gamma;
  const double ps = star.p_star;
  const double us = star.u_star;
  if (xi <= us) {
    const double cl = std::sqrt(g * qL.p / qL.rho);
    const double ul = qL.vel[0];
    if (ps > qL.p) {
      const double sl =
          ul - cl * std::sqrt((g + 1.0) / (2.0 * g) * ps / qL.p + (g - 1.0) / (2.0 * g));
      if (xi <= sl) return qL;
      return {star.rho_star_l, {us}, ps};
    }
    const double head = ul - cl;
    const double cs = cl * std::pow(ps / qL.p, (g - 1.0) / (2.0 * g));
    const double tail = us - cs;
    if (xi <= head) return qL;
    if (xi >= tail) return {star.rho_star_l, {us}, ps};
    const double c = 2.0 / (g + 1.0) * (cl + 0.5 * (g - 1.0) * (ul - xi));
    const double rho = qL.rho * std::pow(c / cl, 2.0 / (g - 1.0));
    return {rho, {2.0 / (g + 1.0) * (cl + 0.5 * (g - 1.0) * ul + xi)},
            qL.p * std::pow(c / cl, 2.0 * g / (g - 1.0))};
  }
  const double cr = std::sqrt(g * qR.p / qR.rho);
  const double ur = qR.vel[0];
  if (ps > qR.p) {
    const double sr =
        ur + cr * std::sqrt((g + 1.0) / (2.0 * g) * ps / qR.p + (g - 1.0) / (2.0 * g));
    if (xi >= sr) return qR;
    return {star.rho_star_r, {us}, ps};
  }
  const double head = ur + cr;
  const double cs = cr * std::pow(ps / qR.p, (g - 1.0) / (2.0 * g));
  const double tail = us + cs;
  if (xi >= head) return qR;
  if (xi <= tail) return {star.rho_star_r, {us}, ps};
  const double c = 2.0 / (g + 1.0) * (cr - 0.5 * (g - 1.0) * (ur - xi));
  const double rho = qR.rho * std::pow(c / cr, 2.0 / (g - 1.0));
  return {rho, {2.0 / (g + 1.0) * (-cr + 0.5 * (g - 1.0) * ur + xi)},
          qR.p * std::pow(c / cr, 2.0 * g / (g - 1.0))};
}

State<1> godunov_flux(const Primitive<1>& qL, const Primitive<1>& qR,
                      const Gas& gas) {
  const StarState star = solve_star(qL, qR, gas);
  const Primitive<1> q = sample(qL, qR, star, 0.0, gas);
  return euler_flux(q, prim_to_cons(q, gas), Vector<1>{1.0});
}

}  // namespace rdfr
