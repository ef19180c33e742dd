#pragma once

// Independent reference implementations used only by the tests. Nothing here
// calls into the library, so agreement is evidence rather than tautology.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double kGamma = 1.4;

using U3 = std::array<double, 3>;

struct Prim3 {
  double rho, u, p;
};

inline U3 cons(const Prim3& q) {
  return {q.rho, q.rho * q.u, q.p / (kGamma - 1.0) + 0.5 * q.rho * q.u * q.u};
}

inline Prim3 prim(const U3& u) {
  const double v = u[1] / u[0];
  return {u[0], v, (kGamma - 1.0) * (u[2] - 0.5 * u[0] * v * v)};
}

inline U3 flux(const U3& u) {
  const Prim3 q = prim(u);
  return {u[1], u[1] * q.u + q.p, (u[2] + q.p) * q.u};
}

inline double speed(const U3& u) {
  const Prim3 q = prim(u);
  return std::abs(q.u) + std::sqrt(kGamma * q.p / q.rho);
}

inline U3 lf_flux(const U3& a, const U3& b) {
  const double lam = std::max(speed(a), speed(b));
  const U3 fa = flux(a), fb = flux(b);
  U3 f;
  for (int m = 0; m < 3; ++m) f[m] = 0.5 * (fa[m] + fb[m]) - 0.5 * lam * (b[m] - a[m]);
  return f;
}

/// One forward Euler step of the first-order Lax-Friedrichs finite-volume
/// scheme on a uniform periodic or copy-extrapolated 1D grid.
inline void lf_fv_step(std::vector<U3>& u, double dx, double dt, bool periodic) {
  const int n = static_cast<int>(u.size());
  std::vector<U3> f(n + 1);
  for (int k = 0; k <= n; ++k) {
    const U3& l = k == 0 ? (periodic ? u[n - 1] : u[0]) : u[k - 1];
    const U3& r = k == n ? (periodic ? u[0] : u[n - 1]) : u[k];
    f[k] = lf_flux(l, r);
  }
  for (int i = 0; i < n; ++i) {
    for (int m = 0; m < 3; ++m) u[i][m] -= dt / dx * (f[i + 1][m] - f[i][m]);
  }
}

// Toro's pressure function pieces, written out independently.
inline double side(double p, const Prim3& q) {
  const double g = kGamma;
  if (p > q.p) {
    const double A = 2.0 / ((g + 1.0) * q.rho);
    const double B = (g - 1.0) / (g + 1.0) * q.p;
    return (p - q.p) * std::sqrt(A / (p + B));
  }
  const double c = std::sqrt(g * q.p / q.rho);
  return 2.0 * c / (g - 1.0) * (std::pow(p / q.p, (g - 1.0) / (2.0 * g)) - 1.0);
}

struct Star {
  double p, u;
};

/// Plain bisection to machine precision on [1e-14, big].
inline Star bisection_star(const Prim3& l, const Prim3& r) {
  auto f = [&](double p) { return side(p, l) + side(p, r) + r.u - l.u; };
  double lo = 1e-14, hi = 1.0;
  while (f(hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 400 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  const double p = 0.5 * (lo + hi);
  return {p, 0.5 * (l.u + r.u) + 0.5 * (side(p, r) - side(p, l))};
}

/// Positions xi = x/t where the exact solution may jump (shocks, contact) or
/// kink (rarefaction edges).
inline std::vector<double> wave_breaks(const Prim3& l, const Prim3& r, const Star& s) {
  const double g = kGamma;
  const double cl = std::sqrt(g * l.p / l.rho), cr = std::sqrt(g * r.p / r.rho);
  std::vector<double> xs;
  if (s.p > l.p) {
    xs.push_back(l.u - cl * std::sqrt((g + 1.0) / (2.0 * g) * s.p / l.p + (g - 1.0) / (2.0 * g)));
  } else {
    xs.push_back(l.u - cl);
    xs.push_back(s.u - cl * std::pow(s.p / l.p, (g - 1.0) / (2.0 * g)));
  }
  xs.push_back(s.u);
  if (s.p > r.p) {
    xs.push_back(r.u + cr * std::sqrt((g + 1.0) / (2.0 * g) * s.p / r.p + (g - 1.0) / (2.0 * g)));
  } else {
    xs.push_back(s.u + cr * std::pow(s.p / r.p, (g - 1.0) / (2.0 * g)));
    xs.push_back(r.u + cr);
  }
  return xs;
}

/// Integral of g over [a, b] split at `breaks`, composite 10-point Gauss on
/// each smooth piece.
inline double piecewise_integral(const std::function<double(double)>& g, double a, double b,
                                 std::vector<double> breaks, int panels = 40) {
  static const double x10[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                0.8650633666889845, 0.9739065285171717};
  static const double w10[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                0.1494513491505806, 0.0666713443086881};
  std::vector<double> cuts{a};
  std::sort(breaks.begin(), breaks.end());
  for (double x : breaks) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double h = (cuts[k + 1] - cuts[k]) / panels;
    for (int q = 0; q < panels; ++q) {
      const double mid = cuts[k] + (q + 0.5) * h;
      for (int m = 0; m < 5; ++m) {
        sum += 0.5 * h * w10[m] * (g(mid - 0.5 * h * x10[m]) + g(mid + 0.5 * h * x10[m]));
      }
    }
  }
  return sum;
}

/// Random admissible primitive states.
struct StateGen {
  std::mt19937_64 rng;
  explicit StateGen(unsigned long long seed) : rng(seed) {}
  double uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng);
  }
  Prim3 prim1d() { return {uniform(0.1, 3.0), uniform(-2.0, 2.0), uniform(0.1, 3.0)}; }
};

}  // namespace oracle
