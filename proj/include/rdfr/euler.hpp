#pragma once

// Compressible Euler physics for an ideal gas: state vectors, conversions,
// normal fluxes, wavespeed estimates and invariant-set membership.

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdfr {

struct Gas {
  double gamma = 1.4;
};

template <int Dim>
using Vector = std::array<double, static_cast<std::size_t>(Dim)>;

/// Conserved variables (rho, rho*v, E), also used for flux vectors.
template <int Dim>
struct State {
  static_assert(Dim == 1 || Dim == 2, "only 1D and 2D are supported");
  static constexpr int kSize = Dim + 2;

  std::array<double, kSize> v{};

  double& operator[](int k) { return v[k]; }
  double operator[](int k) const { return v[k]; }

  double density() const { return v[0]; }
  double momentum(int k) const { return v[1 + k]; }
  double energy() const { return v[Dim + 1]; }

  State& operator+=(const State& o) {
    for (int k = 0; k < kSize; ++k) v[k] += o.v[k];
    return *this;
  }
  State& operator-=(const State& o) {
    for (int k = 0; k < kSize; ++k) v[k] -= o.v[k];
    return *this;
  }
  State& operator*=(double s) {
    for (auto& x : v) x *= s;
    return *this;
  }

  friend State operator+(State a, const State& b) { return a += b; }
  friend State operator-(State a, const State& b) { return a -= b; }
  friend State operator*(double s, State a) { return a *= s; }
  friend State operator*(State a, double s) { return a *= s; }
  friend bool operator==(const State&, const State&) = default;
};

template <int Dim>
struct Primitive {
  double rho = 0.0;
  Vector<Dim> vel{};
  double p = 0.0;
};

/// Raised when a state leaves the admissible set (rho > 0, p > 0).
class AdmissibilityError : public std::runtime_error {
 public:
  AdmissibilityError(std::string condition, std::vector<double> state,
                     int element = -1, int node = -1)
      : std::runtime_error(describe(condition, state, element, node)),
        condition_(std::move(condition)),
        state_(std::move(state)),
        element_(element),
        node_(node) {}

  const std::string& condition() const { return condition_; }
  const std::vector<double>& state() const { return state_; }
  int element() const { return element_; }
  int node() const { return node_; }

  AdmissibilityError located(int element, int node) const {
    return AdmissibilityError(condition_, state_, element, node);
  }

 private:
  static std::string describe(const std::string& condition,
                              const std::vector<double>& state, int element,
                              int node) {
    std::ostringstream os;
    os.precision(17);
    os << "inadmissible state (" << condition << "): [";
    for (std::size_t k = 0; k < state.size(); ++k) {
      os << (k ? ", " : "") << state[k];
    }
    os << "]";
    if (element >= 0) os << " at element " << element;
    if (node >= 0) os << " node " << node;
    return os.str();
  }

  std::string condition_;
  std::vector<double> state_;
  int element_;
  int node_;
};

template <int Dim>
std::vector<double> to_vector(const State<Dim>& u) {
  return {u.v.begin(), u.v.end()};
}

template <int Dim>
double kinetic_energy_density(const State<Dim>& u) {
  double m2 = 0.0;
  for (int k = 0; k < Dim; ++k) m2 += u.momentum(k) * u.momentum(k);
  return 0.5 * m2 / u.density();
}

/// Pressure without admissibility checks.
template <int Dim>
double pressure(const State<Dim>& u, const Gas& gas) {
  return (gas.gamma - 1.0) * (u.energy() - kinetic_energy_density(u));
}

/// Specific internal energy e = E/rho - |v|^2/2.
template <int Dim>
double internal_energy(const State<Dim>& u) {
  return (u.energy() - kinetic_energy_density(u)) / u.density();
}

template <int Dim>
State<Dim> prim_to_cons(const Primitive<Dim>& q, const Gas& gas) {
  if (!(q.rho > 0.0)) {
    std::vector<double> s{q.rho};
    s.insert(s.end(), q.vel.begin(), q.vel.end());
    s.push_back(q.p);
    throw AdmissibilityError("rho <= 0", std::move(s));
  }
  State<Dim> u;
  u[0] = q.rho;
  double v2 = 0.0;
  for (int k = 0; k < Dim; ++k) {
    u[1 + k] = q.rho * q.vel[k];
    v2 += q.vel[k] * q.vel[k];
  }
  u[Dim + 1] = q.p / (gas.gamma - 1.0) + 0.5 * q.rho * v2;
  return u;
}

template <int Dim>
Primitive<Dim> cons_to_prim(const State<Dim>& u, const Gas& gas) {
  if (!(u.density() > 0.0)) throw AdmissibilityError("rho <= 0", to_vector(u));
  Primitive<Dim> q;
  q.rho = u.density();
  for (int k = 0; k < Dim; ++k) q.vel[k] = u.momentum(k) / q.rho;
  q.p = pressure(u, gas);
  if (!(q.p > 0.0)) throw AdmissibilityError("p <= 0", to_vector(u));
  return q;
}

template <int Dim>
double normal_velocity(const Primitive<Dim>& q, const Vector<Dim>& n) {
  double vn = 0.0;
  for (int k = 0; k < Dim; ++k) vn += q.vel[k] * n[k];
  return vn;
}

template <int Dim>
double sound_speed(const Primitive<Dim>& q, const Gas& gas) {
  return std::sqrt(gas.gamma * q.p / q.rho);
}

/// F(u) . n
template <int Dim>
State<Dim> euler_flux(const Primitive<Dim>& q, const State<Dim>& u,
                      const Vector<Dim>& n) {
  const double vn = normal_velocity(q, n);
  State<Dim> f;
  f[0] = u.density() * vn;
  for (int k = 0; k < Dim; ++k) f[1 + k] = u.momentum(k) * vn + q.p * n[k];
  f[Dim + 1] = (u.energy() + q.p) * vn;
  return f;
}

template <int Dim>
State<Dim> euler_flux(const State<Dim>& u, const Vector<Dim>& n,
                      const Gas& gas) {
  return euler_flux(cons_to_prim(u, gas), u, n);
}

/// Davis estimate max(|vL.n| + cL, |vR.n| + cR).
template <int Dim>
double davis_max_wavespeed(const Primitive<Dim>& qL, const Primitive<Dim>& qR,
                           const Vector<Dim>& n, const Gas& gas) {
  const double sl = std::abs(normal_velocity(qL, n)) + sound_speed(qL, gas);
  const double sr = std::abs(normal_velocity(qR, n)) + sound_speed(qR, gas);
  return sl > sr ? sl : sr;
}

template <int Dim>
double davis_max_wavespeed(const State<Dim>& uL, const State<Dim>& uR,
                           const Vector<Dim>& n, const Gas& gas) {
  return davis_max_wavespeed(cons_to_prim(uL, gas), cons_to_prim(uR, gas), n,
                             gas);
}

/// Entropy s(u) = p rho^-gamma.
template <int Dim>
double entropy(const State<Dim>& u, const Gas& gas) {
  return pressure(u, gas) * std::pow(u.density(), -gas.gamma);
}

struct InvariantSetSpec {
  double s0 = 0.0;
};

struct Membership {
  bool rho_ok = false;
  bool e_ok = false;
  bool s_ok = false;
  bool all() const { return rho_ok && e_ok && s_ok; }
};

/// Membership in {rho >= 0, e(u) >= 0, s(u) >= s0}. Conditions that cannot be
/// evaluated (non-positive density) are reported as failing.
template <int Dim>
Membership invariant_membership(const State<Dim>& u,
                                const InvariantSetSpec& spec, const Gas& gas) {
  Membership m;
  m.rho_ok = u.density() >= 0.0;
  if (!(u.density() > 0.0)) return m;
  m.e_ok = internal_energy(u) >= 0.0;
  m.s_ok = m.e_ok && entropy(u, gas) >= spec.s0;
  return m;
}

/// Strict admissibility used by the time-step guard: rho > 0 and e(u) > 0.
template <int Dim>
bool is_admissible(const State<Dim>& u) {
  if (!(u.density() > 0.0) || !std::isfinite(u.energy())) return false;
  return internal_energy(u) > 0.0;
}

template <int Dim>
Vector<Dim> unit_vector(int dir, double sign = 1.0) {
  Vector<Dim> n{};
  n[dir] = sign;
  return n;
}

}  // namespace rdfr
