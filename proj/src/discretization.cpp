#include "rdfr/discretization.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

#include "rdfr/fr_core.hpp"
#include "rdfr/rd_core.hpp"

namespace rdfr {

namespace {

int ipow(int base, int e) {
  int r = 1;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

// Local index of point k on line t in direction dir for n points per line.
template <int Dim>
struct LineIndexer {
  int n;
  int stride(int dir) const { return dir == 0 ? 1 : n; }
  int base(int dir, int t) const {
    if constexpr (Dim == 1) {
      return 0;
    } else {
      return dir == 0 ? t * n : t;
    }
  }
  int at(int dir, int t, int k) const { return base(dir, t) + k * stride(dir); }
};

// Collects the first error raised inside a parallel loop, keyed by the
// lowest element id so the reported failure does not depend on scheduling.
class FirstError {
 public:
  void record(int element) {
#pragma omp critical(rdfr_first_error)
    {
      if (element < element_) {
        element_ = element;
        error_ = std::current_exception();
      }
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  int element_ = INT_MAX;
  std::exception_ptr error_;
};

}  // namespace

template <int Dim>
Discretization<Dim>::Discretization(Mesh<Dim> mesh, int order, Gas gas)
    : mesh_(std::move(mesh)),
      ops_(&operators_for(order)),
      gas_(gas),
      ppe_(ipow(order + 1, Dim)) {
  mesh_.validate();
}

template <int Dim>
SolutionField<Dim> Discretization<Dim>::make_field() const {
  SolutionField<Dim> f;
  f.points_per_element = ppe_;
  f.states.resize(num_points());
  f.flags.assign(mesh_.size(), Scheme::RD);
  return f;
}

template <int Dim>
Vector<Dim> Discretization<Dim>::node_position(int e, int local) const {
  const int n = ops_->num_sol();
  const auto& el = mesh_.elements[e];
  Vector<Dim> x{};
  int rem = local;
  for (int d = 0; d < Dim; ++d) {
    const int k = rem % n;
    rem /= n;
    x[d] = el.lower[d] + 0.5 * el.size[d] * (ops_->sol_nodes[k] + 1.0);
  }
  return x;
}

template <int Dim>
double Discretization<Dim>::node_weight(int e, int local) const {
  const int n = ops_->num_sol();
  double w = 1.0;
  int rem = local;
  for (int d = 0; d < Dim; ++d) {
    const int k = rem % n;
    rem /= n;
    w *= ops_->mass_weights[k] * mesh_.jacobian(e, d);
  }
  return w;
}

template <int Dim>
void Discretization<Dim>::element_residual(int e,
                                           std::span<const State<Dim>> states,
                                           std::span<const Scheme> flags,
                                           std::span<State<Dim>> dudt) const {
  const ElementOperators& ops = *ops_;
  const int n = ops.num_sol();
  const int lines = ipow(n, Dim - 1);
  const LineIndexer<Dim> idx{n};
  const std::size_t off = static_cast<std::size_t>(e) * ppe_;
  const bool is_rd = flags[e] == Scheme::RD;

  std::array<State<Dim>, kMaxPoints> line;
  std::array<State<Dim>, kMaxPoints> nb_line;
  std::array<State<Dim>, kMaxPoints> out;

  auto gather = [&](int elem, int dir, int t, std::array<State<Dim>, kMaxPoints>& dst) {
    const std::size_t o = static_cast<std::size_t>(elem) * ppe_;
    for (int k = 0; k < n; ++k) dst[k] = states[o + idx.at(dir, t, k)];
  };

  for (int dir = 0; dir < Dim; ++dir) {
    const Vector<Dim> normal = unit_vector<Dim>(dir);
    const Vector<Dim> out_lo = unit_vector<Dim>(dir, -1.0);
    const Vector<Dim> out_hi = unit_vector<Dim>(dir, 1.0);
    const double jac = mesh_.jacobian(e, dir);
    const FaceLink& lo = mesh_.faces[e][2 * dir];
    const FaceLink& hi = mesh_.faces[e][2 * dir + 1];

    for (int t = 0; t < lines; ++t) {
      gather(e, dir, t, line);
      std::span<const State<Dim>> interior(line.data(), n);
      for (int k = 0; k < n; ++k) out[k] = State<Dim>{};
      std::span<State<Dim>> out_span(out.data(), n);

      try {
        if (is_rd) {
          RdElementView<Dim> view;
          view.interior = interior;
          view.jacobian = jac;
          view.normal = normal;
          if (lo.is_boundary()) {
            view.left_ghost = ghost_state(mesh_.boundary(lo), line[0], out_lo, gas_);
          } else {
            view.left_ghost =
                states[static_cast<std::size_t>(lo.neighbor) * ppe_ + idx.at(dir, t, n - 1)];
          }
          if (hi.is_boundary()) {
            view.right_ghost = ghost_state(mesh_.boundary(hi), line[n - 1], out_hi, gas_);
          } else {
            view.right_ghost =
                states[static_cast<std::size_t>(hi.neighbor) * ppe_ + idx.at(dir, t, 0)];
          }
          rd_residual_accumulate(view, ops, gas_, out_span);
        } else {
          State<Dim> common_l, common_r;
          if (lo.is_boundary()) {
            const State<Dim> tr = interpolate_trace(interior, ops, Side::Left);
            const State<Dim> g = ghost_state(mesh_.boundary(lo), tr, out_lo, gas_);
            common_l = rusanov_flux(g, tr, normal, gas_);
          } else if (flags[lo.neighbor] == Scheme::FR) {
            gather(lo.neighbor, dir, t, nb_line);
            const State<Dim> ext = interpolate_trace(
                std::span<const State<Dim>>(nb_line.data(), n), ops, Side::Right);
            common_l = rusanov_flux(ext, interpolate_trace(interior, ops, Side::Left),
                                    normal, gas_);
          } else {
            const State<Dim>& ext =
                states[static_cast<std::size_t>(lo.neighbor) * ppe_ + idx.at(dir, t, n - 1)];
            common_l = rusanov_flux(ext, line[0], normal, gas_);
          }
          if (hi.is_boundary()) {
            const State<Dim> tr = interpolate_trace(interior, ops, Side::Right);
            const State<Dim> g = ghost_state(mesh_.boundary(hi), tr, out_hi, gas_);
            common_r = rusanov_flux(tr, g, normal, gas_);
          } else if (flags[hi.neighbor] == Scheme::FR) {
            gather(hi.neighbor, dir, t, nb_line);
            const State<Dim> ext = interpolate_trace(
                std::span<const State<Dim>>(nb_line.data(), n), ops, Side::Left);
            common_r = rusanov_flux(interpolate_trace(interior, ops, Side::Right), ext,
                                    normal, gas_);
          } else {
            const State<Dim>& ext =
                states[static_cast<std::size_t>(hi.neighbor) * ppe_ + idx.at(dir, t, 0)];
            common_r = rusanov_flux(line[n - 1], ext, normal, gas_);
          }
          fr_residual_accumulate(interior, common_l, common_r, jac, normal, ops,
                                 gas_, out_span);
        }
      } catch (const AdmissibilityError& err) {
        const int k = err.node();
        const int local = (k >= 0 && k < n) ? idx.at(dir, t, k) : -1;
        throw err.located(e, local);
      }

      for (int k = 0; k < n; ++k) dudt[off + idx.at(dir, t, k)] += out[k];
    }
  }
}

template <int Dim>
void Discretization<Dim>::residual(std::span<const State<Dim>> states,
                                   std::span<const Scheme> flags,
                                   std::span<State<Dim>> dudt,
                                   Execution exec) const {
  if (states.size() != num_points() || dudt.size() != num_points() ||
      static_cast<int>(flags.size()) != mesh_.size()) {
    throw std::invalid_argument("residual: field size does not match mesh");
  }
  std::fill(dudt.begin(), dudt.end(), State<Dim>{});
  const int ne = mesh_.size();
  if (exec == Execution::Serial) {
    for (int e = 0; e < ne; ++e) element_residual(e, states, flags, dudt);
    return;
  }
  FirstError first;
#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    try {
      element_residual(e, states, flags, dudt);
    } catch (...) {
      first.record(e);
    }
  }
  first.rethrow();
}

template <int Dim>
void Discretization<Dim>::update_flags(SolutionField<Dim>& field,
                                       SchemeMode mode, const SensorConfig& cfg,
                                       Execution exec) const {
  const int ne = mesh_.size();
  field.flags.resize(ne);
  if (mode != SchemeMode::Blend) {
    if (mode == SchemeMode::FR && order() == 0) {
      throw std::invalid_argument("FR requires polynomial order >= 1");
    }
    std::fill(field.flags.begin(), field.flags.end(),
              mode == SchemeMode::RD ? Scheme::RD : Scheme::FR);
    return;
  }
  auto flag_one = [&](int e) {
    std::array<double, kMaxPoints * kMaxPoints> rho{};
    const auto el = field.element(e);
    for (int i = 0; i < ppe_; ++i) rho[i] = el[i].density();
    const double s = smoothness_indicator(
        std::span<const double>(rho.data(), static_cast<std::size_t>(ppe_)), *ops_);
    field.flags[e] = select_scheme(s, order(), cfg);
  };
  if (exec == Execution::Serial) {
    for (int e = 0; e < ne; ++e) flag_one(e);
    return;
  }
  FirstError first;
#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    try {
      flag_one(e);
    } catch (...) {
      first.record(e);
    }
  }
  first.rethrow();
}

template <int Dim>
double Discretization<Dim>::compute_dt(std::span<const State<Dim>> states,
                                       double cfl) const {
  if (!(cfl > 0.0)) throw std::invalid_argument("cfl must be positive");
  const int ne = mesh_.size();
  const double order_factor = 2.0 * order() + 1.0;
  double dt = std::numeric_limits<double>::infinity();
  FirstError first;
#pragma omp parallel for schedule(static) reduction(min : dt)
  for (int e = 0; e < ne; ++e) {
    try {
      std::array<double, Dim> lam{};
      for (int i = 0; i < ppe_; ++i) {
        const auto& u = states[static_cast<std::size_t>(e) * ppe_ + i];
        const Primitive<Dim> q = cons_to_prim(u, gas_);
        const double c = sound_speed(q, gas_);
        for (int d = 0; d < Dim; ++d) lam[d] = std::max(lam[d], std::abs(q.vel[d]) + c);
      }
      for (int d = 0; d < Dim; ++d) {
        dt = std::min(dt, mesh_.elements[e].size[d] / (order_factor * lam[d]));
      }
    } catch (...) {
      first.record(e);
    }
  }
  first.rethrow();
  return cfl * dt;
}

template <int Dim>
State<Dim> Discretization<Dim>::totals(std::span<const State<Dim>> states) const {
  State<Dim> sum{};
  for (int e = 0; e < mesh_.size(); ++e) {
    for (int i = 0; i < ppe_; ++i) {
      sum += node_weight(e, i) * states[static_cast<std::size_t>(e) * ppe_ + i];
    }
  }
  return sum;
}

template <int Dim>
int Discretization<Dim>::first_inadmissible(std::span<const State<Dim>> states) const {
  for (int e = 0; e < mesh_.size(); ++e) {
    for (int i = 0; i < ppe_; ++i) {
      if (!is_admissible(states[static_cast<std::size_t>(e) * ppe_ + i])) return e;
    }
  }
  return -1;
}

template class Discretization<1>;
template class Discretization<2>;

}  // namespace rdfr
