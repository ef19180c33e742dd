#pragma once

// Axis-aligned element meshes (1D partitions and 2D quad lattices with
// optional cut-outs), face connectivity and boundary ghost states.

#include <array>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "rdfr/euler.hpp"

namespace rdfr {

struct PeriodicBC {};
struct SlipWallBC {};
struct ExtrapolateBC {};
template <int Dim>
struct FixedStateBC {
  Primitive<Dim> state;
};

template <int Dim>
using BoundaryCondition =
    std::variant<PeriodicBC, FixedStateBC<Dim>, SlipWallBC, ExtrapolateBC>;

template <int Dim>
std::string describe(const BoundaryCondition<Dim>& bc);

/// A face either links to a neighbour element or to a boundary condition.
struct FaceLink {
  int neighbor = -1;
  int boundary = -1;
  bool is_boundary() const { return neighbor < 0; }
};

template <int Dim>
struct Element {
  Vector<Dim> lower{};
  Vector<Dim> size{};
  std::array<int, Dim> index{};  // lattice coordinates
};

template <int Dim>
struct Mesh {
  std::vector<Element<Dim>> elements;
  // Face 2*d is the low side in direction d, 2*d+1 the high side.
  std::vector<std::array<FaceLink, 2 * Dim>> faces;
  std::vector<BoundaryCondition<Dim>> boundaries;
  std::vector<std::string> boundary_names;
  std::array<int, Dim> lattice{};
  Vector<Dim> origin{};
  Vector<Dim> spacing{};

  int size() const { return static_cast<int>(elements.size()); }
  double jacobian(int e, int dir) const { return 0.5 * elements[e].size[dir]; }
  const BoundaryCondition<Dim>& boundary(const FaceLink& f) const {
    return boundaries[f.boundary];
  }

  /// Throws std::logic_error if connectivity or geometry is inconsistent.
  void validate() const;
  std::string summary() const;
};

Mesh<1> build_uniform_1d(double a, double b, int n,
                         BoundaryCondition<1> left = PeriodicBC{},
                         BoundaryCondition<1> right = PeriodicBC{});

/// Boundary conditions ordered x-low, x-high, y-low, y-high. Periodic must be
/// paired on opposite sides.
Mesh<2> build_uniform_quad(Vector<2> lower, Vector<2> upper, int nx, int ny,
                           const std::array<BoundaryCondition<2>, 4>& bcs);

/// Structured lattice of nx * ny cells of size h, keeping cells for which
/// `keep(i, j)` is true. Faces without a neighbour get `boundary_of(i, j,
/// face)`, an index into `bcs`. Periodicity is not supported here.
Mesh<2> build_lattice_mesh(Vector<2> origin, double h, int nx, int ny,
                           const std::function<bool(int, int)>& keep,
                           const std::function<int(int, int, int)>& boundary_of,
                           std::vector<BoundaryCondition<2>> bcs,
                           std::vector<std::string> names);

/// Mach 3 wind tunnel [0,3] x [0,1] minus the step [0.6,3] x [0,0.2] with a
/// sharp corner.
Mesh<2> build_ffs_mesh(double h, const Primitive<2>& inflow = {1.4, {3.0, 0.0}, 1.0});

template <int Dim>
State<Dim> ghost_state(const BoundaryCondition<Dim>& bc,
                       const State<Dim>& interior,
                       const Vector<Dim>& outward_normal, const Gas& gas) {
  struct Visitor {
    const State<Dim>& u;
    const Vector<Dim>& n;
    const Gas& gas;
    State<Dim> operator()(const PeriodicBC&) const { return u; }
    State<Dim> operator()(const ExtrapolateBC&) const { return u; }
    State<Dim> operator()(const FixedStateBC<Dim>& f) const {
      return prim_to_cons(f.state, gas);
    }
    State<Dim> operator()(const SlipWallBC&) const {
      double mn = 0.0;
      for (int k = 0; k < Dim; ++k) mn += u.momentum(k) * n[k];
      State<Dim> g = u;
      for (int k = 0; k < Dim; ++k) g[1 + k] -= 2.0 * mn * n[k];
      return g;
    }
  };
  return std::visit(Visitor{interior, outward_normal, gas}, bc);
}

}  // namespace rdfr
