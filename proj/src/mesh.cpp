#include "rdfr/mesh.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rdfr {

template <int Dim>
std::string describe(const BoundaryCondition<Dim>& bc) {
  struct Visitor {
    std::string operator()(const PeriodicBC&) const { return "periodic"; }
    std::string operator()(const SlipWallBC&) const { return "slip-wall"; }
    std::string operator()(const ExtrapolateBC&) const { return "extrapolate"; }
    std::string operator()(const FixedStateBC<Dim>& f) const {
      std::ostringstream os;
      os << "fixed(rho=" << f.state.rho << ", v=(";
      for (int k = 0; k < Dim; ++k) os << (k ? "," : "") << f.state.vel[k];
      os << "), p=" << f.state.p << ")";
      return os.str();
    }
  };
  return std::visit(Visitor{}, bc);
}

template <int Dim>
void Mesh<Dim>::validate() const {
  if (faces.size() != elements.size()) {
    throw std::logic_error("mesh: face table size mismatch");
  }
  for (int e = 0; e < size(); ++e) {
    for (int d = 0; d < Dim; ++d) {
      if (!(elements[e].size[d] > 0.0)) {
        throw std::logic_error("mesh: non-positive jacobian in element " +
                               std::to_string(e));
      }
    }
    for (int f = 0; f < 2 * Dim; ++f) {
      const FaceLink& link = faces[e][f];
      if (link.is_boundary()) {
        if (link.boundary < 0 ||
            link.boundary >= static_cast<int>(boundaries.size())) {
          throw std::logic_error("mesh: dangling boundary tag on element " +
                                 std::to_string(e));
        }
        if (std::holds_alternative<PeriodicBC>(boundaries[link.boundary])) {
          throw std::logic_error("mesh: periodic face without a partner");
        }
        if (const auto* fixed =
                std::get_if<FixedStateBC<Dim>>(&boundaries[link.boundary])) {
          if (!(fixed->state.rho > 0.0 && fixed->state.p > 0.0)) {
            throw std::logic_error("mesh: inadmissible fixed boundary state");
          }
        }
        continue;
      }
      const int opposite = f ^ 1;
      const FaceLink& back = faces.at(link.neighbor)[opposite];
      if (back.neighbor != e) {
        throw std::logic_error("mesh: non-conforming face between elements " +
                               std::to_string(e) + " and " +
                               std::to_string(link.neighbor));
      }
    }
  }
}

template <int Dim>
std::string Mesh<Dim>::summary() const {
  std::ostringstream os;
  os.precision(10);
  os << "dim=" << Dim << " elements=" << size() << " lattice=";
  for (int d = 0; d < Dim; ++d) os << (d ? "x" : "") << lattice[d];
  os << " h=";
  for (int d = 0; d < Dim; ++d) os << (d ? "," : "") << spacing[d];
  os << " boundaries=";
  for (std::size_t b = 0; b < boundaries.size(); ++b) {
    os << (b ? ";" : "") << boundary_names[b] << ":" << describe<Dim>(boundaries[b]);
  }
  if (boundaries.empty()) os << "periodic";
  return os.str();
}

Mesh<1> build_uniform_1d(double a, double b, int n, BoundaryCondition<1> left,
                         BoundaryCondition<1> right) {
  if (n < 1) throw std::invalid_argument("build_uniform_1d: n < 1");
  if (!(b > a)) throw std::invalid_argument("build_uniform_1d: degenerate interval");
  const bool pl = std::holds_alternative<PeriodicBC>(left);
  const bool pr = std::holds_alternative<PeriodicBC>(right);
  if (pl != pr) {
    throw std::invalid_argument("build_uniform_1d: periodic must be set on both ends");
  }
  Mesh<1> m;
  const double h = (b - a) / n;
  m.lattice = {n};
  m.origin = {a};
  m.spacing = {h};
  m.elements.resize(n);
  m.faces.resize(n);
  if (!pl) {
    m.boundaries = {left, right};
    m.boundary_names = {"left", "right"};
  }
  for (int e = 0; e < n; ++e) {
    m.elements[e].lower = {a + e * h};
    m.elements[e].size = {h};
    m.elements[e].index = {e};
    FaceLink lo, hi;
    if (e > 0) lo.neighbor = e - 1;
    else if (pl) lo.neighbor = n - 1;
    else lo.boundary = 0;
    if (e < n - 1) hi.neighbor = e + 1;
    else if (pl) hi.neighbor = 0;
    else hi.boundary = 1;
    m.faces[e] = {lo, hi};
  }
  m.validate();
  return m;
}

Mesh<2> build_uniform_quad(Vector<2> lower, Vector<2> upper, int nx, int ny,
                           const std::array<BoundaryCondition<2>, 4>& bcs) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("build_uniform_quad: nx, ny >= 1");
  if (!(upper[0] > lower[0] && upper[1] > lower[1])) {
    throw std::invalid_argument("build_uniform_quad: degenerate box");
  }
  std::array<bool, 4> periodic{};
  for (int f = 0; f < 4; ++f) periodic[f] = std::holds_alternative<PeriodicBC>(bcs[f]);
  if (periodic[0] != periodic[1] || periodic[2] != periodic[3]) {
    throw std::invalid_argument("build_uniform_quad: periodic sides must be paired");
  }
  Mesh<2> m;
  const double hx = (upper[0] - lower[0]) / nx;
  const double hy = (upper[1] - lower[1]) / ny;
  m.lattice = {nx, ny};
  m.origin = lower;
  m.spacing = {hx, hy};
  static const std::array<const char*, 4> kNames = {"x-low", "x-high", "y-low", "y-high"};
  std::array<int, 4> tag{-1, -1, -1, -1};
  for (int f = 0; f < 4; ++f) {
    if (periodic[f]) continue;
    tag[f] = static_cast<int>(m.boundaries.size());
    m.boundaries.push_back(bcs[f]);
    m.boundary_names.emplace_back(kNames[f]);
  }
  const int n = nx * ny;
  m.elements.resize(n);
  m.faces.resize(n);
  auto id = [nx](int i, int j) { return i + nx * j; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int e = id(i, j);
      m.elements[e].lower = {lower[0] + i * hx, lower[1] + j * hy};
      m.elements[e].size = {hx, hy};
      m.elements[e].index = {i, j};
      auto& f = m.faces[e];
      if (i > 0) f[0].neighbor = id(i - 1, j);
      else if (periodic[0]) f[0].neighbor = id(nx - 1, j);
      else f[0].boundary = tag[0];
      if (i < nx - 1) f[1].neighbor = id(i + 1, j);
      else if (periodic[1]) f[1].neighbor = id(0, j);
      else f[1].boundary = tag[1];
      if (j > 0) f[2].neighbor = id(i, j - 1);
      else if (periodic[2]) f[2].neighbor = id(i, ny - 1);
      else f[2].boundary = tag[2];
      if (j < ny - 1) f[3].neighbor = id(i, j + 1);
      else if (periodic[3]) f[3].neighbor = id(i, 0);
      else f[3].boundary = tag[3];
    }
  }
  m.validate();
  return m;
}

Mesh<2> build_lattice_mesh(Vector<2> origin, double h, int nx, int ny,
                           const std::function<bool(int, int)>& keep,
                           const std::function<int(int, int, int)>& boundary_of,
                           std::vector<BoundaryCondition<2>> bcs,
                           std::vector<std::string> names) {
  Mesh<2> m;
  m.lattice = {nx, ny};
  m.origin = origin;
  m.spacing = {h, h};
  m.boundaries = std::move(bcs);
  m.boundary_names = std::move(names);
  std::vector<int> id(static_cast<std::size_t>(nx) * ny, -1);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!keep(i, j)) continue;
      id[i + nx * j] = m.size();
      Element<2> el;
      el.lower = {origin[0] + i * h, origin[1] + j * h};
      el.size = {h, h};
      el.index = {i, j};
      m.elements.push_back(el);
    }
  }
  auto lookup = [&](int i, int j) {
    if (i < 0 || j < 0 || i >= nx || j >= ny) return -1;
    return id[i + nx * j];
  };
  m.faces.resize(m.elements.size());
  for (int e = 0; e < m.size(); ++e) {
    const auto [i, j] = m.elements[e].index;
    const std::array<std::array<int, 2>, 4> offs{{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
    for (int f = 0; f < 4; ++f) {
      const int nb = lookup(i + offs[f][0], j + offs[f][1]);
      if (nb >= 0) m.faces[e][f].neighbor = nb;
      else m.faces[e][f].boundary = boundary_of(i, j, f);
    }
  }
  m.validate();
  return m;
}

Mesh<2> build_ffs_mesh(double h, const Primitive<2>& inflow) {
  auto cells = [h](double len) {
    const double r = len / h;
    const double k = std::round(r);
    if (!(h > 0.0) || k < 1.0 || std::abs(r - k) > 1e-8 * std::max(1.0, r)) {
      throw std::invalid_argument("build_ffs_mesh: h does not divide the step geometry");
    }
    return static_cast<int>(k);
  };
  const int nx = cells(3.0);
  const int ny = cells(1.0);
  const int step_i = cells(0.6);
  const int step_j = cells(0.2);
  enum { kInlet = 0, kOutlet = 1, kWall = 2 };
  auto keep = [=](int i, int j) { return !(i >= step_i && j < step_j); };
  auto boundary_of = [=](int i, int, int face) {
    if (face == 0 && i == 0) return static_cast<int>(kInlet);
    if (face == 1 && i == nx - 1) return static_cast<int>(kOutlet);
    return static_cast<int>(kWall);
  };
  return build_lattice_mesh({0.0, 0.0}, h, nx, ny, keep, boundary_of,
                            {FixedStateBC<2>{inflow}, ExtrapolateBC{}, SlipWallBC{}},
                            {"inlet", "outlet", "wall"});
}

template std::string describe<1>(const BoundaryCondition<1>&);
template std::string describe<2>(const BoundaryCondition<2>&);
template struct Mesh<1>;
template struct Mesh<2>;

}  // namespace rdfr
