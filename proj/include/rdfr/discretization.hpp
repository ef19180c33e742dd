#pragma once

// Element-wise assembly of the blended RD/FR spatial operator on a mesh.
//
// Each element is processed line by line in every direction. RD elements
// use the nearest solution points of their neighbours as ghost states; FR
// elements use Rusanov fluxes of interpolated traces when both sides are FR
// and the RD boundary flux otherwise, so that every interface carries one
// common flux value.

#include <span>
#include <string>
#include <vector>

#include "rdfr/euler.hpp"
#include "rdfr/mesh.hpp"
#include "rdfr/operators.hpp"
#include "rdfr/sensor.hpp"

namespace rdfr {

enum class Execution { Serial, Parallel };

/// How element schemes are chosen: all RD, all FR, or by the sensor.
enum class SchemeMode { RD, FR, Blend };

template <int Dim>
struct SolutionField {
  int points_per_element = 0;
  std::vector<State<Dim>> states;  // element-major, x index fastest
  std::vector<Scheme> flags;       // one per element

  int num_elements() const { return static_cast<int>(flags.size()); }
  std::span<State<Dim>> element(int e) {
    return {states.data() + static_cast<std::size_t>(e) * points_per_element,
            static_cast<std::size_t>(points_per_element)};
  }
  std::span<const State<Dim>> element(int e) const {
    return {states.data() + static_cast<std::size_t>(e) * points_per_element,
            static_cast<std::size_t>(points_per_element)};
  }
};

template <int Dim>
class Discretization {
 public:
  Discretization(Mesh<Dim> mesh, int order, Gas gas = {});

  const Mesh<Dim>& mesh() const { return mesh_; }
  const ElementOperators& ops() const { return *ops_; }
  const Gas& gas() const { return gas_; }
  int order() const { return ops_->order; }
  int points_per_element() const { return ppe_; }
  int num_elements() const { return mesh_.size(); }
  std::size_t num_points() const {
    return static_cast<std::size_t>(ppe_) * mesh_.size();
  }

  SolutionField<Dim> make_field() const;

  Vector<Dim> node_position(int e, int local) const;
  /// Quadrature weight of a node in physical space.
  double node_weight(int e, int local) const;

  /// dudt = L(states) for fixed per-element schemes. Admissibility errors
  /// are rethrown with the element id of the lowest failing element.
  void residual(std::span<const State<Dim>> states,
                std::span<const Scheme> flags, std::span<State<Dim>> dudt,
                Execution exec = Execution::Parallel) const;

  /// Sets per-element schemes from the density sensor (or forces one).
  void update_flags(SolutionField<Dim>& field, SchemeMode mode,
                    const SensorConfig& cfg,
                    Execution exec = Execution::Parallel) const;

  /// cfl * min over elements and directions of h / ((2p+1) max(|v_d| + c)).
  double compute_dt(std::span<const State<Dim>> states, double cfl) const;

  /// Sum of quadrature-weighted conserved variables.
  State<Dim> totals(std::span<const State<Dim>> states) const;

  /// Lowest element holding a state with rho <= 0 or e <= 0, or -1.
  int first_inadmissible(std::span<const State<Dim>> states) const;

 private:
  void element_residual(int e, std::span<const State<Dim>> states,
                        std::span<const Scheme> flags,
                        std::span<State<Dim>> dudt) const;

  Mesh<Dim> mesh_;
  const ElementOperators* ops_;
  Gas gas_;
  int ppe_;
};

}  // namespace rdfr
