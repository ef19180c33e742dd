#pragma once

// Modal smoothness indicator on density and the per-element RD/FR switch.

#include <span>

#include "rdfr/operators.hpp"

namespace rdfr {

enum class Scheme : unsigned char { RD, FR };

struct SensorConfig {
  double epsilon = 0.01;
};

/// Ratio of the energy in the highest modes (index p in any direction) to
/// the total modal energy, using exact Legendre norms 2/(2n+1). Accepts one
/// line or one tensor-product quad of nodal values. Returns 0 for a field
/// with zero energy.
double smoothness_indicator(std::span<const double> nodal_density,
                            const ElementOperators& ops);

/// eps * p^-4
double sensor_threshold(int p, const SensorConfig& cfg);

/// RD iff S_e >= eps p^-4; always RD at p = 0.
Scheme select_scheme(double indicator, int p, const SensorConfig& cfg);

}  // namespace rdfr
