#include "rdfr/sensor.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rdfr {

double smoothness_indicator(std::span<const double> nodal_density,
                            const ElementOperators& ops) {
  const int n = ops.num_sol();
  const int p = ops.order;
  const auto modes = modal_transform(ops, nodal_density);
  auto norm2 = [](int k) { return 2.0 / (2.0 * k + 1.0); };

  double total = 0.0;
  double high = 0.0;
  if (static_cast<int>(modes.size()) == n) {
    for (int i = 0; i < n; ++i) {
      const double e = modes[i] * modes[i] * norm2(i);
      total += e;
      if (i == p) high += e;
    }
  } else {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const double e = modes[j * n + i] * modes[j * n + i] * norm2(i) * norm2(j);
        total += e;
        if (i == p || j == p) high += e;
      }
    }
  }
  if (!(total > 0.0)) return 0.0;
  return high / total;
}

double sensor_threshold(int p, const SensorConfig& cfg) {
  if (p < 1) return 0.0;
  return cfg.epsilon / std::pow(static_cast<double>(p), 4);
}

Scheme select_scheme(double indicator, int p, const SensorConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) {
    throw std::invalid_argument("sensor epsilon must be positive");
  }
  if (p == 0) return Scheme::RD;
  return indicator >= sensor_threshold(p, cfg) ? Scheme::RD : Scheme::FR;
}

}  // namespace rdfr
