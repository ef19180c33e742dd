#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "rdfr/operators.hpp"
#include "rdfr/sensor.hpp"

using namespace rdfr;

TEST_SUITE("sensor") {

TEST_CASE("constant density has no high-mode energy") {
  for (int p : {1, 3, 7}) {
    const auto& ops = operators_for(p);
    CHECK(smoothness_indicator(std::vector<double>(p + 1, 1.7), ops) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(smoothness_indicator(std::vector<double>((p + 1) * (p + 1), 0.4), ops) <= 1e-14);
  }
  CHECK(smoothness_indicator(std::vector<double>(4, 0.0), operators_for(3)) == 0.0);
}

TEST_CASE("a pure top mode gives one") {
  for (int p : {1, 2, 5}) {
    const auto& ops = operators_for(p);
    std::vector<double> line, quad;
    for (double x : ops.sol_nodes) line.push_back(legendre(p, x));
    CHECK(smoothness_indicator(line, ops) == doctest::Approx(1.0));
    for (double y : ops.sol_nodes) {
      for (double x : ops.sol_nodes) quad.push_back(legendre(p, x) * legendre(1 % (p + 1), y));
    }
    CHECK(smoothness_indicator(quad, ops) == doctest::Approx(1.0));
  }
}

TEST_CASE("one plus a small top mode") {
  const auto& ops = operators_for(3);
  std::vector<double> v;
  for (double x : ops.sol_nodes) v.push_back(1.0 + 0.1 * legendre(3, x));
  const double expected = 0.01 * (2.0 / 7.0) / (2.0 + 0.01 * (2.0 / 7.0));
  CHECK(smoothness_indicator(v, ops) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(1.4276e-3).epsilon(1e-4));
}

TEST_CASE("indicator is invariant to scaling the density") {
  oracle::StateGen gen(3);
  const auto& ops = operators_for(4);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> v(5), w(5);
    const double s = gen.uniform(0.01, 100.0);
    for (int i = 0; i < 5; ++i) {
      v[i] = gen.uniform(0.1, 2.0);
      w[i] = s * v[i];
    }
    CHECK(smoothness_indicator(w, ops) == doctest::Approx(smoothness_indicator(v, ops)).epsilon(1e-12));
  }
}

TEST_CASE("threshold and scheme selection") {
  const SensorConfig cfg;
  CHECK(sensor_threshold(3, cfg) == doctest::Approx(0.01 / 81.0));
  CHECK(sensor_threshold(1, cfg) == doctest::Approx(0.01));
  CHECK(select_scheme(2e-4, 3, cfg) == Scheme::RD);
  CHECK(select_scheme(1e-4, 3, cfg) == Scheme::FR);
  CHECK(select_scheme(0.0, 0, cfg) == Scheme::RD);
  CHECK(select_scheme(sensor_threshold(2, cfg), 2, cfg) == Scheme::RD);
}

TEST_CASE("wrong sizes are rejected") {
  CHECK_THROWS_AS(smoothness_indicator(std::vector<double>(3), operators_for(3)), std::invalid_argument);
}

}
