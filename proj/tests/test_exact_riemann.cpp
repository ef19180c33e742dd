#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rdfr/exact_riemann.hpp"

using namespace rdfr;

namespace {

const Gas kGas{1.4};

Primitive<1> P(const oracle::Prim3& q) { return {q.rho, {q.u}, q.p}; }

}  // namespace

TEST_SUITE("exact_riemann") {

TEST_CASE("sod star state") {
  const oracle::Prim3 l{1.0, 0.0, 1.0}, r{0.125, 0.0, 0.1};
  const auto s = solve_star(P(l), P(r), kGas);
  const auto ref = oracle::bisection_star(l, r);
  CHECK(s.p_star == doctest::Approx(ref.p).epsilon(1e-10));
  CHECK(s.u_star == doctest::Approx(ref.u).epsilon(1e-10));
  CHECK(s.p_star == doctest::Approx(0.30313).epsilon(1e-5));
  CHECK(s.u_star == doctest::Approx(0.92745).epsilon(1e-5));
  CHECK(s.rho_star_l == doctest::Approx(0.42632).epsilon(1e-5));
  CHECK(s.rho_star_r == doctest::Approx(0.26557).epsilon(1e-5));
  CHECK(std::abs(pressure_function(s.p_star, P(l), P(r), kGas)) <= 1e-12);

  const auto q = sample(P(l), P(r), s, 0.0, kGas);
  CHECK(q.rho == doctest::Approx(0.42632).epsilon(1e-5));
  CHECK(q.vel[0] == doctest::Approx(0.92745).epsilon(1e-5));
  CHECK(q.p == doctest::Approx(0.30313).epsilon(1e-5));
}

TEST_CASE("star states match bisection on random data") {
  oracle::StateGen gen(77);
  int solved = 0;
  for (int k = 0; k < 300; ++k) {
    const auto l = gen.prim1d(), r = gen.prim1d();
    try {
      const auto s = solve_star(P(l), P(r), kGas);
      const auto ref = oracle::bisection_star(l, r);
      CHECK(s.p_star == doctest::Approx(ref.p).epsilon(1e-10));
      CHECK(s.u_star == doctest::Approx(ref.u).epsilon(1e-9).scale(1.0));
      ++solved;
    } catch (const VacuumError&) {
    }
  }
  CHECK(solved > 250);
}

TEST_CASE("trivial problems") {
  const Primitive<1> q{0.7, {0.3}, 1.1};
  const auto s = solve_star(q, q, kGas);
  CHECK(s.p_star == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(s.u_star == doctest::Approx(0.3).epsilon(1e-12));
  for (double xi : {-3.0, -0.2, 0.5, 4.0}) {
    const auto w = sample(q, q, s, xi, kGas);
    CHECK(w.rho == doctest::Approx(0.7));
    CHECK(w.p == doctest::Approx(1.1));
  }

  // mirror symmetry
  const Primitive<1> a{1.0, {0.5}, 2.0}, b{0.3, {-0.2}, 0.4};
  const auto s1 = solve_star(a, b, kGas);
  const auto s2 = solve_star(Primitive<1>{0.3, {0.2}, 0.4}, Primitive<1>{1.0, {-0.5}, 2.0}, kGas);
  CHECK(s1.p_star == doctest::Approx(s2.p_star).epsilon(1e-12));
  CHECK(s1.u_star == doctest::Approx(-s2.u_star).epsilon(1e-12));
  CHECK(s1.rho_star_l == doctest::Approx(s2.rho_star_r).epsilon(1e-12));

  CHECK_THROWS_AS(solve_star(Primitive<1>{1.0, {-20.0}, 1.0}, Primitive<1>{1.0, {20.0}, 1.0}, kGas),
                  VacuumError);
}

TEST_CASE("contact carries continuous pressure and velocity") {
  const Primitive<1> l{1.0, {0.0}, 1.0}, r{0.125, {0.0}, 0.1};
  const auto s = solve_star(l, r, kGas);
  const auto a = sample(l, r, s, s.u_star - 1e-9, kGas);
  const auto b = sample(l, r, s, s.u_star + 1e-9, kGas);
  CHECK(a.p == doctest::Approx(b.p));
  CHECK(a.vel[0] == doctest::Approx(b.vel[0]));
  CHECK(a.rho == doctest::Approx(s.rho_star_l));
  CHECK(b.rho == doctest::Approx(s.rho_star_r));
}

TEST_CASE("right shock satisfies Rankine-Hugoniot") {
  const oracle::Prim3 l{1.0, 0.0, 1.0}, r{0.125, 0.0, 0.1};
  const auto s = solve_star(P(l), P(r), kGas);
  const auto breaks = oracle::wave_breaks(l, r, oracle::bisection_star(l, r));
  const double S = breaks.back();
  const auto ustar = oracle::cons({s.rho_star_r, s.u_star, s.p_star});
  const auto ur = oracle::cons(r);
  const auto fs = oracle::flux(ustar), fr = oracle::flux(ur);
  for (int m = 0; m < 3; ++m) CHECK(S * (ustar[m] - ur[m]) == doctest::Approx(fs[m] - fr[m]).epsilon(1e-9));
}

TEST_CASE("fan average identity") {
  // integral of u over [-a, a] at t = 1 equals a (uL + uR) - (f(uR) - f(uL))
  // once a exceeds every wave speed
  oracle::StateGen gen(55);
  int checked = 0;
  while (checked < 100) {
    const auto l = gen.prim1d(), r = gen.prim1d();
    StarState s;
    try {
      s = solve_star(P(l), P(r), kGas);
    } catch (const VacuumError&) {
      continue;
    }
    const auto breaks = oracle::wave_breaks(l, r, oracle::bisection_star(l, r));
    const double a = 1.0 + std::max(std::abs(breaks.front()), std::abs(breaks.back()));
    const auto ul = oracle::cons(l), ur = oracle::cons(r);
    const auto fl = oracle::flux(ul), fr = oracle::flux(ur);
    for (int m = 0; m < 3; ++m) {
      const double integral = oracle::piecewise_integral(
          [&](double xi) {
            const auto w = sample(P(l), P(r), s, xi, kGas);
            return oracle::cons({w.rho, w.vel[0], w.p})[m];
          },
          -a, a, breaks);
      const double expected = a * (ul[m] + ur[m]) - (fr[m] - fl[m]);
      CHECK(integral == doctest::Approx(expected).epsilon(1e-6).scale(1.0));
    }
    ++checked;
  }
}

TEST_CASE("godunov flux is the flux of the sampled state at xi = 0") {
  const Primitive<1> l{1.0, {0.75}, 1.0}, r{0.125, {0.0}, 0.1};
  const auto s = solve_star(l, r, kGas);
  const auto w = sample(l, r, s, 0.0, kGas);
  const auto g = godunov_flux(l, r, kGas);
  const auto f = oracle::flux(oracle::cons({w.rho, w.vel[0], w.p}));
  for (int m = 0; m < 3; ++m) CHECK(g[m] == doctest::Approx(f[m]).epsilon(1e-12));
}

}
