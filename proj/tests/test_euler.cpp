#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rdfr/euler.hpp"

using namespace rdfr;

namespace {

const Gas kGas{1.4};

template <int Dim>
void check_state(const State<Dim>& u, std::initializer_list<double> expected, double tol = 1e-14) {
  int k = 0;
  for (double e : expected) {
    CHECK(u[k] == doctest::Approx(e).epsilon(tol));
    ++k;
  }
}

}  // namespace

TEST_SUITE("euler") {

TEST_CASE("prim_to_cons examples") {
  check_state(prim_to_cons(Primitive<1>{1.0, {0.0}, 1.0}, kGas), {1.0, 0.0, 2.5});
  check_state(prim_to_cons(Primitive<1>{0.125, {0.0}, 0.1}, kGas), {0.125, 0.0, 0.25});
  check_state(prim_to_cons(Primitive<2>{1.0, {1.0, 0.0}, 1.0}, kGas), {1.0, 1.0, 0.0, 3.0});
  CHECK_THROWS_AS(prim_to_cons(Primitive<1>{0.0, {0.0}, 1.0}, kGas), AdmissibilityError);
}

TEST_CASE("cons_to_prim examples and errors") {
  auto q = cons_to_prim(State<1>{{1.0, 0.0, 2.5}}, kGas);
  CHECK(q.rho == 1.0);
  CHECK(q.vel[0] == 0.0);
  CHECK(q.p == doctest::Approx(1.0));
  auto q2 = cons_to_prim(State<2>{{1.0, 1.0, 0.0, 3.0}}, kGas);
  CHECK(q2.vel[0] == doctest::Approx(1.0));
  CHECK(q2.p == doctest::Approx(1.0));
  auto q3 = cons_to_prim(State<1>{{2.0, 0.0, 5.0}}, kGas);
  CHECK(q3.p == doctest::Approx(2.0));

  try {
    cons_to_prim(State<1>{{1.0, 0.0, -1.0}}, kGas);
    FAIL("expected AdmissibilityError");
  } catch (const AdmissibilityError& e) {
    CHECK(e.condition() == "p <= 0");
    REQUIRE(e.state().size() == 3);
    CHECK(e.state()[2] == -1.0);
  }
  CHECK_THROWS_AS(cons_to_prim(State<1>{{-1.0, 0.0, 1.0}}, kGas), AdmissibilityError);
}

TEST_CASE("round trip on random admissible states") {
  oracle::StateGen gen(11);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const Primitive<2> q{gen.uniform(0.01, 10.0), {gen.uniform(-5, 5), gen.uniform(-5, 5)},
                         gen.uniform(0.01, 10.0)};
    const auto u = prim_to_cons(q, kGas);
    const auto back = prim_to_cons(cons_to_prim(u, kGas), kGas);
    for (int m = 0; m < 4; ++m) {
      worst = std::max(worst, std::abs(back[m] - u[m]) / std::max(1.0, std::abs(u[m])));
    }
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("euler_flux examples") {
  check_state(euler_flux(prim_to_cons(Primitive<1>{1.0, {0.0}, 1.0}, kGas), Vector<1>{1.0}, kGas),
              {0.0, 1.0, 0.0});
  check_state(euler_flux(prim_to_cons(Primitive<2>{1.0, {1.0, 0.0}, 1.0}, kGas),
                         Vector<2>{1.0, 0.0}, kGas),
              {1.0, 2.0, 0.0, 4.0});  // (E + p) v with E = 3
  check_state(euler_flux(prim_to_cons(Primitive<2>{1.0, {0.0, 1.0}, 1.0}, kGas),
                         Vector<2>{1.0, 0.0}, kGas),
              {0.0, 1.0, 0.0, 0.0});
}

TEST_CASE("euler_flux matches the independent 1D flux") {
  oracle::StateGen gen(5);
  for (int k = 0; k < 1000; ++k) {
    const auto q = gen.prim1d();
    const auto f = euler_flux(prim_to_cons(Primitive<1>{q.rho, {q.u}, q.p}, kGas), Vector<1>{1.0}, kGas);
    const auto g = oracle::flux(oracle::cons(q));
    for (int m = 0; m < 3; ++m) CHECK(f[m] == doctest::Approx(g[m]).epsilon(1e-13));
  }
}

TEST_CASE("euler_flux rotational consistency in 2D") {
  oracle::StateGen gen(3);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Primitive<2> q{gen.uniform(0.1, 3), {gen.uniform(-2, 2), gen.uniform(-2, 2)},
                         gen.uniform(0.1, 3)};
    const double th = gen.uniform(0.0, 6.283185307179586);
    const double a = gen.uniform(0.0, 6.283185307179586);
    const double cs = std::cos(th), sn = std::sin(th);
    auto rot = [&](Vector<2> v) { return Vector<2>{cs * v[0] - sn * v[1], sn * v[0] + cs * v[1]}; };
    const Vector<2> n{std::cos(a), std::sin(a)};
    const Primitive<2> qr{q.rho, rot(q.vel), q.p};
    const auto f = euler_flux(prim_to_cons(q, kGas), n, kGas);
    const auto fr = euler_flux(prim_to_cons(qr, kGas), rot(n), kGas);
    const Vector<2> fm = rot({f[1], f[2]});
    worst = std::max({worst, std::abs(fr[0] - f[0]), std::abs(fr[3] - f[3]),
                      std::abs(fr[1] - fm[0]), std::abs(fr[2] - fm[1])});
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("davis_max_wavespeed examples and symmetries") {
  const auto rest = prim_to_cons(Primitive<1>{1.0, {0.0}, 1.0}, kGas);
  const auto sod_r = prim_to_cons(Primitive<1>{0.125, {0.0}, 0.1}, kGas);
  CHECK(davis_max_wavespeed(rest, rest, Vector<1>{1.0}, kGas) == doctest::Approx(1.18322).epsilon(1e-5));
  CHECK(davis_max_wavespeed(rest, sod_r, Vector<1>{1.0}, kGas) == doctest::Approx(std::sqrt(1.4)));
  const auto a = prim_to_cons(Primitive<2>{1.0, {2.0, 0.0}, 1.0}, kGas);
  const auto b = prim_to_cons(Primitive<2>{1.0, {-2.0, 0.0}, 1.0}, kGas);
  CHECK(davis_max_wavespeed(a, b, Vector<2>{1.0, 0.0}, kGas) ==
        doctest::Approx(2.0 + std::sqrt(1.4)));

  oracle::StateGen gen(9);
  for (int k = 0; k < 200; ++k) {
    const auto u = prim_to_cons(Primitive<2>{gen.uniform(0.1, 3), {gen.uniform(-2, 2), gen.uniform(-2, 2)}, gen.uniform(0.1, 3)}, kGas);
    const auto v = prim_to_cons(Primitive<2>{gen.uniform(0.1, 3), {gen.uniform(-2, 2), gen.uniform(-2, 2)}, gen.uniform(0.1, 3)}, kGas);
    const Vector<2> n{0.6, 0.8}, m{-0.6, -0.8};
    CHECK(davis_max_wavespeed(u, v, n, kGas) == davis_max_wavespeed(v, u, n, kGas));
    CHECK(davis_max_wavespeed(u, v, n, kGas) == doctest::Approx(davis_max_wavespeed(u, v, m, kGas)).epsilon(1e-15));
  }
}

TEST_CASE("invariant_membership examples and monotonicity") {
  const auto rest = prim_to_cons(Primitive<1>{1.0, {0.0}, 1.0}, kGas);
  CHECK(invariant_membership(rest, {0.5}, kGas).all());
  const auto m2 = invariant_membership(rest, {2.0}, kGas);
  CHECK(m2.rho_ok);
  CHECK(m2.e_ok);
  CHECK_FALSE(m2.s_ok);
  CHECK_FALSE(invariant_membership(State<1>{{-1.0, 0.0, 1.0}}, {0.0}, kGas).rho_ok);
  CHECK(entropy(rest, kGas) == doctest::Approx(1.0));

  oracle::StateGen gen(21);
  for (int k = 0; k < 1000; ++k) {
    const auto u = prim_to_cons(Primitive<1>{gen.uniform(0.1, 3), {gen.uniform(-2, 2)}, gen.uniform(0.1, 3)}, kGas);
    const double s0 = gen.uniform(0.0, 5.0);
    const double s1 = s0 + gen.uniform(0.0, 1.0);
    if (invariant_membership(u, {s1}, kGas).all()) CHECK(invariant_membership(u, {s0}, kGas).all());
  }
}

TEST_CASE("is_admissible rejects negative internal energy and NaN") {
  CHECK(is_admissible(State<1>{{1.0, 0.0, 2.5}}));
  CHECK_FALSE(is_admissible(State<1>{{1.0, 3.0, 2.5}}));
  CHECK_FALSE(is_admissible(State<1>{{0.0, 0.0, 2.5}}));
  CHECK_FALSE(is_admissible(State<1>{{1.0, 0.0, std::nan("")}}));
}

}
