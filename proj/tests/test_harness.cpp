#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <vector>

#include "rdfr/cases.hpp"
#include "rdfr/harness.hpp"

using namespace rdfr;

TEST_SUITE("harness") {

TEST_CASE("sod initial data") {
  CaseConfig cfg;
  cfg.id = CaseId::Sod;
  cfg.order = 1;
  cfg.dof = 256;
  auto setup = init_case<1>(cfg);
  CHECK(setup.disc.num_elements() == 128);
  const auto& first = setup.field.states.front();
  const auto& last = setup.field.states.back();
  CHECK(first[0] == 1.0);
  CHECK(first[2] == doctest::Approx(2.5));
  CHECK(last[0] == 0.125);
  CHECK(last[2] == doctest::Approx(0.25));
  cfg.dof = 255;
  CHECK_THROWS_AS(init_case<1>(cfg), std::invalid_argument);
}

TEST_CASE("vortex initial data") {
  CaseConfig cfg;
  cfg.id = CaseId::Vortex;
  const Gas gas;
  const auto& v = cfg.vortex;
  const double phi0 = std::exp(1.0 / (2.0 * v.radius * v.radius));
  CHECK(phi0 == doctest::Approx(1.24884).epsilon(1e-5));
  const auto q = vortex_solution(v, gas, {0.0, 0.0}, 0.0);
  const double m2 = v.mach * v.mach;
  const double factor = 1.0 - v.strength * v.strength * m2 * 0.4 /
                                  (8.0 * std::numbers::pi * std::numbers::pi) * phi0 * phi0;
  CHECK(factor > 0.0);
  CHECK(q.p == doctest::Approx(std::pow(factor, 1.4 / 0.4) / (1.4 * m2)).epsilon(1e-12));
  CHECK(q.rho == doctest::Approx(std::pow(1.4 * m2 * q.p, 1.0 / 1.4)).epsilon(1e-12));
  CHECK(q.vel[0] == doctest::Approx(0.0));
  CHECK(q.vel[1] == doctest::Approx(1.0));
  // far field is the free stream
  const auto far = vortex_solution(v, gas, {9.9, 0.0}, 0.0);
  CHECK(far.rho == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(far.p == doctest::Approx(1.0 / (1.4 * m2)).epsilon(1e-6));
  // one full period returns to the start
  const auto back = vortex_solution(v, gas, {0.3, -1.2}, 20.0);
  const auto start = vortex_solution(v, gas, {0.3, -1.2}, 0.0);
  CHECK(back.rho == doctest::Approx(start.rho).epsilon(1e-12));
}

TEST_CASE("rmi initial data") {
  CaseConfig cfg;
  cfg.id = CaseId::Rmi;
  CHECK(initial_state_2d(cfg, {0.5, 1.0}).p == doctest::Approx(1.35));
  CHECK(initial_state_2d(cfg, {2.0, 1.0}).rho == doctest::Approx(1.0));
  CHECK(initial_state_2d(cfg, {2.0, 1.0}).p == doctest::Approx(0.1));
  CHECK(initial_state_2d(cfg, {3.5, 1.0}).rho == doctest::Approx(35.0));
  // interface at x = 3 + a sin(w y): y = pi/8 pushes it to 3.25
  CHECK(initial_state_2d(cfg, {3.2, std::numbers::pi / 8.0}).rho == doctest::Approx(1.0));
  CHECK(initial_state_2d(cfg, {3.3, std::numbers::pi / 8.0}).rho == doctest::Approx(35.0));
  cfg.h = 1.0 / 25.0;
  const auto mesh = build_case_mesh<2>(cfg);
  CHECK(mesh.lattice[0] == 250);
  CHECK(mesh.lattice[1] == 79);
}

TEST_CASE("error norms") {
  CaseConfig cfg;
  cfg.id = CaseId::Sod;
  cfg.order = 3;
  cfg.dof = 64;
  auto setup = init_case<1>(cfg);
  for (auto& s : setup.field.states) s = prim_to_cons(Primitive<1>{2.0, {0.0}, 1.0}, Gas{});
  const auto zero = error_norms<1>(setup.disc, setup.field, [](const Vector<1>&) { return 2.0; });
  CHECK(zero.l1 == 0.0);
  CHECK(zero.l2 == 0.0);
  CHECK(zero.linf == 0.0);
  const auto off = error_norms<1>(setup.disc, setup.field, [](const Vector<1>&) { return 1.75; });
  CHECK(off.l1 == doctest::Approx(0.25));
  CHECK(off.l2 == doctest::Approx(0.25));
  CHECK(off.linf == doctest::Approx(0.25));
}

TEST_CASE("reference profiles") {
  CaseConfig cfg;
  cfg.id = CaseId::Sod;
  std::vector<double> xs;
  for (int k = 0; k < 512; ++k) xs.push_back((k + 0.5) / 512.0);
  const auto prof = reference_profile(cfg, 0.2, xs);
  // left star plateau lies between the rarefaction tail and the contact
  CHECK(prof[300].rho == doctest::Approx(0.42632).epsilon(1e-5));
  CHECK(prof[380].rho == doctest::Approx(0.26557).epsilon(1e-5));
  const auto init = reference_profile(cfg, 0.0, xs);
  CHECK(init[10].rho == 1.0);
  CHECK(init[500].rho == 0.125);
  cfg.id = CaseId::Vortex;
  CHECK_THROWS_AS(reference_profile(cfg, 0.1, xs), std::invalid_argument);
}

TEST_CASE("settings round trip and parsing") {
  const auto kv = parse_key_value(
      "# comment\ncase = shu_osher\norder = 2\n--dof = 300\nscheme = rd-fr   # inline\n"
      "custom-states = 1:0:1;0.125:0:0.1\n");
  CHECK(kv.at("case") == "shu_osher");
  CHECK(kv.at("dof") == "300");
  CHECK(kv.at("scheme") == "rd-fr");
  CaseConfig cfg;
  apply_settings(cfg, kv);
  CHECK(cfg.id == CaseId::ShuOsher);
  CHECK(cfg.order == 2);
  CHECK(cfg.scheme == SchemeChoice::RdFr);
  REQUIRE(cfg.custom.states.size() == 2);
  CHECK(cfg.custom.states[1].p == doctest::Approx(0.1));

  CaseConfig again;
  apply_settings(again, to_settings(cfg));
  CHECK(to_settings(again) == to_settings(cfg));

  CHECK_THROWS_AS(apply_settings(cfg, {{"no-such-key", "1"}}), std::invalid_argument);
  CHECK_THROWS_AS(apply_settings(cfg, {{"order", "abc"}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_case("moon"), std::invalid_argument);
  CHECK(effective_t_end(cfg) == doctest::Approx(0.18));
}

TEST_CASE("convergence rate") {
  CHECK(convergence_rate({0.1, 0.05, 0.025}, {1.0, 0.25, 0.0625}) == doctest::Approx(2.0));
  CHECK(convergence_rate({1.0 / 256, 1.0 / 512, 1.0 / 1024, 1.0 / 2048}, {4.0, 2.0, 1.0, 0.5}) ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(convergence_rate({1, 2}, {1, 2}), std::invalid_argument);
}

TEST_CASE("vortex without strength stays exact") {
  CaseConfig cfg;
  cfg.id = CaseId::Vortex;
  cfg.order = 2;
  cfg.dof = 24;
  cfg.vortex.strength = 0.0;
  cfg.t_end = 0.5;
  const auto r = run_case<2>(cfg);
  CHECK(vortex_error(cfg, r.disc, r.field, r.t) <= 1e-12);
}

TEST_CASE("sod run reaches t_end admissibly and deterministically") {
  CaseConfig cfg;
  cfg.id = CaseId::Sod;
  cfg.order = 3;
  cfg.dof = 256;
  cfg.scheme = SchemeChoice::RdFr;
  const auto a = run_case<1>(cfg);
  CHECK(a.t == 0.2);
  CHECK(a.inadmissible_nodes == 0);
  CHECK(a.history.size() == static_cast<std::size_t>(a.steps));
  CHECK(a.metadata.at("solution-points") == "gauss-legendre");
  cfg.exec = Execution::Serial;
  const auto b = run_case<1>(cfg);
  CHECK(a.field.states == b.field.states);
  const auto err = error_norms<1>(a.disc, a.field, reference_density_1d(cfg));
  CHECK(err.l1 < 2e-2);
}

TEST_CASE("shu-osher stays admissible") {
  CaseConfig cfg;
  cfg.id = CaseId::ShuOsher;
  cfg.order = 3;
  cfg.dof = 1024;
  cfg.scheme = SchemeChoice::RdFr;
  const auto r = run_case<1>(cfg);
  CHECK(r.t == doctest::Approx(0.18));
  CHECK(r.inadmissible_nodes == 0);
}

TEST_CASE("run_and_write produces the output files") {
  const auto dir = std::filesystem::temp_directory_path() / "rdfr_harness_test";
  std::filesystem::remove_all(dir);
  CaseConfig cfg;
  cfg.id = CaseId::Vortex;
  cfg.order = 1;
  cfg.dof = 20;
  cfg.t_end = 0.2;
  cfg.output.dir = dir.string();
  cfg.output.snapshots = 1;
  const auto meta = run_and_write(cfg);
  CHECK(meta.count("error-vortex-l2") == 1);
  for (const char* f : {"solution.csv", "solution.vtk", "metadata.txt", "dt_history.csv"}) {
    CHECK(std::filesystem::exists(dir / f));
  }
  std::ifstream vtk(dir / "solution.vtk");
  std::string first;
  std::getline(vtk, first);
  CHECK(first.rfind("# vtk DataFile", 0) == 0);
  std::filesystem::remove_all(dir);
}

}
