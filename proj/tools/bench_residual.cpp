// Times the serial reference residual against the OpenMP one on a 1D and a
// 2D case and checks that both give identical results.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rdfr/cases.hpp"

using namespace rdfr;

namespace {

template <int Dim>
double seconds_per_eval(const CaseSetup<Dim>& s, Execution exec, int reps,
                        std::vector<State<Dim>>& out) {
  s.disc.residual(s.field.states, s.field.flags, out, exec);  // warm-up
  const auto t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < reps; ++k) s.disc.residual(s.field.states, s.field.flags, out, exec);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

template <int Dim>
bool bench(const char* label, const CaseConfig& cfg, int reps) {
  auto s = init_case<Dim>(cfg);
  s.disc.update_flags(s.field, effective_mode(cfg), SensorConfig{cfg.sensor_epsilon});
  std::vector<State<Dim>> a(s.field.states.size()), b(s.field.states.size());
  const double ts = seconds_per_eval(s, Execution::Serial, reps, a);
  const double tp = seconds_per_eval(s, Execution::Parallel, reps, b);
  const bool same = a == b;
  std::printf("%-28s %8zu nodes  serial %9.3f ms  parallel %9.3f ms  speedup %5.2f  %s\n", label,
              s.disc.num_points(), 1e3 * ts, 1e3 * tp, ts / tp, same ? "identical" : "MISMATCH");
  return same;
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 20;
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled\n");
#endif
  bool ok = true;

  CaseConfig sod;
  sod.id = CaseId::Sod;
  sod.order = 3;
  sod.dof = 4096;
  sod.scheme = SchemeChoice::RdFr;
  ok &= bench<1>("sod P3 rd-fr 4096", sod, reps * 10);

  CaseConfig vortex;
  vortex.id = CaseId::Vortex;
  vortex.order = 3;
  vortex.dof = 96;
  vortex.scheme = SchemeChoice::RD;
  ok &= bench<2>("vortex P3 rd 96^2", vortex, reps);
  vortex.scheme = SchemeChoice::FR;
  ok &= bench<2>("vortex P3 fr 96^2", vortex, reps);

  CaseConfig ffs;
  ffs.id = CaseId::Ffs;
  ffs.order = 3;
  ffs.h = 1.0 / 50.0;
  ffs.scheme = SchemeChoice::RdFr;
  ok &= bench<2>("ffs P3 rd-fr h=1/50", ffs, reps);
  return ok ? 0 : 1;
}
