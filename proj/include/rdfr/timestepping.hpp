#pragma once

// Explicit SSP time integration with an admissibility-guarded step.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdfr/euler.hpp"

namespace rdfr {

struct StepController {
  double cfl = 0.1;
  double t_end = 0.0;
  bool guard = true;
  int max_halvings = 20;
};

/// Shortens the step so that t + dt does not pass t_end.
inline double clip_dt(double dt, double t, double t_end) {
  return t + dt > t_end ? t_end - t : dt;
}

/// Shu-Osher form coefficients: stage k is a_k u^n + b_k (w + dt L(w)).
struct SspRk3Coefficients {
  static constexpr double a[3] = {0.0, 0.75, 1.0 / 3.0};
  static constexpr double b[3] = {1.0, 0.25, 2.0 / 3.0};
};

/// u <- u + dt L(u). `residual(in, out)` writes L(in) into out.
template <class T, class Residual>
void forward_euler_step(std::vector<T>& u, Residual&& residual, double dt) {
  std::vector<T> k(u.size());
  residual(u, k);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += dt * k[i];
}

/// Three-stage third-order SSP Runge-Kutta, every stage a convex combination
/// of the initial state and a forward Euler step.
template <class T, class Residual>
void ssp_rk3_step(std::vector<T>& u, Residual&& residual, double dt) {
  using C = SspRk3Coefficients;
  const std::vector<T> u0 = u;
  std::vector<T> k(u.size());
  for (int s = 0; s < 3; ++s) {
    residual(u, k);
    for (std::size_t i = 0; i < u.size(); ++i) {
      T euler = u[i] + dt * k[i];
      u[i] = s == 0 ? euler : C::a[s] * u0[i] + C::b[s] * euler;
    }
  }
}

class StabilityError : public std::runtime_error {
 public:
  StabilityError(int element, double dt, const std::string& detail)
      : std::runtime_error("time step rejected after repeated halving (dt = " +
                           std::to_string(dt) + ", element " +
                           std::to_string(element) + "): " + detail),
        element_(element) {}
  int element() const { return element_; }

 private:
  int element_;
};

struct AdvanceResult {
  double dt = 0.0;
  int halvings = 0;
  int repairs = 0;
};

/// Attempts `step(trial, dt)` and accepts it if `first_bad(trial)` returns
/// -1 and no AdmissibilityError was raised. On rejection `repair(trial, bad)`
/// may change how the step is taken (returning true), in which case the same
/// dt is retried; otherwise dt is halved and the step retried from the
/// original state, at most `max_halvings` times.
template <class T, class Step, class FirstBad>
AdvanceResult guarded_advance(
    std::vector<T>& u, double dt, Step&& step, FirstBad&& first_bad,
    int max_halvings = 20,
    const std::function<bool(const std::vector<T>&, int)>& repair = {}) {
  int bad = -1;
  int repairs = 0;
  std::string detail;
  for (int h = 0; h <= max_halvings;) {
    std::vector<T> trial = u;
    try {
      step(trial, dt);
      bad = first_bad(trial);
      detail = "post-step state outside rho > 0, e > 0";
    } catch (const AdmissibilityError& e) {
      bad = e.element() >= 0 ? e.element() : 0;
      detail = e.what();
    }
    if (bad < 0) {
      u = std::move(trial);
      return {dt, h, repairs};
    }
    if (repair && repair(trial, bad)) {
      ++repairs;
      continue;
    }
    if (h < max_halvings) dt *= 0.5;
    ++h;
  }
  throw StabilityError(bad, dt, detail);
}

}  // namespace rdfr
