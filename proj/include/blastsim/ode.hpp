#ifndef BLASTSIM_ODE_HPP
#define BLASTSIM_ODE_HPP

/**
 * @file ode.hpp
 * @brief Adaptive Dormand–Prince 5(4) integration with root-localized event
 *        detection, for small fixed-size state vectors.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <functional>
#include <stdexcept>
#include <vector>

namespace blastsim::ode {

struct Tolerances {
  double rel = 1e-9;
  double abs = 1e-12;
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double t) : std::runtime_error(what), t(t) {}
  double t;
};

template <std::size_t N>
using State = std::array<double, N>;

/// One accepted step of the integration, reported to the observer.
template <std::size_t N>
struct Step {
  double t0, t1;
  State<N> y0, y1;
};

namespace detail {

// Dormand-Prince coefficients
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace detail

/**
 * Integrates dy/dt = f(t, y) from t0 to t1.
 *
 * The observer is called after every accepted step and may return false to
 * stop the integration (e.g. once an event has been located); the return
 * value of integrate is the time at which integration stopped.
 */
template <std::size_t N, class F, class Observer>
double integrate(F&& f, State<N>& y, double t0, double t1, const Tolerances& tol,
                 Observer&& observer, double max_step = 0.0) {
  using namespace detail;
  if (t1 <= t0) return t0;

  const double hmax = max_step > 0.0 ? max_step : t1 - t0;
  double t = t0;
  double h = std::min(hmax, (t1 - t0) / 100.0);
  State<N> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
  f(t, y, k1);
  const double hmin_floor = 1e-15;

  while (t < t1) {
    if (t + h > t1) h = t1 - t;
    bool accepted = false;
    while (!accepted) {
      auto stage = [&](State<N>& out, auto... terms) {
        for (std::size_t i = 0; i < N; ++i) {
          double acc = 0.0;
          ((acc += terms.first * terms.second[i]), ...);
          out[i] = y[i] + h * acc;
        }
      };
      stage(ytmp, std::pair{a21, k1});
      f(t + c2 * h, ytmp, k2);
      stage(ytmp, std::pair{a31, k1}, std::pair{a32, k2});
      f(t + c3 * h, ytmp, k3);
      stage(ytmp, std::pair{a41, k1}, std::pair{a42, k2}, std::pair{a43, k3});
      f(t + c4 * h, ytmp, k4);
      stage(ytmp, std::pair{a51, k1}, std::pair{a52, k2}, std::pair{a53, k3},
            std::pair{a54, k4});
      f(t + c5 * h, ytmp, k5);
      stage(ytmp, std::pair{a61, k1}, std::pair{a62, k2}, std::pair{a63, k3},
            std::pair{a64, k4}, std::pair{a65, k5});
      f(t + h, ytmp, k6);
      stage(ynew, std::pair{b1, k1}, std::pair{b3, k3}, std::pair{b4, k4},
            std::pair{b5, k5}, std::pair{b6, k6});
      f(t + h, ynew, k7);

      double err = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                               e6 * k6[i] + e7 * k7[i]);
        const double sc = tol.abs + tol.rel * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
        err += (ei / sc) * (ei / sc);
      }
      err = std::sqrt(err / N);

      if (err <= 1.0 || h <= hmin_floor * std::max(1.0, std::fabs(t))) {
        Step<N> step{t, t + h, y, ynew};
        t += h;
        y = ynew;
        k1 = k7;  // FSAL
        double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h = std::min(hmax, h * std::clamp(fac, 0.2, 5.0));
        accepted = true;
        if (!observer(step)) return t;
      } else {
        h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        if (h <= hmin_floor * std::max(1.0, std::fabs(t)))
          throw IntegrationError("step size underflow", t);
      }
    }
  }
  return t;
}

/**
 * Locates a root of `g` inside an accepted step by bisection on re-integrated
 * sub-steps of the step's left state. `g(t, y)` must change sign across the
 * step. Returns (t*, y*) with t* resolved to `t_tol`.
 */
template <std::size_t N, class F, class G>
std::pair<double, State<N>> locate_event(F&& f, const Step<N>& step, G&& g,
                                         const Tolerances& tol, double t_tol) {
  double lo = step.t0, hi = step.t1;
  State<N> ylo = step.y0;
  double glo = g(lo, ylo);
  State<N> yhit = step.y1;
  while (hi - lo > t_tol) {
    const double mid = 0.5 * (lo + hi);
    State<N> ym = ylo;
    integrate<N>(f, ym, lo, mid, tol, [](const Step<N>&) { return true; });
    const double gm = g(mid, ym);
    if ((glo <= 0.0) == (gm <= 0.0)) {
      lo = mid;
      ylo = ym;
      glo = gm;
    } else {
      hi = mid;
      yhit = ym;
    }
  }
  return {hi, yhit};
}

}  // namespace blastsim::ode

#endif
