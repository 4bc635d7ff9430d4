// Adaptive embedded Runge-Kutta 4(5), Cash-Karp coefficients.
// States are small fixed-size arrays; the stepper records every accepted
// step so callers can use the trajectory directly.
#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "capgraph/common.hpp"

namespace capgraph {

template <std::size_t N>
struct OdePath {
  std::vector<double> x;
  std::vector<std::array<double, N>> y;
  bool stopped_early = false;  // a stop predicate fired before x_end
};

namespace rk_detail {
inline constexpr double a2 = 1.0 / 5, a3 = 3.0 / 10, a4 = 3.0 / 5, a5 = 1.0, a6 = 7.0 / 8;
inline constexpr double b21 = 1.0 / 5;
inline constexpr double b31 = 3.0 / 40, b32 = 9.0 / 40;
inline constexpr double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
inline constexpr double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27, b54 = 35.0 / 27;
inline constexpr double b61 = 1631.0 / 55296, b62 = 175.0 / 512, b63 = 575.0 / 13824,
                        b64 = 44275.0 / 110592, b65 = 253.0 / 4096;
inline constexpr double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594, c6 = 512.0 / 1771;
inline constexpr double d1 = c1 - 2825.0 / 27648, d3 = c3 - 18575.0 / 48384,
                        d4 = c4 - 13525.0 / 55296, d5 = -277.0 / 14336, d6 = c6 - 1.0 / 4;
}  // namespace rk_detail

// Integrates y' = rhs(x, y) from x0 to x_end (x_end < x0 integrates
// backwards). stop(x, y) is evaluated after each accepted step; returning
// true ends the integration at that state.
template <std::size_t N, class Rhs, class Stop>
OdePath<N> rk45_integrate(Rhs rhs, double x0, std::array<double, N> y0, double x_end,
                          double rtol, double atol, Stop stop,
                          std::size_t max_steps = 2000000) {
  using namespace rk_detail;
  OdePath<N> path;
  path.x.push_back(x0);
  path.y.push_back(y0);
  const double dir = x_end >= x0 ? 1.0 : -1.0;
  double x = x0;
  std::array<double, N> y = y0;
  double h = dir * std::max(1e-12, std::abs(x_end - x0) / 100.0);

  std::array<double, N> k1, k2, k3, k4, k5, k6, yt, y5;
  for (std::size_t step = 0; step < max_steps; ++step) {
    if (dir * (x - x_end) >= 0.0) return path;
    if (dir * (x + h - x_end) > 0.0) h = x_end - x;

    k1 = rhs(x, y);
    for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * b21 * k1[i];
    k2 = rhs(x + a2 * h, yt);
    for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (b31 * k1[i] + b32 * k2[i]);
    k3 = rhs(x + a3 * h, yt);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (b41 * k1[i] + b42 * k2[i] + b43 * k3[i]);
    k4 = rhs(x + a4 * h, yt);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (b51 * k1[i] + b52 * k2[i] + b53 * k3[i] + b54 * k4[i]);
    k5 = rhs(x + a5 * h, yt);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (b61 * k1[i] + b62 * k2[i] + b63 * k3[i] + b64 * k4[i] + b65 * k5[i]);
    k6 = rhs(x + a6 * h, yt);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      y5[i] = y[i] + h * (c1 * k1[i] + c3 * k3[i] + c4 * k4[i] + c6 * k6[i]);
      const double e = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i]);
      const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(e) / sc);
    }

    if (err <= 1.0) {
      x += h;
      y = y5;
      path.x.push_back(x);
      path.y.push_back(y);
      if (stop(x, y)) {
        path.stopped_early = true;
        return path;
      }
    }
    const double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::min(5.0, std::max(0.2, fac));
    if (std::abs(h) < 1e-15 * (std::abs(x) + 1.0))
      throw convergence_error("rk45: step size underflow");
  }
  throw convergence_error("rk45: max step count exceeded");
}

template <std::size_t N, class Rhs>
OdePath<N> rk45_integrate(Rhs rhs, double x0, std::array<double, N> y0, double x_end,
                          double rtol, double atol) {
  return rk45_integrate<N>(rhs, x0, y0, x_end, rtol, atol,
                           [](double, const std::array<double, N>&) { return false; });
}

}  // namespace capgraph
