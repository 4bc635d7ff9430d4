// Volume-growth parabolicity tests: the surface criterion
// int^inf ds / |Omega ∩ dB_s| = inf and the volume criterion
// int^inf s ds / |Omega ∩ B_s| = inf. Divergence is extrapolated by
// fitting the growth exponent on the last decade of samples.
#pragma once

#include <cmath>
#include <vector>

#include "capgraph/base_metric.hpp"
#include "capgraph/common.hpp"

namespace capgraph {

enum class GrowthMode { surface, volume };

struct ParabolicityReport {
  bool criterion_satisfied = false;  // negative verdict never claims non-parabolicity
  double partial_integral = 0.0;     // criterion integral over [s0, s_max]
  double tail_exponent = 0.0;        // fitted p in growth ~ c s^p on the last decade
  double exponent_threshold = 0.0;   // p <= threshold (+ fit tolerance) passes
  double s0 = 0.0, s_max = 0.0;
};

inline constexpr double kTailFitTol = 0.05;

// growth(s) returns |Omega ∩ B_s| (volume mode) or |Omega ∩ dB_s|
// (surface mode); it must be positive on [s0, s_max].
template <class Growth>
ParabolicityReport parabolicity_criterion(const ModelDomain& domain, Growth growth,
                                          GrowthMode mode, double s_max, double s0 = 1.0) {
  (void)domain;  // shapes at desk scale enter only through the growth data
  if (!(s_max > s0) || !(s0 > 0.0)) throw data_error("parabolicity: need 0 < s0 < s_max");

  const int n = 4000;  // log-spaced samples
  const double dlog = std::log(s_max / s0) / (n - 1);
  std::vector<double> s(n), g(n);
  for (int i = 0; i < n; ++i) {
    s[i] = s0 * std::exp(i * dlog);
    g[i] = growth(s[i]);
    if (!(g[i] > 0.0)) throw data_error("parabolicity: non-positive growth sample");
  }

  ParabolicityReport rep;
  rep.s0 = s0;
  rep.s_max = s_max;
  double integral = 0.0;
  auto integrand = [&](int i) { return mode == GrowthMode::surface ? 1.0 / g[i] : s[i] / g[i]; };
  for (int i = 0; i + 1 < n; ++i)
    integral += 0.5 * (s[i + 1] - s[i]) * (integrand(i) + integrand(i + 1));
  rep.partial_integral = integral;

  // Least-squares slope of log g against log s over s in [s_max/10, s_max].
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int i = 0; i < n; ++i) {
    if (s[i] < s_max / 10.0) continue;
    const double x = std::log(s[i]);
    const double y = std::log(g[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 2) throw data_error("parabolicity: not enough tail samples");
  rep.tail_exponent = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  rep.exponent_threshold = mode == GrowthMode::surface ? 1.0 : 2.0;
  rep.criterion_satisfied = rep.tail_exponent <= rep.exponent_threshold + kTailFitTol;
  return rep;
}

}  // namespace capgraph
