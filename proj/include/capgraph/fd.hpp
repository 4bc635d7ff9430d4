// Finite-difference stencils: second-order first/second derivatives on
// uniform grids (central in the interior, one-sided at the ends) and
// arbitrary-node weights for higher-order sampling of analytic functions.
#pragma once

#include <cstddef>
#include <vector>

#include "capgraph/common.hpp"

namespace capgraph {

// First derivative at index i of a uniformly spaced strided sequence.
inline double fd_d1(const double* f, int i, int n, int stride, double h) {
  const double* p = f + static_cast<std::ptrdiff_t>(i) * stride;
  if (i >= 1 && i <= n - 2) return (p[stride] - p[-stride]) / (2.0 * h);
  if (i == 0) return (-3.0 * p[0] + 4.0 * p[stride] - p[2 * stride]) / (2.0 * h);
  return (3.0 * p[0] - 4.0 * p[-stride] + p[-2 * stride]) / (2.0 * h);
}

// Second derivative, same stencil policy.
inline double fd_d2(const double* f, int i, int n, int stride, double h) {
  const double* p = f + static_cast<std::ptrdiff_t>(i) * stride;
  const double h2 = h * h;
  if (i >= 1 && i <= n - 2) return (p[stride] - 2.0 * p[0] + p[-stride]) / h2;
  if (i == 0)
    return (2.0 * p[0] - 5.0 * p[stride] + 4.0 * p[2 * stride] - p[3 * stride]) / h2;
  return (2.0 * p[0] - 5.0 * p[-stride] + 4.0 * p[-2 * stride] - p[-3 * stride]) / h2;
}

// Weights w_j with sum_j w_j f(x_j) ~ f^(d)(x0), exact for polynomials of
// degree < |xs|. Classic divided-difference recursion (Fornberg).
inline std::vector<double> fd_weights(double x0, const std::vector<double>& xs, int d) {
  const int n = static_cast<int>(xs.size());
  if (n < d + 1) throw data_error("fd_weights: stencil too short for derivative order");
  // c[k][j]: weight of node j for derivative order k.
  std::vector<std::vector<double>> c(d + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = xs[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = i < d ? i : d;
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[k][j] = ((xs[i] - x0) * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = (xs[i] - x0) * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c[d];
}

}  // namespace capgraph
