// Tiny dense helpers: Thomas algorithm for tridiagonal systems and
// symmetric 2x2 inverses used by the grid tensor code.
#pragma once

#include <cmath>
#include <vector>

#include "capgraph/common.hpp"

namespace capgraph {

// Solves the tridiagonal system with diagonals (lower a, main b, upper c)
// and right-hand side d; overwrites d with the solution. a[0] and
// c[n-1] are ignored.
inline void solve_tridiag(const std::vector<double>& a, std::vector<double> b,
                          const std::vector<double>& c, std::vector<double>& d) {
  const std::size_t n = b.size();
  if (a.size() != n || c.size() != n || d.size() != n)
    throw data_error("solve_tridiag: inconsistent band sizes");
  for (std::size_t i = 1; i < n; ++i) {
    if (b[i - 1] == 0.0) throw data_error("solve_tridiag: zero pivot");
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  if (b[n - 1] == 0.0) throw data_error("solve_tridiag: zero pivot");
  d[n - 1] /= b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) d[i] = (d[i] - c[i] * d[i + 1]) / b[i];
}

// Symmetric 2x2 matrix stored as (a00, a01, a11).
struct Sym2 {
  double a00 = 0.0, a01 = 0.0, a11 = 0.0;
  double det() const { return a00 * a11 - a01 * a01; }
  Sym2 inverse() const {
    const double dt = det();
    if (dt == 0.0) throw data_error("Sym2: singular matrix");
    return {a11 / dt, -a01 / dt, a00 / dt};
  }
  // Quadratic form a^ij x_i y_j.
  double form(double x0, double x1, double y0, double y1) const {
    return a00 * x0 * y0 + a01 * (x0 * y1 + x1 * y0) + a11 * x1 * y1;
  }
};

// Frobenius-type contraction ginv^ik ginv^jl T_ij S_kl for symmetric T, S.
inline double contract2(const Sym2& ginv, const Sym2& T, const Sym2& S) {
  // (ginv T)^i_j then trace against (ginv S).
  const double t00 = ginv.a00 * T.a00 + ginv.a01 * T.a01;
  const double t01 = ginv.a00 * T.a01 + ginv.a01 * T.a11;
  const double t10 = ginv.a01 * T.a00 + ginv.a11 * T.a01;
  const double t11 = ginv.a01 * T.a01 + ginv.a11 * T.a11;
  const double s00 = ginv.a00 * S.a00 + ginv.a01 * S.a01;
  const double s01 = ginv.a00 * S.a01 + ginv.a01 * S.a11;
  const double s10 = ginv.a01 * S.a00 + ginv.a11 * S.a01;
  const double s11 = ginv.a01 * S.a01 + ginv.a11 * S.a11;
  return t00 * s00 + t01 * s10 + t10 * s01 + t11 * s11;
}

}  // namespace capgraph
