// Analytic graph-field gallery used by the verification suites: affine
// graphs, hemispheric caps, embedded split profiles (straight and tilted),
// and an exact radial CMC graph over the hyperbolic plane.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "capgraph/base_metric.hpp"
#include "capgraph/exact_profiles.hpp"
#include "capgraph/graph_calculus.hpp"
#include "capgraph/grid.hpp"

namespace capgraph {

// Grid whose physical region is [a,b] x [c,d] with n_phys nodes per axis,
// padded by one ghost node on every side.
inline Grid2 grid_with_ghost(double a, double b, double c, double d, int nx_phys, int ny_phys) {
  if (nx_phys < 3 || ny_phys < 3) throw data_error("grid_with_ghost: need >= 3 physical nodes per axis");
  const double hx = (b - a) / (nx_phys - 1);
  const double hy = (d - c) / (ny_phys - 1);
  return Grid2(nx_phys + 2, ny_phys + 2, a - hx, b + hx, c - hy, d + hy);
}

inline GraphField field_from_function(const ModelDomain& domain, const Grid2& grid,
                                      const std::function<double(double, double)>& f,
                                      std::array<EdgeKind, 4> edges = {
                                          EdgeKind::artificial, EdgeKind::artificial,
                                          EdgeKind::artificial, EdgeKind::artificial}) {
  std::vector<double> u(grid.size());
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.ny; ++j) u[grid.idx(i, j)] = f(grid.x(i), grid.y(j));
  return GraphField(domain, grid, std::move(u), edges);
}

inline GraphField affine_field(double a0, double a1, double b, double L, int n) {
  ModelDomain dom = ModelDomain::strip(BaseMetric::euclidean(2), L);
  Grid2 g = grid_with_ghost(0.0, L, 0.0, L, n, n);
  return field_from_function(dom, g, [=](double x, double y) { return a0 * x + a1 * y + b; });
}

// Spherical cap u = m/H0 - sqrt((m/H0)^2 - |x|^2) over the window
// [-L, L]^2 of the Euclidean plane (m = 2): constant mean curvature H0.
inline GraphField hemisphere_field(double H0, double L, int n) {
  if (!(H0 > 0.0)) throw data_error("hemisphere_field: H0 must be positive");
  const double rho = 2.0 / H0;
  Grid2 g = grid_with_ghost(-L, L, -L, L, n, n);
  const double corner = std::hypot(L + g.hx, L + g.hy);
  if (!(corner < rho)) throw data_error("hemisphere_field: window leaves the cap");
  ModelDomain dom = ModelDomain::ball(BaseMetric::euclidean(2), rho);
  return field_from_function(dom, g, [=](double x, double y) {
    return rho - std::sqrt(rho * rho - x * x - y * y);
  });
}

// Split profile u(t, y) = profile(t) on the strip (0, T) x (0, width);
// the t-edges are the capillary boundary components.
inline GraphField strip_profile_field(const CapillaryProfile& p, double T, double width, int nx,
                                      int ny) {
  if (!(T > 0.0) || !(T < p.t_max)) throw data_error("strip_profile_field: need 0 < T < t_max");
  ModelDomain dom = ModelDomain::strip(BaseMetric::product_line(), T);
  Grid2 g = grid_with_ghost(0.0, T, 0.0, width, nx, ny);
  auto f = [&p](double t, double) { return profile_eval_extended(p, t).u; };
  return field_from_function(dom, g, f,
                             {EdgeKind::capillary, EdgeKind::capillary, EdgeKind::artificial,
                              EdgeKind::artificial});
}

// Tilted profile over an axis-aligned rectangle [tau0,tau1] x [s0,s1] that
// must sit inside the epigraph/slab region (ghost ring included).
inline GraphField tilted_field(const TiltedProfile& tp, double tau0, double tau1, double s0,
                               double s1, int nx, int ny) {
  ModelDomain dom = ModelDomain::half_space(BaseMetric::euclidean(2));
  Grid2 g = grid_with_ghost(tau0, tau1, s0, s1, nx, ny);
  const CapillaryProfile line = tp.straight();
  const double q = std::sqrt(1.0 + tp.a0 * tp.a0);
  auto f = [&](double tau, double s) {
    const double t = (tau - tp.a0 * s - tp.a1) / q;
    if (t < -0.5 * std::min(g.hx, g.hy)) throw data_error("tilted_field: rectangle leaves the region");
    return profile_eval_extended(line, t).u;
  };
  return field_from_function(dom, g, f);
}

// Exact rotationally symmetric CMC graph over the hyperbolic plane
// (curvature -kappa^2), |H| < kappa: the flux is u'/W = (H/kappa) tanh(kappa r/2),
// which integrates in closed form.
inline GraphField hyperbolic_radial_field(double kappa, double H, double r0, double r1,
                                          double theta1, int nx, int ny) {
  if (!(std::abs(H) < kappa)) throw data_error("hyperbolic_radial_field: needs |H| < kappa");
  const double a = H / kappa;
  const double b = std::sqrt(1.0 - a * a);
  ModelDomain dom = ModelDomain::ball(BaseMetric::hyperbolic(kappa), r1);
  Grid2 g = grid_with_ghost(r0, r1, 0.0, theta1, nx, ny);
  if (!(g.x0 >= kPolarInnerCutoff)) throw data_error("hyperbolic_radial_field: ghost ring hits r = 0");
  auto uofr = [=](double r) {
    return a == 0.0 ? 0.0 : (2.0 * a / (kappa * b)) * std::asinh((b / a) * std::cosh(0.5 * kappa * r));
  };
  const double shift = uofr(r0);
  return field_from_function(dom, g, [=](double r, double) { return uofr(r) - shift; });
}

}  // namespace capgraph
