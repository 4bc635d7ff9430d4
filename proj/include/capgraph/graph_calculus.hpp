// Discrete graph calculus over a base metric: for a nodal field u on a
// rectangular chart grid, computes Du, W, the graph metric g = sigma + du x du
// and its inverse, the covariant Hessian, second fundamental form, mean
// curvature, the graph Laplacian and the weighted operator L_W.
//
// Grid convention: the outermost ring of nodes is a ghost layer extending
// the chart past the physical region, so that every physical node (including
// physical-boundary ones) has central second-order stencils available.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "capgraph/base_metric.hpp"
#include "capgraph/common.hpp"
#include "capgraph/fd.hpp"
#include "capgraph/grid.hpp"
#include "capgraph/linalg.hpp"

namespace capgraph {

enum class EdgeKind { artificial, capillary };

struct GraphTensors {
  int nx = 0, ny = 0;
  // one value per node, flat index i*ny + j
  std::vector<double> du0, du1;        // u_i (chart covector)
  std::vector<double> ur0, ur1;        // u^i = sigma^ij u_j
  std::vector<double> W;               // sqrt(1 + sigma^ij u_i u_j)
  std::vector<double> grad2;           // |grad u|_g^2 = (W^2-1)/W^2
  std::vector<double> g00, g01, g11;   // graph metric
  std::vector<double> gi00, gi01, gi11;
  std::vector<double> h00, h01, h11;   // covariant Hessian u_ij
  std::vector<double> II00, II01, II11;
  std::vector<double> H;               // g^ij II_ij
  std::vector<double> sqdet_sigma;     // base area element
  std::vector<double> sig00, sig11;    // base metric (diagonal models)
  std::vector<double> sigi00, sigi11;
  std::vector<double> ric_du_du;       // Ric_sigma(Du, Du), closed form per model
};

namespace gc_detail {

// First derivative along an axis: central where both neighbors exist,
// second-order one-sided on the outermost ring.
inline double d1_axis(const std::vector<double>& f, const Grid2& g, int i, int j, int axis) {
  const int n = axis == 0 ? g.nx : g.ny;
  const int p = axis == 0 ? i : j;
  const int stride = axis == 0 ? g.ny : 1;
  const double h = axis == 0 ? g.hx : g.hy;
  const int c = g.idx(i, j);
  if (p > 0 && p < n - 1) return (f[c + stride] - f[c - stride]) / (2 * h);
  if (p == 0) return (-3 * f[c] + 4 * f[c + stride] - f[c + 2 * stride]) / (2 * h);
  return (3 * f[c] - 4 * f[c - stride] + f[c - 2 * stride]) / (2 * h);
}

inline double d2_axis(const std::vector<double>& f, const Grid2& g, int i, int j, int axis) {
  const int n = axis == 0 ? g.nx : g.ny;
  const int p = axis == 0 ? i : j;
  const int stride = axis == 0 ? g.ny : 1;
  const double h = axis == 0 ? g.hx : g.hy;
  const int c = g.idx(i, j);
  if (p > 0 && p < n - 1) return (f[c + stride] - 2 * f[c] + f[c - stride]) / (h * h);
  if (p == 0) return (2 * f[c] - 5 * f[c + stride] + 4 * f[c + 2 * stride] - f[c + 3 * stride]) / (h * h);
  return (2 * f[c] - 5 * f[c - stride] + 4 * f[c - 2 * stride] - f[c - 3 * stride]) / (h * h);
}

// Fills the ghost ring of a nodal array by polynomial continuation of the
// interior values. Quantities derived node-wise from such arrays then carry
// a discretization-error profile that varies smoothly across the ring;
// differencing across a change of stencil kind would instead meet a jump in
// the error constant, which costs one order per derivative taken.
inline void extend_to_ghosts(std::vector<double>& f, const Grid2& g) {
  auto fill = [&f](int c, int stride, int avail) {
    switch (std::min(4, avail)) {
      case 4:
        f[c] = 4 * f[c + stride] - 6 * f[c + 2 * stride] + 4 * f[c + 3 * stride] -
               f[c + 4 * stride];
        return;
      case 3:
        f[c] = 3 * f[c + stride] - 3 * f[c + 2 * stride] + f[c + 3 * stride];
        return;
      case 2:
        f[c] = 2 * f[c + stride] - f[c + 2 * stride];
        return;
      default:
        f[c] = f[c + stride];
    }
  };
  for (int j = 1; j < g.ny - 1; ++j) {
    fill(g.idx(0, j), g.ny, g.nx - 2);
    fill(g.idx(g.nx - 1, j), -g.ny, g.nx - 2);
  }
  for (int i = 0; i < g.nx; ++i) {
    fill(g.idx(i, 0), 1, g.ny - 2);
    fill(g.idx(i, g.ny - 1), -1, g.ny - 2);
  }
}

}  // namespace gc_detail

struct GraphField {
  ModelDomain domain;
  Grid2 grid;
  std::vector<double> u;
  // edge flags in order x-low, x-high, y-low, y-high
  std::array<EdgeKind, 4> edges = {EdgeKind::artificial, EdgeKind::artificial,
                                   EdgeKind::artificial, EdgeKind::artificial};
  GraphTensors tensors;

  GraphField(ModelDomain d, Grid2 g, std::vector<double> values,
             std::array<EdgeKind, 4> edge_kinds = {EdgeKind::artificial, EdgeKind::artificial,
                                                   EdgeKind::artificial, EdgeKind::artificial});

  bool ghost(int i, int j) const {
    return i == 0 || i == grid.nx - 1 || j == 0 || j == grid.ny - 1;
  }
  // physical-boundary ring (innermost non-ghost ring along a capillary edge)
  bool on_capillary_boundary(int i, int j) const {
    if (ghost(i, j)) return false;
    if (edges[0] == EdgeKind::capillary && i == 1) return true;
    if (edges[1] == EdgeKind::capillary && i == grid.nx - 2) return true;
    if (edges[2] == EdgeKind::capillary && j == 1) return true;
    if (edges[3] == EdgeKind::capillary && j == grid.ny - 2) return true;
    return false;
  }
};

inline GraphTensors build_tensors(const ModelDomain& domain, const Grid2& grid,
                                  const std::vector<double>& u) {
  using namespace gc_detail;
  if (domain.base.dim != 2) throw data_error("graph field: chart must be 2-dimensional");
  if (static_cast<int>(u.size()) != grid.size()) throw data_error("graph field: u size mismatch");
  for (double v : u)
    if (!std::isfinite(v)) throw data_error("graph field: non-finite node value");

  GraphTensors T;
  T.nx = grid.nx;
  T.ny = grid.ny;
  const int n = grid.size();
  for (auto* v : {&T.du0, &T.du1, &T.ur0, &T.ur1, &T.W, &T.grad2, &T.g00, &T.g01, &T.g11,
                  &T.gi00, &T.gi01, &T.gi11, &T.h00, &T.h01, &T.h11, &T.II00, &T.II01, &T.II11,
                  &T.H, &T.sqdet_sigma, &T.sig00, &T.sig11, &T.sigi00, &T.sigi11, &T.ric_du_du})
    v->assign(n, 0.0);

  // Centered first derivatives on the physical nodes (every one has both
  // neighbors thanks to the ghost ring); the ring itself gets the smooth
  // continuation of those values rather than one-sided stencils.
  for (int i = 1; i < grid.nx - 1; ++i)
    for (int j = 1; j < grid.ny - 1; ++j) {
      const int c = grid.idx(i, j);
      T.du0[c] = d1_axis(u, grid, i, j, 0);
      T.du1[c] = d1_axis(u, grid, i, j, 1);
    }
  extend_to_ghosts(T.du0, grid);
  extend_to_ghosts(T.du1, grid);

  const BaseMetric& base = domain.base;
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.ny; ++j) {
      const int c = grid.idx(i, j);
      const double pt[2] = {grid.x(i), grid.y(j)};
      const MetricData md = metric_eval(base, pt);

      const double u0 = T.du0[c], u1 = T.du1[c];
      const double s00 = md.sigma[0][0], s11 = md.sigma[1][1];
      const double si00 = md.sigma_inv[0][0], si11 = md.sigma_inv[1][1];
      T.sig00[c] = s00;
      T.sig11[c] = s11;
      T.sigi00[c] = si00;
      T.sigi11[c] = si11;
      T.sqdet_sigma[c] = md.sqrt_det;

      const double r0 = si00 * u0, r1 = si11 * u1;  // u^i
      T.ur0[c] = r0;
      T.ur1[c] = r1;
      const double du2 = r0 * u0 + r1 * u1;  // |Du|^2_sigma
      const double W = std::sqrt(1.0 + du2);
      T.W[c] = W;
      T.grad2[c] = du2 / (W * W);

      T.g00[c] = s00 + u0 * u0;
      T.g01[c] = u0 * u1;
      T.g11[c] = s11 + u1 * u1;
      const double W2 = W * W;
      T.gi00[c] = si00 - r0 * r0 / W2;
      T.gi01[c] = -r0 * r1 / W2;
      T.gi11[c] = si11 - r1 * r1 / W2;

      // covariant Hessian: symmetrized cross term, direct second differences
      // on the diagonal, minus Christoffel contraction
      const double p00 = d2_axis(u, grid, i, j, 0);
      const double p11 = d2_axis(u, grid, i, j, 1);
      const double p01 = 0.5 * (d1_axis(T.du1, grid, i, j, 0) + d1_axis(T.du0, grid, i, j, 1));
      T.h00[c] = p00 - md.gamma[0][0][0] * u0 - md.gamma[1][0][0] * u1;
      T.h01[c] = p01 - md.gamma[0][0][1] * u0 - md.gamma[1][0][1] * u1;
      T.h11[c] = p11 - md.gamma[0][1][1] * u0 - md.gamma[1][1][1] * u1;

      T.II00[c] = T.h00[c] / W;
      T.II01[c] = T.h01[c] / W;
      T.II11[c] = T.h11[c] / W;
      T.H[c] = T.gi00[c] * T.II00[c] + 2.0 * T.gi01[c] * T.II01[c] + T.gi11[c] * T.II11[c];

      // Ric_sigma(Du, Du): zero on flat models; the hyperbolic plane has
      // Ric = -kappa^2 sigma.
      if (base.kind == MetricKind::hyperbolic) T.ric_du_du[c] = -base.kappa * base.kappa * du2;
    }
  return T;
}

inline GraphField::GraphField(ModelDomain d, Grid2 g, std::vector<double> values,
                              std::array<EdgeKind, 4> edge_kinds)
    : domain(std::move(d)), grid(g), u(std::move(values)), edges(edge_kinds) {
  tensors = build_tensors(domain, grid, u);
}

inline const GraphTensors& compute_tensors(const GraphField& field) { return field.tensors; }

// Delta_g phi = g^ij phi_ij - phi_k u^k H / W with the covariant Hessian
// of the base metric; exact nodal identity Delta_g u = H / W.
inline std::vector<double> graph_laplacian(const GraphField& field, const std::vector<double>& phi) {
  using namespace gc_detail;
  const Grid2& g = field.grid;
  const GraphTensors& T = field.tensors;
  if (static_cast<int>(phi.size()) != g.size()) throw data_error("graph_laplacian: phi size mismatch");

  // Same derivative policy as the tensor builder (centered + ghost
  // continuation), so that graph_laplacian(u) reproduces the tensor algebra
  // of build_tensors node for node.
  std::vector<double> p0(g.size()), p1(g.size()), out(g.size(), 0.0);
  for (int i = 1; i < g.nx - 1; ++i)
    for (int j = 1; j < g.ny - 1; ++j) {
      const int c = g.idx(i, j);
      p0[c] = d1_axis(phi, g, i, j, 0);
      p1[c] = d1_axis(phi, g, i, j, 1);
    }
  extend_to_ghosts(p0, g);
  extend_to_ghosts(p1, g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      const int c = g.idx(i, j);
      const double pt[2] = {g.x(i), g.y(j)};
      const MetricData md = metric_eval(field.domain.base, pt);
      const double q00 = d2_axis(phi, g, i, j, 0) - md.gamma[0][0][0] * p0[c] - md.gamma[1][0][0] * p1[c];
      const double q11 = d2_axis(phi, g, i, j, 1) - md.gamma[0][1][1] * p0[c] - md.gamma[1][1][1] * p1[c];
      const double q01 = 0.5 * (d1_axis(p1, g, i, j, 0) + d1_axis(p0, g, i, j, 1)) -
                         md.gamma[0][0][1] * p0[c] - md.gamma[1][0][1] * p1[c];
      const double trace = T.gi00[c] * q00 + 2.0 * T.gi01[c] * q01 + T.gi11[c] * q11;
      const double drift = (p0[c] * T.ur0[c] + p1[c] * T.ur1[c]) * T.H[c] / T.W[c];
      out[c] = trace - drift;
    }
  return out;
}

// L_W phi = Delta_g phi - 2 <grad W / W, grad phi>_g.
inline std::vector<double> lw_operator(const GraphField& field, const std::vector<double>& phi) {
  using namespace gc_detail;
  const Grid2& g = field.grid;
  const GraphTensors& T = field.tensors;
  std::vector<double> out = graph_laplacian(field, phi);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      const int c = g.idx(i, j);
      const double w0 = d1_axis(T.W, g, i, j, 0);
      const double w1 = d1_axis(T.W, g, i, j, 1);
      const double f0 = d1_axis(phi, g, i, j, 0);
      const double f1 = d1_axis(phi, g, i, j, 1);
      const double inner = T.gi00[c] * w0 * f0 + T.gi01[c] * (w0 * f1 + w1 * f0) + T.gi11[c] * w1 * f1;
      out[c] -= 2.0 * inner / T.W[c];
    }
  return out;
}

// Largest deviation of the nodal mean curvature from its physical-node
// median; used to decide whether a field genuinely solves the CMC equation.
struct CmcCheck {
  double H_ref = 0.0;
  double max_dev = 0.0;
};

inline CmcCheck cmc_deviation(const GraphField& field) {
  const Grid2& g = field.grid;
  std::vector<double> vals;
  vals.reserve(g.size());
  for (int i = 1; i < g.nx - 1; ++i)
    for (int j = 1; j < g.ny - 1; ++j) vals.push_back(field.tensors.H[g.idx(i, j)]);
  std::vector<double> sorted = vals;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  CmcCheck out;
  out.H_ref = sorted[sorted.size() / 2];
  for (double v : vals) out.max_dev = std::max(out.max_dev, std::abs(v - out.H_ref));
  return out;
}

inline double cmc_residual_threshold(const GraphField& field, double H_ref) {
  const double h = std::max(field.grid.hx, field.grid.hy);
  return std::max(1e-8, 10.0 * (1.0 + std::abs(H_ref)) * h * h);
}

// Verifies L_W z >= (H^2/m - C H / W + (C^2 - (m-1) kappa^2) |grad u|_g^2) z
// for z = W e^{-C u} on a CMC field, with the Ricci lower bound substituted.
inline VerificationReport z_inequality_check(const GraphField& field, double C, double kappa,
                                             double tol = 1e-6) {
  if (!(C >= 0.0) || !(kappa >= 0.0)) throw data_error("z_inequality_check: need C, kappa >= 0");
  const CmcCheck cmc = cmc_deviation(field);
  const double thresh = cmc_residual_threshold(field, cmc.H_ref);
  if (cmc.max_dev > thresh)
    throw precondition_error("z_inequality_check: field is not CMC (max |H - H_ref| = " +
                             std::to_string(cmc.max_dev) + " > " + std::to_string(thresh) + ")");

  const Grid2& g = field.grid;
  const GraphTensors& T = field.tensors;
  const int m = field.domain.base.dim;
  std::vector<double> z(g.size());
  for (int c = 0; c < g.size(); ++c) z[c] = T.W[c] * std::exp(-C * field.u[c]);
  const std::vector<double> Lz = lw_operator(field, z);

  VerificationReport rep;
  rep.name = "z_inequality";
  rep.tolerance = tol;
  double worst = kInf;
  double eq_res = 0.0;  // defect of the exact identity L_W z = (|II|^2 + Ric(n,n) - CH/W + C^2 |grad u|^2) z
  const double Hc = cmc.H_ref;
  for (int i = 1; i < g.nx - 1; ++i)
    for (int j = 1; j < g.ny - 1; ++j) {
      const int c = g.idx(i, j);
      const double rhs = (Hc * Hc / m - C * Hc / T.W[c] +
                          (C * C - (m - 1) * kappa * kappa) * T.grad2[c]) *
                         z[c];
      worst = std::min(worst, Lz[c] - rhs);
      const Sym2 gi{T.gi00[c], T.gi01[c], T.gi11[c]};
      const Sym2 II{T.II00[c], T.II01[c], T.II11[c]};
      const double coef = contract2(gi, II, II) + T.ric_du_du[c] / (T.W[c] * T.W[c]) -
                          C * Hc / T.W[c] + C * C * T.grad2[c];
      eq_res = std::max(eq_res, std::abs(Lz[c] - coef * z[c]));
      ++rep.nodes_evaluated;
    }
  rep.value = worst;
  rep.pass = worst >= -tol;
  rep.details = {{"H_ref", Hc}, {"cmc_deviation", cmc.max_dev}, {"C", C}, {"kappa", kappa},
                 {"equality_residual", eq_res}};
  return rep;
}

}  // namespace capgraph
